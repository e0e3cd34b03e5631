"""Sidorenko gaps in abelian Cayley hosts, with the term-wise certificate for even subdivisions.

For an even subdivision H of H_0 with lengths 2 m_i, let H_1 use lengths m_i.
H is the standard subdivision of H_1, and doubling the columns of H_1's
oriented cycle matrix gives a circuit matrix of H. Every term of the
character sum then pairs f^(c) with f^(-c), so each term is a product of
|f^|^2 factors. ``SubdivisionEvaluator`` evaluates those terms explicitly and
records the smallest real part and the largest imaginary residue.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .cayley import SymmetricSet, all_symmetric_sets, edge_density, spectrum, symmetric_orbits
from .circuit import (
    DEFAULT_KERNEL_CAP,
    CircuitMatrix,
    KernelImageVerdict,
    double_columns,
    oriented_cycle_matrix,
    signed_incidence,
    verify_kernel_image,
)
from .errors import BudgetExceededError, NotBipartiteError
from .graphs import (
    OddCycle,
    SimpleGraph,
    SubdivisionPlan,
    connected_components,
    even_subdivision,
    is_bipartite,
    standard_subdivision,
    subdivide,
)
from .group import TAU_NUM, TAU_SYM, AbelianGroup
from .homdensity import DEFAULT_BUDGET, character_columns, density, fourier_cost, fourier_terms

DEFAULT_SEARCH_CAP = 10_000


@dataclass(frozen=True)
class SidorenkoReport:
    t_h: float
    t_edge: float
    exponent: int
    bound: float
    gap: float
    verdict: str
    equality: bool
    method: str
    cost: int
    term_min: float | None = None
    term_imag_max: float | None = None
    term_count: int | None = None

    def to_json(self) -> dict:
        return {
            "tH": self.t_h,
            "tEdge": self.t_edge,
            "exponent": self.exponent,
            "bound": self.bound,
            "gap": self.gap,
            "verdict": self.verdict,
            "equality": self.equality,
            "termMin": self.term_min,
            "termImagMax": self.term_imag_max,
            "termCount": self.term_count,
            "method": self.method,
            "cost": self.cost,
        }


def _report(t_h: float, exact_t: Fraction | None, s: SymmetricSet, exponent: int, method: str, cost: int,
            excess: float | None = None, **terms) -> SidorenkoReport:
    t_edge = edge_density(s)
    exact_bound = Fraction(len(s), s.group.order) ** exponent
    if exact_t is not None:
        gap = float(exact_t - exact_bound)
    elif excess is not None:
        gap = excess
    else:
        gap = t_h - float(exact_bound)
    verdict = "pass" if gap >= -TAU_NUM else "fail"
    return SidorenkoReport(t_h, t_edge, exponent, float(exact_bound), gap, verdict, abs(gap) <= TAU_NUM, method, cost, **terms)


def check_sidorenko(h: SimpleGraph, s: SymmetricSet, cap: int = DEFAULT_BUDGET) -> SidorenkoReport:
    """t(h, Cay(G, S)) against t(K_2, Cay(G, S))^e(h), density by the ``auto`` method."""
    found = is_bipartite(h)
    if isinstance(found, OddCycle):
        raise NotBipartiteError("Sidorenko's inequality concerns bipartite patterns", found.cycle)
    value = density(h, s, "auto", cap)
    return _report(value.value, value.exact, s, h.num_edges, value.method, value.cost)


class SubdivisionEvaluator:
    """Character-sum evaluator for one subdivision plan over one group.

    The xi -> column-index table depends only on (plan, group), so it is built
    once and reused for every connection set.
    """

    def __init__(self, plan: SubdivisionPlan, group: AbelianGroup, cap: int = DEFAULT_BUDGET, fault: bool = False):
        self.plan = plan
        self.group = group
        self.h1 = subdivide(plan.base, plan.lengths)
        self.h = even_subdivision(plan)
        self.exponent = 2 * sum(plan.lengths)
        self.matrices: list[CircuitMatrix] = []
        for comp in connected_components(self.h1):
            if len(comp) == 1:
                continue
            sub, _ = self.h1.induced(comp)
            self.matrices.append(double_columns(oriented_cycle_matrix(sub)))
        self.fault = fault
        if fault:
            # test hook: flip one sign in the first matrix that has a row
            i = next((i for i, l in enumerate(self.matrices) if l.rows), None)
            if i is not None:
                bad = self.matrices[i].entries.copy()
                bad[0, np.flatnonzero(bad[0])[0]] *= -1
                self.matrices[i] = self.matrices[i].with_entries(bad)
        self.cost = sum(fourier_cost(l, group) for l in self.matrices)
        if self.cost > cap:
            raise BudgetExceededError("subdivision character sum", self.cost, cap)
        self.columns = [character_columns(l, group) for l in self.matrices]

    @property
    def cyclomatic_number(self) -> int:
        return sum(l.rows for l in self.matrices)

    def verify_structure(self, cap: int = DEFAULT_KERNEL_CAP) -> list[KernelImageVerdict] | None:
        """Kernel/image check of each doubled matrix against the standard subdivision of its H_1 component.

        None when any component is over ``cap``.
        """
        out = []
        comps = [c for c in connected_components(self.h1) if len(c) > 1]
        for comp, l in zip(comps, self.matrices):
            sub, _ = self.h1.induced(comp)
            h = standard_subdivision(sub)
            bip = is_bipartite(h)
            try:
                out.append(verify_kernel_image(l, signed_incidence(h, bip), self.group, cap))
            except BudgetExceededError:
                return None
        return out

    def terms(self, s: SymmetricSet) -> list[np.ndarray]:
        coefficients = s.fourier().coefficients
        return [fourier_terms(cols, coefficients) for cols in self.columns]

    def evaluate(self, s: SymmetricSet) -> SidorenkoReport:
        if s.group != self.group:
            raise ValueError(f"connection set lives in {s.group}, evaluator in {self.group}")
        t_h = 1.0
        # excess = t_h - prod of principal terms, accumulated from the xi != 0 terms only
        principal, excess = 1.0, 0.0
        term_min = math.inf
        imag_max = 0.0
        count = 0
        for terms in self.terms(s):
            total = np.sum(terms)
            t_h *= float(total.real)
            head = float(terms[0].real)  # xi = 0 comes first: f^(0)^(2k)
            rest = float(np.sum(terms[1:]).real) if len(terms) > 1 else 0.0
            excess = excess * (head + rest) + principal * rest
            principal *= head
            imag_max = max(imag_max, abs(float(total.imag)), float(np.max(np.abs(terms.imag))))
            term_min = min(term_min, float(np.min(terms.real)))
            count += len(terms)
        if not self.matrices:
            term_min = None  # edgeless pattern: no character sum at all
        return _report(t_h, None, s, self.exponent, "fourier-doubled", self.cost, excess=excess,
                       term_min=term_min, term_imag_max=imag_max, term_count=count)


def check_even_subdivision(plan: SubdivisionPlan, s: SymmetricSet, cap: int = DEFAULT_BUDGET) -> SidorenkoReport:
    """Sidorenko report for the even subdivision, with per-term accounting."""
    return SubdivisionEvaluator(plan, s.group, cap).evaluate(s)


# -- spectral side ----------------------------------------------------------------


def max_nonprincipal_ratio(s: SymmetricSet) -> float:
    """max_{a != 0} |f^(a)| / f^(0) for f = 1_S; 0 for the empty set."""
    if not len(s):
        return 0.0
    coeffs = s.fourier().coefficients
    if len(coeffs) == 1:
        return 0.0
    return float(np.max(np.abs(coeffs[1:])) / coeffs[0].real)


@dataclass(frozen=True)
class QuasirandomnessReport:
    epsilon: float
    max_nonprincipal_ratio: float
    eigenvalue_bound: float
    max_nonprincipal_eig: float
    offenders: tuple[tuple[int, ...], ...]

    @property
    def quasirandom(self) -> bool:
        return not self.offenders

    def to_json(self) -> dict:
        return {
            "epsilon": self.epsilon,
            "maxNonprincipalRatio": self.max_nonprincipal_ratio,
            "eigenvalueBound": self.eigenvalue_bound,
            "maxNonprincipalEig": self.max_nonprincipal_eig,
            "offenders": [list(a) for a in self.offenders],
            "quasirandom": self.quasirandom,
        }


def _check_epsilon(epsilon: float) -> None:
    if not 0 < epsilon <= 1:
        raise ValueError(f"epsilon must lie in (0, 1], got {epsilon}")


def quasirandomness_report(s: SymmetricSet, epsilon: float = 0.1) -> QuasirandomnessReport:
    """Characters a != 0 whose eigenvalue exceeds epsilon * |S| in absolute value.

    The bound is epsilon * |S| (that is, |f^(a)| <= epsilon f^(0) rescaled by |G|).
    """
    _check_epsilon(epsilon)
    lam = spectrum(s)
    bound = epsilon * len(s)
    offenders = tuple(s.group.element_at(a) for a in range(1, len(lam)) if abs(lam[a]) > bound + TAU_SYM)
    max_eig = float(np.max(np.abs(lam[1:]))) if len(lam) > 1 else 0.0
    return QuasirandomnessReport(epsilon, max_nonprincipal_ratio(s), bound, max_eig, offenders)


@dataclass(frozen=True)
class StrictnessVerdict:
    epsilon: float
    max_ratio: float
    hypothesis: bool  # some non-principal |f^| >= epsilon f^(0)
    t_h: float
    bound: float
    strict_bound: float  # bound * (1 + epsilon^e(H))
    strict_holds: bool | None  # checked when the hypothesis holds
    contrapositive_applies: bool  # t_h <= strict_bound
    contrapositive_holds: bool | None  # all |f^| <= epsilon f^(0), checked when it applies

    @property
    def passed(self) -> bool:
        return self.strict_holds is not False and self.contrapositive_holds is not False


def strictness_check(plan: SubdivisionPlan, s: SymmetricSet, epsilon: float, cap: int = DEFAULT_BUDGET,
                     evaluator: SubdivisionEvaluator | None = None) -> StrictnessVerdict:
    """Strict inequality t(H) >= t(K_2)^e (1 + epsilon^e) under a large non-principal coefficient, and its converse.

    Needs a base with at least one cycle: for forests t(H) equals the bound.
    """
    _check_epsilon(epsilon)
    if not len(s):
        raise ValueError("strictness needs a non-empty connection set")
    if plan.base.cyclomatic_number == 0:
        raise ValueError("strictness needs a base graph with a cycle; forests give equality")
    evaluator = evaluator if evaluator is not None else SubdivisionEvaluator(plan, s.group, cap)
    return strictness_from_report(evaluator.evaluate(s), s, epsilon)


def strictness_from_report(report: SidorenkoReport, s: SymmetricSet, epsilon: float) -> StrictnessVerdict:
    _check_epsilon(epsilon)
    ratio = max_nonprincipal_ratio(s)
    hypothesis = ratio >= epsilon - TAU_SYM
    # compare t - bound against bound * epsilon^e; the gap is accurate even when it is far below t
    margin = report.bound * epsilon**report.exponent
    strict_bound = report.bound * (1 + epsilon**report.exponent)
    strict_holds = report.gap >= margin - TAU_NUM if hypothesis else None
    applies = report.gap <= margin
    contra = ratio <= epsilon + TAU_NUM if applies else None
    return StrictnessVerdict(epsilon, ratio, hypothesis, report.t_h, report.bound, strict_bound, strict_holds, applies, contra)


# -- extremal search ---------------------------------------------------------------


@dataclass(frozen=True)
class ExtremalEntry:
    members: SymmetricSet
    density: float
    max_ratio: float
    max_nonprincipal_eig: float


def count_symmetric_sets(group: AbelianGroup, size: int) -> int:
    orbits = symmetric_orbits(group)
    singles = sum(1 for o in orbits if len(o) == 1)
    pairs = len(orbits) - singles
    return sum(math.comb(pairs, j) * math.comb(singles, size - 2 * j) for j in range(size // 2 + 1) if size - 2 * j <= singles)


def _sample_sets(group: AbelianGroup, size: int, count: int, seed: int) -> list[SymmetricSet]:
    rng = random.Random(seed)
    orbits = symmetric_orbits(group)
    available = count_symmetric_sets(group, size)
    found: dict[tuple[int, ...], SymmetricSet] = {}
    attempts = 0
    while len(found) < min(count, available) and attempts < 100 * max(count, 1):
        attempts += 1
        order = orbits[:]
        rng.shuffle(order)
        chosen: list = []
        total = 0
        for orbit in order:
            if total + len(orbit) <= size:
                chosen.extend(orbit)
                total += len(orbit)
            if total == size:
                break
        if total != size:
            continue
        s = SymmetricSet(group, frozenset(chosen))
        found.setdefault(tuple(s.indices()), s)
    return [found[key] for key in sorted(found)]


def search_extremal(group: AbelianGroup, plan: SubdivisionPlan, set_size: int, mode: str = "exhaustive",
                    count: int = 100, seed: int = 0, cap: int = DEFAULT_SEARCH_CAP, threads: int = 1) -> list[ExtremalEntry]:
    """Symmetric sets of one size ranked by ascending density of the even subdivision.

    Ties keep canonical subset order. ``mode`` is ``exhaustive`` or ``sample``.
    """
    if set_size < 0 or set_size >= group.order:
        raise ValueError(f"set size must lie in 0..{group.order - 1}")
    if mode == "exhaustive":
        total = count_symmetric_sets(group, set_size)
        if total > cap:
            raise BudgetExceededError("exhaustive symmetric-set search", total, cap)
        candidates = all_symmetric_sets(group, size=set_size)
    elif mode == "sample":
        candidates = _sample_sets(group, set_size, count, seed)
    else:
        raise ValueError(f"unknown search mode {mode!r}")
    evaluator = SubdivisionEvaluator(plan, group)

    def one(s: SymmetricSet) -> ExtremalEntry:
        report = evaluator.evaluate(s)
        qr = quasirandomness_report(s, 1.0)
        return ExtremalEntry(s, report.t_h, qr.max_nonprincipal_ratio, qr.max_nonprincipal_eig)

    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            entries = list(pool.map(one, candidates))
    else:
        entries = [one(s) for s in candidates]
    order = sorted(range(len(entries)), key=lambda i: (entries[i].density, i))
    return [entries[i] for i in order]
