"""Homomorphism densities t(H, Cay(G, S)) by three independent routes.

* ``bruteforce``: backtracking count of vertex maps, exact integers.
* ``kernel``: average of prod_e 1_S((Mx)_e) over x in G^n, M the signed incidence matrix.
* ``fourier``: sum over xi in G^m of prod_j f^(sum_i L_ij xi_i), L a circuit matrix.

``density`` splits a pattern into components and multiplies their values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

import numpy as np

from .cayley import SymmetricSet, build_cayley
from .circuit import CircuitMatrix, SignedIncidenceMatrix, circuit_matrix, signed_incidence
from .errors import BudgetExceededError, NotBipartiteError, RankDeficientError
from .graphs import OddCycle, SimpleGraph, connected_components, is_bipartite
from .group import AbelianGroup, FourierTable, power_tuples

DEFAULT_BUDGET = 10**8
CHUNK = 1 << 16

Method = Literal["bruteforce", "kernel", "fourier", "auto"]


@dataclass(frozen=True)
class DensityValue:
    value: float
    method: str
    residual_imag: float = 0.0
    cost: int = 0
    exact: Fraction | None = None


# -- brute force ---------------------------------------------------------------


def _search_order(h: SimpleGraph) -> list[int]:
    adj = h.adjacency()
    order = []
    for comp in connected_components(h):
        seen = {comp[0]}
        frontier = [comp[0]]
        for x in frontier:
            order.append(x)
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
    return order


def hom_count_bruteforce(h: SimpleGraph, host: SimpleGraph, cap: int = DEFAULT_BUDGET) -> int:
    """Number of homomorphisms h -> host, by backtracking with adjacency pruning.

    Refuses when v(host)^v(h) exceeds ``cap``.
    """
    cost = host.n ** h.n
    if cost > cap:
        raise BudgetExceededError("brute-force homomorphism count", cost, cap)
    if h.n == 0:
        return 1
    order = _search_order(h)
    pos = {v: i for i, v in enumerate(order)}
    h_adj = h.adjacency()
    earlier = [[pos[y] for y in h_adj[v] if pos[y] < i] for i, v in enumerate(order)]
    host_bits = [0] * host.n
    for u, v in host.edges:
        host_bits[u] |= 1 << v
        host_bits[v] |= 1 << u
    full = (1 << host.n) - 1
    last = len(order)
    image = [0] * last

    def count(i: int) -> int:
        if i == last:
            return 1
        cand = full
        for p in earlier[i]:
            cand &= host_bits[image[p]]
        if i == last - 1:
            return cand.bit_count()
        total = 0
        while cand:
            low = cand & -cand
            image[i] = low.bit_length() - 1
            total += count(i + 1)
            cand ^= low
        return total

    return count(0)


def density_bruteforce(h: SimpleGraph, host: SimpleGraph, cap: int = DEFAULT_BUDGET) -> DensityValue:
    """t(h, host) = hom(h, host) / v(host)^v(h), exact."""
    hom = hom_count_bruteforce(h, host, cap)
    exact = Fraction(hom, host.n ** h.n)
    return DensityValue(float(exact), "bruteforce", cost=host.n ** h.n, exact=exact)


# -- kernel averaging ----------------------------------------------------------


def kernel_average(l: CircuitMatrix, m: SignedIncidenceMatrix, s: SymmetricSet, cap: int = DEFAULT_BUDGET) -> DensityValue:
    """E_{x in G^n} prod_e 1_S((Mx)_e), the uniform average over Im(M) = ker(L)."""
    if l.cols != m.rows:
        raise ValueError(f"L has {l.cols} columns but M has {m.rows} rows")
    if l.rows and np.any(l.entries @ m.entries):
        raise ValueError("L M != 0: the matrices do not come from the same graph")
    group = s.group
    q, n, k = group.order, m.cols, m.rows
    cost = q**n * max(k, 1)
    if cost > cap:
        raise BudgetExceededError("kernel average", cost, cap)
    member = s.indicator_array()
    hits = 0
    for start in range(0, q**n, CHUNK):
        x = power_tuples(group, start, min(start + CHUNK, q**n), n)
        y = group.combine(m.entries, x)
        hits += int(np.count_nonzero(np.all(member[y], axis=1)))
    exact = Fraction(hits, q**n)
    return DensityValue(float(exact), "kernel", cost=cost, exact=exact)


# -- character sums ------------------------------------------------------------


def fourier_cost(l: CircuitMatrix, group: AbelianGroup) -> int:
    """Coefficient lookups performed by ``fourier_sum``: |G|^m * k."""
    return group.order**l.rows * l.cols


def character_columns(l: CircuitMatrix, group: AbelianGroup, start: int = 0, stop: int | None = None) -> np.ndarray:
    """Row t holds, for the t-th xi in G^m (mixed-radix), the k indices sum_i L_ij xi_i."""
    total = group.order**l.rows
    stop = total if stop is None else stop
    xi = power_tuples(group, start, stop, l.rows)
    if l.rows == 0:
        return np.zeros((stop - start, l.cols), dtype=np.int64)
    return group.combine(l.entries.T, xi)


def fourier_terms(columns: np.ndarray, coefficients: np.ndarray) -> np.ndarray:
    """prod_j f^(columns[:, j]), multiplied left to right in column order."""
    terms = np.ones(columns.shape[0], dtype=complex)
    for j in range(columns.shape[1]):
        terms = terms * coefficients[columns[:, j]]
    return terms


def _check_rank(l: CircuitMatrix) -> None:
    if l.rows > l.cols or l.rank != l.rows:
        raise RankDeficientError(f"character sum needs rank(L) = m = {l.rows}")


def fourier_sum(l: CircuitMatrix, table: FourierTable, cap: int = DEFAULT_BUDGET, columns: np.ndarray | None = None) -> DensityValue:
    """sum over xi in G^m of prod_j f^(sum_i L_ij xi_i).

    ``columns`` may carry a precomputed ``character_columns(l, group)``.
    """
    _check_rank(l)
    group = table.group
    cost = fourier_cost(l, group)
    if cost > cap:
        raise BudgetExceededError("character sum", cost, cap)
    total = group.order**l.rows
    if columns is not None:
        acc = np.sum(fourier_terms(columns, table.coefficients))
    else:
        acc = 0j
        for start in range(0, total, CHUNK):
            cols = character_columns(l, group, start, min(start + CHUNK, total))
            acc += np.sum(fourier_terms(cols, table.coefficients))
    return DensityValue(float(acc.real), "fourier", residual_imag=abs(float(acc.imag)), cost=cost)


# -- components and method selection ------------------------------------------


def _bipartite_parts(h: SimpleGraph, method: str):
    found = is_bipartite(h)
    if isinstance(found, OddCycle):
        raise NotBipartiteError(f"method {method!r} needs a bipartite pattern", found.cycle)
    return found


def _component_density(h: SimpleGraph, s: SymmetricSet, method: str, cap: int, table: FourierTable | None, host: SimpleGraph | None) -> DensityValue:
    if method == "bruteforce":
        return density_bruteforce(h, host if host is not None else build_cayley(s), cap)
    bip = _bipartite_parts(h, method)
    l = circuit_matrix(h, bip)
    if method == "kernel":
        return kernel_average(l, signed_incidence(h, bip), s, cap)
    if method == "fourier":
        return fourier_sum(l, table if table is not None else s.fourier(), cap)
    raise ValueError(f"unknown method {method!r}")


def choose_method(h: SimpleGraph, group: AbelianGroup) -> str:
    """``auto`` rule for a connected pattern: fourier iff bipartite and |G|^m < |G|^v(h)."""
    if isinstance(is_bipartite(h), OddCycle):
        return "bruteforce"
    m = h.num_edges - h.n + 1
    return "fourier" if group.order**m < group.order**h.n else "bruteforce"


def density(h: SimpleGraph, s: SymmetricSet, method: Method = "auto", cap: int = DEFAULT_BUDGET) -> DensityValue:
    """t(h, Cay(G, S)) as the product over connected components of h.

    Isolated vertices contribute a factor 1. Budgets apply per component.
    """
    if method not in ("bruteforce", "kernel", "fourier", "auto"):
        raise ValueError(f"unknown method {method!r}")
    if method in ("kernel", "fourier"):
        _bipartite_parts(h, method)
    table = None
    host = None
    value = 1.0
    exact: Fraction | None = Fraction(1)
    residual = 0.0
    cost = 0
    used: list[str] = []
    for comp in connected_components(h):
        if len(comp) == 1:
            continue
        sub, _ = h.induced(comp)
        chosen = choose_method(sub, s.group) if method == "auto" else method
        if chosen == "fourier" and table is None:
            table = s.fourier()
        if chosen == "bruteforce" and host is None:
            host = build_cayley(s)
        part = _component_density(sub, s, chosen, cap, table, host)
        value *= part.value
        exact = exact * part.exact if exact is not None and part.exact is not None else None
        residual = max(residual, part.residual_imag)
        cost += part.cost
        if chosen not in used:
            used.append(chosen)
    if exact is not None:
        value = float(exact)
    name = "+".join(used) if used else (method if method != "auto" else "trivial")
    return DensityValue(value, name, residual, cost, exact)


def density_all(h: SimpleGraph, s: SymmetricSet, cap: int = DEFAULT_BUDGET) -> dict[str, DensityValue | None]:
    """All three methods; a method over budget maps to None."""
    out: dict[str, DensityValue | None] = {}
    for method in ("bruteforce", "kernel", "fourier"):
        try:
            out[method] = density(h, s, method, cap)
        except BudgetExceededError:
            out[method] = None
    return out
