"""Finite abelian groups Z_N1 x ... x Z_Nr, their characters and Fourier transform.

Elements are plain tuples of reduced coordinates. Every table in the package
indexes the group in mixed-radix order (first coordinate most significant), so
``elements()[i]`` and ``index(g)`` are inverse to each other.

Characters are indexed by group elements themselves: chi_a(x) = prod_j
exp(2 pi i a_j x_j / N_j). The transform is the naive O(|G|^2) sum.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

import numpy as np

GroupElement = tuple[int, ...]

TAU_NUM = 1e-9
TAU_SYM = 1e-12

_FACTOR = re.compile(r"[zZ](\d+)")


@dataclass(frozen=True)
class AbelianGroup:
    moduli: tuple[int, ...]

    def __post_init__(self):
        moduli = tuple(int(n) for n in self.moduli)
        if not moduli:
            raise ValueError("group needs at least one cyclic factor")
        for n in moduli:
            if n < 2:
                raise ValueError(f"cyclic factor Z{n} rejected: moduli must be >= 2")
        object.__setattr__(self, "moduli", moduli)

    @classmethod
    def parse(cls, spec: str) -> AbelianGroup:
        return group_parse(spec)

    @property
    def order(self) -> int:
        return math.prod(self.moduli)

    @property
    def rank(self) -> int:
        return len(self.moduli)

    def __str__(self) -> str:
        return "x".join(f"Z{n}" for n in self.moduli)

    # -- elements -----------------------------------------------------------

    def element(self, coords: int | Iterable[int]) -> GroupElement:
        """Canonical representative of ``coords`` (an int is allowed for rank 1)."""
        if isinstance(coords, (int, np.integer)):
            coords = (int(coords),)
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.rank:
            raise ValueError(f"element {coords} does not belong to {self}")
        return tuple(c % n for c, n in zip(coords, self.moduli))

    def _check(self, g: GroupElement) -> None:
        if len(g) != self.rank or any(not 0 <= c < n for c, n in zip(g, self.moduli)):
            raise ValueError(f"element {g} does not belong to {self}")

    def zero(self) -> GroupElement:
        return (0,) * self.rank

    def add(self, g: GroupElement, h: GroupElement) -> GroupElement:
        self._check(g)
        self._check(h)
        return tuple((a + b) % n for a, b, n in zip(g, h, self.moduli))

    def negate(self, g: GroupElement) -> GroupElement:
        self._check(g)
        return tuple(-a % n for a, n in zip(g, self.moduli))

    def sub(self, g: GroupElement, h: GroupElement) -> GroupElement:
        return self.add(g, self.negate(h))

    def elements(self) -> list[GroupElement]:
        return [tuple(int(c) for c in row) for row in self.decode(np.arange(self.order))]

    def index(self, g: GroupElement) -> int:
        self._check(g)
        idx = 0
        for c, n in zip(g, self.moduli):
            idx = idx * n + c
        return idx

    def element_at(self, idx: int) -> GroupElement:
        if not 0 <= idx < self.order:
            raise IndexError(idx)
        return tuple(int(c) for c in self.decode(np.asarray(idx)))

    # -- vectorised arithmetic on element indices ---------------------------

    def decode(self, idx: np.ndarray) -> np.ndarray:
        """Index array of shape S -> coordinate array of shape S + (rank,)."""
        idx = np.asarray(idx, dtype=np.int64)
        out = np.empty(idx.shape + (self.rank,), dtype=np.int64)
        rest = idx.copy()
        for j in range(self.rank - 1, -1, -1):
            out[..., j] = rest % self.moduli[j]
            rest //= self.moduli[j]
        return out

    def encode(self, coords: np.ndarray) -> np.ndarray:
        coords = np.asarray(coords, dtype=np.int64)
        idx = np.zeros(coords.shape[:-1], dtype=np.int64)
        for j, n in enumerate(self.moduli):
            idx = idx * n + coords[..., j] % n
        return idx

    def combine(self, coeffs: np.ndarray, idx: np.ndarray) -> np.ndarray:
        """Integer linear combinations of elements.

        ``coeffs`` has shape (r, c) and ``idx`` shape (..., c); returns indices of
        shape (..., r) whose i-th entry is sum_j coeffs[i, j] * element(idx[..., j]).
        """
        coeffs = np.asarray(coeffs, dtype=np.int64)
        coords = self.decode(idx)
        mixed = np.einsum("rc,...cd->...rd", coeffs, coords)
        return self.encode(mixed % np.asarray(self.moduli, dtype=np.int64))

    @property
    def negation_table(self) -> np.ndarray:
        return _negation_table(self.moduli)


def group_parse(spec: str) -> AbelianGroup:
    """Parse ``Z4`` or ``Z2xZ2xZ3`` (case-insensitive Z, no spaces)."""
    if not isinstance(spec, str) or not spec:
        raise ValueError(f"malformed group spec {spec!r}")
    moduli = []
    for token in spec.split("x"):
        m = _FACTOR.fullmatch(token)
        if m is None:
            raise ValueError(f"malformed group spec {spec!r}: bad factor {token!r}")
        moduli.append(int(m.group(1)))
    return AbelianGroup(tuple(moduli))


@lru_cache(maxsize=None)
def _negation_table(moduli: tuple[int, ...]) -> np.ndarray:
    g = AbelianGroup(moduli)
    table = g.encode(-g.decode(np.arange(g.order)))
    table.setflags(write=False)
    return table


@lru_cache(maxsize=None)
def _phase_data(moduli: tuple[int, ...]) -> tuple[np.ndarray, np.ndarray]:
    """Integer phase table P[a, x] and roots of unity, so chi_a(x) = roots[P[a, x]].

    Phases are exact integers modulo lcm(moduli); only the final root lookup is
    floating point, which keeps chi_a(-x) the exact conjugate of chi_a(x).
    """
    g = AbelianGroup(moduli)
    period = math.lcm(*moduli)
    weights = np.array([period // n for n in moduli], dtype=np.int64)
    coords = g.decode(np.arange(g.order))
    phases = (np.einsum("ad,xd,d->ax", coords, coords, weights)) % period
    half = np.arange(period // 2 + 1)
    roots = np.empty(period, dtype=complex)
    roots[half] = np.exp(2j * np.pi * half / period)
    roots[period - half[1:]] = np.conj(roots[half[1:]])
    if period % 2 == 0:
        roots[period // 2] = -1.0
    if period % 4 == 0:
        roots[period // 4], roots[3 * period // 4] = 1j, -1j
    phases.setflags(write=False)
    roots.setflags(write=False)
    return phases, roots


def character_matrix(group: AbelianGroup) -> np.ndarray:
    """Matrix X with X[a, x] = chi_a(x), both axes in canonical order."""
    phases, roots = _phase_data(group.moduli)
    return roots[phases]


def character_value(group: AbelianGroup, a: GroupElement, x: GroupElement) -> complex:
    group._check(a)
    group._check(x)
    phases, roots = _phase_data(group.moduli)
    return complex(roots[phases[group.index(a), group.index(x)]])


@dataclass(frozen=True, eq=False)
class GroupFunction:
    """Real-valued function on G, values in canonical element order."""

    group: AbelianGroup
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.shape != (self.group.order,):
            raise ValueError(f"expected {self.group.order} values, got shape {values.shape}")
        if not np.all(np.isfinite(values)):
            raise ValueError("function values must be finite")
        object.__setattr__(self, "values", values)

    def __call__(self, x: GroupElement) -> float:
        return float(self.values[self.group.index(x)])

    @classmethod
    def indicator(cls, group: AbelianGroup, members: Iterable[GroupElement]) -> GroupFunction:
        values = np.zeros(group.order)
        for g in members:
            values[group.index(g)] = 1.0
        return cls(group, values)


@dataclass(frozen=True, eq=False)
class FourierTable:
    group: AbelianGroup
    coefficients: np.ndarray
    from_real: bool = field(default=True)

    def __post_init__(self):
        coeffs = np.asarray(self.coefficients, dtype=complex)
        if coeffs.shape != (self.group.order,):
            raise ValueError(f"expected {self.group.order} coefficients, got shape {coeffs.shape}")
        if self.from_real:
            mirrored = np.conj(coeffs[self.group.negation_table])
            err = float(np.max(np.abs(coeffs - mirrored)))
            if err > TAU_SYM:
                raise ValueError(f"table of a real function is not conjugate-symmetric (error {err:.3g})")
        object.__setattr__(self, "coefficients", coeffs)

    def __getitem__(self, a: GroupElement) -> complex:
        return complex(self.coefficients[self.group.index(a)])

    @property
    def mean(self) -> float:
        return float(self.coefficients[0].real)


def fourier_transform(f: GroupFunction) -> FourierTable:
    """coefficient(a) = E_x f(x) conj(chi_a(x)); coefficient(0) is the mean of f."""
    group = f.group
    conj_chars = np.conj(character_matrix(group))
    # np.sum along a fixed axis uses a fixed (pairwise) order: bit-reproducible
    coeffs = np.sum(conj_chars * f.values[None, :], axis=1) / group.order
    return FourierTable(group, coeffs)


def inverse_transform(table: FourierTable) -> np.ndarray:
    """f(x) = sum_a coefficient(a) chi_a(x), complex; callers check realness."""
    chars = character_matrix(table.group)
    return np.sum(chars * table.coefficients[:, None], axis=0)


def parseval_gap(f: GroupFunction, table: FourierTable | None = None) -> float:
    """|E f^2 - sum |f^(a)|^2|."""
    table = table if table is not None else fourier_transform(f)
    return abs(float(np.mean(f.values ** 2)) - float(np.sum(np.abs(table.coefficients) ** 2)))


def power_tuples(group: AbelianGroup, start: int, stop: int, width: int) -> np.ndarray:
    """Rows start..stop-1 of G^width as element-index tuples, mixed-radix order."""
    t = np.arange(start, stop, dtype=np.int64)
    out = np.empty((len(t), width), dtype=np.int64)
    for j in range(width - 1, -1, -1):
        out[:, j] = t % group.order
        t //= group.order
    return out


def all_groups_up_to(order: int) -> list[AbelianGroup]:
    """One representative Z_n1 x ... x Z_nr (n1 | n2 | ...) per abelian group of order <= ``order``."""
    out = []
    for n in range(2, order + 1):
        for moduli in _invariant_factor_lists(n):
            out.append(AbelianGroup(moduli))
    return out


def _invariant_factor_lists(n: int, smallest: int = 2) -> list[tuple[int, ...]]:
    # chains d1 | d2 | ... | dr with product n, each >= 2
    if n == 1:
        return [()]
    out = []
    for d in range(smallest, n + 1):
        if n % d:
            continue
        rest = n // d
        if rest == 1:
            out.append((d,))
            continue
        for tail in _invariant_factor_lists(rest, d):
            if tail and tail[0] % d == 0:
                out.append((d,) + tail)
    return out

