"""Cayley graphs Cay(G, S) over abelian groups and their character spectrum.

The group is written additively: x ~ y iff y - x lies in S.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

import numpy as np

from .graphs import SimpleGraph
from .group import (
    TAU_SYM,
    AbelianGroup,
    FourierTable,
    GroupElement,
    GroupFunction,
    character_matrix,
    fourier_transform,
)


@dataclass(frozen=True)
class SymmetricSet:
    group: AbelianGroup
    members: frozenset[GroupElement]

    def __post_init__(self):
        members = frozenset(self.group.element(g) for g in self.members)
        zero = self.group.zero()
        if zero in members:
            raise ValueError("connection set must not contain the identity")
        for g in sorted(members):
            if self.group.negate(g) not in members:
                raise ValueError(f"connection set is not symmetric: {g} present but {self.group.negate(g)} missing")
        object.__setattr__(self, "members", members)

    def __len__(self) -> int:
        return len(self.members)

    def sorted_members(self) -> list[GroupElement]:
        return sorted(self.members, key=self.group.index)

    def indices(self) -> list[int]:
        return sorted(self.group.index(g) for g in self.members)

    def indicator(self) -> GroupFunction:
        return GroupFunction.indicator(self.group, self.members)

    def indicator_array(self) -> np.ndarray:
        out = np.zeros(self.group.order, dtype=bool)
        out[self.indices()] = True
        return out

    def fourier(self) -> FourierTable:
        return fourier_transform(self.indicator())

    def label(self) -> str:
        """Compact text form, e.g. ``1;3`` or ``(1,0);(0,1)``."""
        if self.group.rank == 1:
            return ";".join(str(g[0]) for g in self.sorted_members())
        return ";".join("(" + ",".join(map(str, g)) + ")" for g in self.sorted_members())


def symmetric_set(group: AbelianGroup, members: Iterable, closure: bool = False) -> SymmetricSet:
    """Validated connection set; ``closure=True`` adds missing negatives first."""
    elems = {group.element(g) for g in members}
    if closure:
        elems |= {group.negate(g) for g in elems}
    return SymmetricSet(group, frozenset(elems))


def parse_set(group: AbelianGroup, text: str, closure: bool = False) -> SymmetricSet:
    """``1,3`` for cyclic groups, ``(1,0);(0,1)`` in general; empty text is the empty set."""
    text = text.strip()
    if not text:
        return symmetric_set(group, [], closure)
    if "(" in text:
        items = []
        for tok in text.split(";"):
            tok = tok.strip()
            if not (tok.startswith("(") and tok.endswith(")")):
                raise ValueError(f"malformed element {tok!r}")
            items.append(tuple(int(c) for c in tok[1:-1].split(",")))
    else:
        items = [int(tok) for tok in text.replace(";", ",").split(",")]
    return symmetric_set(group, items, closure)


def build_cayley(s: SymmetricSet) -> SimpleGraph:
    """Cayley graph on the canonical element order; |S|-regular."""
    g = s.group
    edges = set()
    for x in g.elements():
        i = g.index(x)
        for member in s.members:
            j = g.index(g.add(x, member))
            edges.add((i, j) if i < j else (j, i))
    return SimpleGraph(g.order, tuple(sorted(edges)))


def edge_density(s: SymmetricSet) -> float:
    """t(K_2, Cay(G, S)) = |S| / |G|."""
    return len(s) / s.group.order


def spectrum(s: SymmetricSet) -> np.ndarray:
    """Eigenvalues lambda_a = sum_{g in S} chi_a(g), in character-index order."""
    chars = character_matrix(s.group)
    lam = np.sum(chars[:, s.indices()], axis=1) if len(s) else np.zeros(s.group.order, dtype=complex)
    imag = float(np.max(np.abs(lam.imag))) if len(lam) else 0.0
    if imag > TAU_SYM:
        raise ArithmeticError(f"non-real Cayley eigenvalue (imaginary part {imag:.3g})")
    return lam.real.copy()


def symmetric_orbits(group: AbelianGroup) -> list[tuple[GroupElement, ...]]:
    """Classes {g, -g} of non-zero elements, each listed in canonical order."""
    seen = set()
    orbits = []
    for g in group.elements()[1:]:
        if g in seen:
            continue
        orbit = tuple(sorted({g, group.negate(g)}, key=group.index))
        seen.update(orbit)
        orbits.append(orbit)
    return orbits


def all_symmetric_sets(group: AbelianGroup, max_size: int | None = None, size: int | None = None) -> list[SymmetricSet]:
    """Every symmetric subset, ordered by size then canonically by sorted element indices."""
    orbits = symmetric_orbits(group)
    out = []
    for r in range(len(orbits) + 1):
        for chosen in combinations(orbits, r):
            members = [g for orbit in chosen for g in orbit]
            if size is not None and len(members) != size:
                continue
            if max_size is not None and len(members) > max_size:
                continue
            out.append(SymmetricSet(group, frozenset(members)))
    out.sort(key=lambda s: (len(s), s.indices()))
    return out
