"""Circuit matrices, signed incidence matrices and the kernel/image check.

A circuit matrix has one row per chord of a spanning tree. Row i walks the
fundamental cycle of chord i = (u, v), u < v, starting with the chord from u to
v and returning to u through the tree. Two sign conventions are provided:

* ``circuit_matrix``: signs alternate along the walk, chord first with +1.
  Needs a bipartite graph (all cycles even).
* ``oriented_cycle_matrix``: +1 when the walk crosses edge (a, b) from a to b,
  -1 otherwise. Works for any connected graph.

Doubling the columns of the oriented matrix of H1 gives exactly the alternating
circuit matrix of the standard subdivision of H1 (with this module's labels).
"""

from __future__ import annotations

from dataclasses import dataclass, field
import math
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import BudgetExceededError, NotBipartiteError, RankDeficientError
from .graphs import Bipartition, Edge, OddCycle, SimpleGraph, connected_components, is_bipartite, spanning_tree
from .group import AbelianGroup, power_tuples

DEFAULT_KERNEL_CAP = 10**7


@dataclass(frozen=True)
class FundamentalCycle:
    chord: Edge
    vertices: tuple[int, ...]  # closed walk u, v, ..., back to (excluded) u
    edges: tuple[int, ...]  # edge indices in walk order, chord first


@dataclass(frozen=True, eq=False)
class CircuitMatrix:
    entries: np.ndarray
    edges: tuple[Edge, ...]  # column labels
    chords: tuple[Edge, ...]  # row labels
    n: int  # vertex count of the source graph

    def __post_init__(self):
        entries = np.array(self.entries, dtype=np.int64).reshape(len(self.chords), len(self.edges))
        if not np.all(np.isin(entries, (-1, 0, 1))):
            raise ValueError("circuit matrix entries must lie in {-1, 0, 1}")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @cached_property
    def rank(self) -> int:
        return rational_rank(self.entries) if self.rows else 0

    def with_entries(self, entries: np.ndarray) -> CircuitMatrix:
        return CircuitMatrix(entries, self.edges, self.chords, self.n)

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": self.entries.tolist(),
            "edges": [list(e) for e in self.edges],
            "chords": [list(e) for e in self.chords],
        }


@dataclass(frozen=True, eq=False)
class SignedIncidenceMatrix:
    entries: np.ndarray  # k x n
    edges: tuple[Edge, ...]
    side_w: frozenset[int]

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": self.entries.tolist(),
            "edges": [list(e) for e in self.edges],
            "sideW": sorted(self.side_w),
        }


@dataclass(frozen=True)
class KernelImageVerdict:
    passed: bool
    image_size: int
    kernel_size: int
    expected_kernel_size: int
    reason: str = ""
    witness: tuple[tuple[int, ...], ...] | None = field(default=None)


def rational_rank(a: np.ndarray) -> int:
    """Rank over Q by fraction-free integer Gaussian elimination."""
    rows = [[int(x) for x in row] for row in np.asarray(a)]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        p = rows[rank]
        for r in range(rank + 1, len(rows)):
            c = rows[r][col]
            if c:
                reduced = [p[col] * x - c * y for x, y in zip(rows[r], p)]
                g = math.gcd(*reduced)
                rows[r] = [x // g for x in reduced] if g > 1 else reduced
        rank += 1
    return rank


def _check_tree(g: SimpleGraph, tree: Sequence[Edge]) -> set[Edge]:
    edge_set = set(g.edges)
    tree_set = {(u, v) if u < v else (v, u) for u, v in tree}
    if not tree_set <= edge_set:
        raise ValueError("tree contains edges that are not in the graph")
    if len(tree_set) != g.n - 1:
        raise ValueError(f"a spanning tree of {g.n} vertices has {g.n - 1} edges, got {len(tree_set)}")
    if len(connected_components(SimpleGraph(g.n, tuple(tree_set)))) != 1:
        raise ValueError("tree edges do not span the graph")
    return tree_set


def fundamental_cycles(g: SimpleGraph, tree: Sequence[Edge] | None = None) -> list[FundamentalCycle]:
    """One cycle per chord, chords in edge-list order. Default tree: BFS from 0."""
    if g.n == 0:
        return []
    if tree is None:
        tree = spanning_tree(g)
    tree_set = _check_tree(g, tree)
    tree_graph = SimpleGraph(g.n, tuple(sorted(tree_set)))
    adj = tree_graph.adjacency()
    parent: dict[int, int | None] = {0: None}
    order = [0]
    for x in order:
        for y in adj[x]:
            if y not in parent:
                parent[y] = x
                order.append(y)

    def to_root(v: int) -> list[int]:
        path = [v]
        while parent[path[-1]] is not None:
            path.append(parent[path[-1]])
        return path

    index = g.edge_index()
    cycles = []
    for chord in g.edges:
        if chord in tree_set:
            continue
        u, v = chord
        pv, pu = to_root(v), to_root(u)
        on_u = set(pu)
        lca = next(x for x in pv if x in on_u)
        tree_path = pv[: pv.index(lca) + 1] + pu[: pu.index(lca)][::-1]  # v ... u
        walk = [u] + tree_path[:-1]
        closed = [u] + tree_path
        edges = tuple(index[(a, b) if a < b else (b, a)] for a, b in zip(closed, closed[1:]))
        cycles.append(FundamentalCycle(chord, tuple(walk), edges))
    return cycles


def _assemble(g: SimpleGraph, cycles: list[FundamentalCycle], signs: list[list[int]]) -> CircuitMatrix:
    entries = np.zeros((len(cycles), g.num_edges), dtype=np.int64)
    for i, (cyc, row) in enumerate(zip(cycles, signs)):
        for e, s in zip(cyc.edges, row):
            entries[i, e] = s
    m = g.num_edges - g.n + 1
    if len(cycles) != m:
        raise ValueError(f"expected {m} fundamental cycles, found {len(cycles)}")
    # each chord lies on its own cycle only: the chord columns form +-I, so rank = m
    chord_cols = [c.edges[0] for c in cycles]
    if not np.array_equal(np.abs(entries[:, chord_cols]), np.eye(m, dtype=np.int64)):
        raise RankDeficientError("chord columns do not certify full row rank")
    return CircuitMatrix(entries, g.edges, tuple(c.chord for c in cycles), g.n)


def _require_connected(g: SimpleGraph) -> None:
    if g.n == 0 or len(connected_components(g)) != 1:
        raise ValueError("graph must be connected; split it into components first")


def circuit_matrix(g: SimpleGraph, bip: Bipartition | None = None, tree: Sequence[Edge] | None = None) -> CircuitMatrix:
    """Alternating-sign circuit matrix of a connected bipartite graph."""
    _require_connected(g)
    if bip is None:
        found = is_bipartite(g)
        if isinstance(found, OddCycle):
            raise NotBipartiteError("circuit matrix needs a bipartite graph", found.cycle)
        bip = found
    bip.validate(g)
    cycles = fundamental_cycles(g, tree)
    signs = []
    for cyc in cycles:
        if len(cyc.edges) % 2:
            raise NotBipartiteError("odd fundamental cycle", cyc.vertices)
        signs.append([1 if t % 2 == 0 else -1 for t in range(len(cyc.edges))])
    return _assemble(g, cycles, signs)


def oriented_cycle_matrix(g: SimpleGraph, tree: Sequence[Edge] | None = None) -> CircuitMatrix:
    """Cycle matrix signed by walking direction relative to each edge's (min, max) orientation."""
    _require_connected(g)
    cycles = fundamental_cycles(g, tree)
    signs = []
    for cyc in cycles:
        closed = cyc.vertices + (cyc.vertices[0],)
        signs.append([1 if a < b else -1 for a, b in zip(closed, closed[1:])])
    return _assemble(g, cycles, signs)


def signed_incidence(g: SimpleGraph, bip: Bipartition) -> SignedIncidenceMatrix:
    """Row e = {i, j} (i in W, j in U) has +1 at i and -1 at j, so (Mx)_e = x_i - x_j."""
    bip.validate(g)
    entries = np.zeros((g.num_edges, g.n), dtype=np.int64)
    for r, (a, b) in enumerate(g.edges):
        i, j = (a, b) if a in bip.side_w else (b, a)
        entries[r, i] = 1
        entries[r, j] = -1
    entries.setflags(write=False)
    return SignedIncidenceMatrix(entries, g.edges, bip.side_w)


def double_columns(l1: CircuitMatrix) -> CircuitMatrix:
    """Replace column v by the pair (v, -v).

    Labels follow ``standard_subdivision``: edge i = (a, b) of the source gets
    midpoint w = n + i and becomes columns (a, w), (b, w).
    """
    entries = np.empty((l1.rows, 2 * l1.cols), dtype=np.int64)
    entries[:, 0::2] = l1.entries
    entries[:, 1::2] = -l1.entries
    edges: list[Edge] = []
    for i, (a, b) in enumerate(l1.edges):
        w = l1.n + i
        edges.extend([(a, w), (b, w)])
    position = {e: i for i, e in enumerate(l1.edges)}
    chords = tuple(edges[2 * position[c]] for c in l1.chords)
    return CircuitMatrix(entries, tuple(edges), chords, l1.n + l1.cols)


def _codes(group: AbelianGroup, tuples: np.ndarray) -> np.ndarray:
    code = np.zeros(len(tuples), dtype=np.int64)
    for j in range(tuples.shape[1]):
        code = code * group.order + tuples[:, j]
    return code


def verify_kernel_image(
    l: CircuitMatrix,
    m: SignedIncidenceMatrix,
    group: AbelianGroup,
    cap: int = DEFAULT_KERNEL_CAP,
    chunk: int = 1 << 16,
) -> KernelImageVerdict:
    """Exhaustively check Im(M) = ker(L) inside G^k.

    Enumerates G^n (pushing through M) and G^k (testing L); refuses when
    |G|^max(n, k) exceeds ``cap``. Witnesses are the least offending tuples.
    """
    k, n = m.rows, m.cols
    if l.cols != k:
        raise ValueError(f"L has {l.cols} columns but M has {k} rows")
    q = group.order
    cost = q ** max(n, k)
    if cost > cap:
        raise BudgetExceededError("kernel/image check", cost, cap)
    expected = q ** (k - l.rows)
    zero_rows = np.zeros(l.rows, dtype=np.int64)

    in_image = np.zeros(q**k, dtype=bool)
    for start in range(0, q**n, chunk):
        x = power_tuples(group, start, min(start + chunk, q**n), n)
        y = group.combine(m.entries, x)
        if l.rows:
            z = group.combine(l.entries, y)
            bad = np.flatnonzero(np.any(z != zero_rows, axis=1))
            if len(bad):
                xw = x[bad[0]]
                witness = tuple(group.element_at(int(i)) for i in xw)
                return KernelImageVerdict(False, -1, -1, expected, "Mx is not in ker(L)", witness)
        in_image[_codes(group, y)] = True

    in_kernel = np.zeros(q**k, dtype=bool)
    for start in range(0, q**k, chunk):
        y = power_tuples(group, start, min(start + chunk, q**k), k)
        if l.rows:
            in_kernel[start : start + len(y)] = np.all(group.combine(l.entries, y) == zero_rows, axis=1)
        else:
            in_kernel[start : start + len(y)] = True

    image_size = int(in_image.sum())
    kernel_size = int(in_kernel.sum())
    missing = np.flatnonzero(in_kernel & ~in_image)
    if len(missing):
        yw = power_tuples(group, int(missing[0]), int(missing[0]) + 1, k)[0]
        witness = tuple(group.element_at(int(i)) for i in yw)
        return KernelImageVerdict(False, image_size, kernel_size, expected, "kernel element outside Im(M)", witness)
    if kernel_size != expected:
        return KernelImageVerdict(False, image_size, kernel_size, expected, f"|ker L| = {kernel_size}, expected |G|^(k-m) = {expected}")
    return KernelImageVerdict(True, image_size, kernel_size, expected)
