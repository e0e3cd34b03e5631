"""Simple graphs, 2-colouring, BFS spanning trees and subdivisions.

Vertices are 0..n-1. Each edge is stored as (u, v) with u < v, and the edge
list order is stable: it fixes the column order of every matrix built later.
Subdividing edge (u, v) lays the new path out from u towards v.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Iterable, Sequence

Edge = tuple[int, int]


@dataclass(frozen=True)
class SimpleGraph:
    n: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        normalized = []
        seen = set()
        for e in self.edges:
            u, v = (int(x) for x in e)
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {(u, v)} has an endpoint outside 0..{self.n - 1}")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise ValueError(f"repeated edge {e}")
            seen.add(e)
            normalized.append(e)
        object.__setattr__(self, "edges", tuple(normalized))

    @property
    def num_vertices(self) -> int:
        return self.n

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def cyclomatic_number(self) -> int:
        return self.num_edges - self.n + len(connected_components(self))

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for nbrs in adj:
            nbrs.sort()
        return adj

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency()]

    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    def induced(self, vertices: Sequence[int]) -> tuple[SimpleGraph, list[int]]:
        """Subgraph on ``vertices`` relabelled 0..len-1 in the given order.

        Also returns the indices (into ``self.edges``) of the kept edges, in order.
        """
        relabel = {v: i for i, v in enumerate(vertices)}
        kept = [i for i, (u, v) in enumerate(self.edges) if u in relabel and v in relabel]
        sub = SimpleGraph(len(vertices), tuple((relabel[self.edges[i][0]], relabel[self.edges[i][1]]) for i in kept))
        return sub, kept


@dataclass(frozen=True)
class Bipartition:
    side_w: frozenset[int]
    side_u: frozenset[int]

    def validate(self, g: SimpleGraph) -> None:
        if self.side_w & self.side_u or (self.side_w | self.side_u) != frozenset(range(g.n)):
            raise ValueError("sides do not partition the vertex set")
        for u, v in g.edges:
            if (u in self.side_w) == (v in self.side_w):
                raise ValueError(f"edge {(u, v)} does not cross the bipartition")


@dataclass(frozen=True)
class OddCycle:
    """Failure marker of is_bipartite: a closed walk of odd length, as vertices."""

    cycle: tuple[int, ...]


@dataclass(frozen=True)
class SubdivisionPlan:
    base: SimpleGraph
    lengths: tuple[int, ...]

    def __post_init__(self):
        lengths = tuple(int(m) for m in self.lengths)
        if len(lengths) != self.base.num_edges:
            raise ValueError(f"plan needs {self.base.num_edges} lengths, got {len(lengths)}")
        if any(m < 1 for m in lengths):
            raise ValueError("subdivision lengths must be positive")
        object.__setattr__(self, "lengths", lengths)


def connected_components(g: SimpleGraph) -> list[list[int]]:
    """Components as sorted vertex lists, ordered by least vertex."""
    adj = g.adjacency()
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    queue.append(y)
        out.append(sorted(comp))
    return out


def _bfs_tree(g: SimpleGraph, root: int) -> tuple[dict[int, int | None], dict[int, int], list[Edge]]:
    adj = g.adjacency()
    parent: dict[int, int | None] = {root: None}
    depth = {root: 0}
    tree: list[Edge] = []
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in parent:
                parent[y] = x
                depth[y] = depth[x] + 1
                tree.append((x, y) if x < y else (y, x))
                queue.append(y)
    return parent, depth, tree


def spanning_tree(g: SimpleGraph, component: Iterable[int] | None = None) -> list[Edge]:
    """BFS spanning tree of a connected component, rooted at its least vertex.

    Neighbours are visited in increasing order; edges are listed in discovery
    order. With ``component=None`` the graph itself must be connected.
    """
    comp = sorted(component) if component is not None else list(range(g.n))
    if not comp:
        return []
    _, _, tree = _bfs_tree(g, comp[0])
    if len(tree) != len(comp) - 1 or any(v not in set(comp) for e in tree for v in e):
        raise ValueError("component is not a connected component of the graph")
    return tree


def is_bipartite(g: SimpleGraph) -> Bipartition | OddCycle:
    """2-colour each component with its least vertex in W, or return an odd cycle."""
    colour: dict[int, int] = {}
    parent: dict[int, int | None] = {}
    adj = g.adjacency()
    for comp in connected_components(g):
        root = comp[0]
        colour[root] = 0
        parent[root] = None
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in colour:
                    colour[y] = 1 - colour[x]
                    parent[y] = x
                    queue.append(y)
                elif colour[y] == colour[x]:
                    return OddCycle(_close_cycle(parent, x, y))
    w = frozenset(v for v, c in colour.items() if c == 0)
    return Bipartition(w, frozenset(range(g.n)) - w)


def _close_cycle(parent: dict[int, int | None], x: int, y: int) -> tuple[int, ...]:
    # x and y are adjacent with equal BFS colour; join their tree paths at the LCA
    px = [x]
    while parent[px[-1]] is not None:
        px.append(parent[px[-1]])
    py = [y]
    while parent[py[-1]] is not None:
        py.append(parent[py[-1]])
    on_x = set(px)
    lca = next(v for v in py if v in on_x)
    left = px[: px.index(lca) + 1]
    right = py[: py.index(lca)]
    return tuple(left + right[::-1])


def subdivide(base: SimpleGraph, lengths: Sequence[int]) -> SimpleGraph:
    """Replace edge i by a path with ``lengths[i]`` edges.

    Original vertices keep their labels; interior vertices are appended edge by
    edge, each path numbered from its smaller endpoint.
    """
    plan = SubdivisionPlan(base, tuple(lengths))
    n = base.n
    edges: list[Edge] = []
    for (u, v), m in zip(base.edges, plan.lengths):
        walk = [u] + list(range(n, n + m - 1)) + [v]
        n += m - 1
        edges.extend(zip(walk, walk[1:]))
    return SimpleGraph(n, tuple(edges))


def even_subdivision(plan: SubdivisionPlan) -> SimpleGraph:
    """Edge e_i becomes a path of length 2 m_i; the result is always bipartite."""
    return subdivide(plan.base, [2 * m for m in plan.lengths])


def standard_subdivision(h: SimpleGraph) -> SimpleGraph:
    return subdivide(h, [2] * h.num_edges)


def disjoint_union(*graphs: SimpleGraph) -> SimpleGraph:
    n = 0
    edges: list[Edge] = []
    for g in graphs:
        edges.extend((u + n, v + n) for u, v in g.edges)
        n += g.n
    return SimpleGraph(n, tuple(edges))


# -- builtin patterns --------------------------------------------------------

_BUILTIN_HELP = """\
Builtin patterns (vertex labels):
  K<n>      complete graph on 0..n-1, edges in lexicographic order
  C<n>      cycle 0-1-...-(n-1)-0, n >= 3
  P<n>      path with n edges 0-1-...-n
  K<a>,<b>  complete bipartite graph, sides 0..a-1 and a..a+b-1
  Q3        3-cube on 0..7, i ~ j when i xor j is a power of two
"""


def builtin_graph(name: str) -> SimpleGraph:
    name = name.strip()
    if name.upper() == "Q3":
        edges = [(i, i ^ (1 << b)) for i in range(8) for b in range(3) if i < i ^ (1 << b)]
        return SimpleGraph(8, tuple(sorted(edges)))
    m = re.fullmatch(r"[Kk](\d+),(\d+)", name)
    if m:
        a, b = int(m.group(1)), int(m.group(2))
        if a < 1 or b < 1:
            raise ValueError(f"{name}: both sides need at least one vertex")
        return SimpleGraph(a + b, tuple((i, a + j) for i in range(a) for j in range(b)))
    m = re.fullmatch(r"([KkCcPp])(\d+)", name)
    if m is None:
        raise ValueError(f"unknown builtin graph {name!r}")
    kind, n = m.group(1).upper(), int(m.group(2))
    if kind == "K":
        if n < 1:
            raise ValueError("K<n> needs n >= 1")
        return SimpleGraph(n, tuple(combinations(range(n), 2)))
    if kind == "C":
        if n < 3:
            raise ValueError("C<n> needs n >= 3")
        return SimpleGraph(n, tuple((i, (i + 1) % n) for i in range(n)))
    if n < 0:
        raise ValueError("P<n> needs n >= 0")
    return SimpleGraph(n + 1, tuple((i, i + 1) for i in range(n)))


def builtin_help() -> str:
    return _BUILTIN_HELP


def parse_edge_list(text: str) -> SimpleGraph:
    """Edge-list format: ``n <count>`` then one ``u v`` pair per line; ``#`` comments."""
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "n":
                raise ValueError(f"line {lineno}: expected 'n <count>' header")
            n = int(parts[1])
            continue
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'u v'")
        edges.append((int(parts[0]), int(parts[1])))
    if n is None:
        raise ValueError("missing 'n <count>' header")
    return SimpleGraph(n, tuple(edges))


def format_edge_list(g: SimpleGraph) -> str:
    return "\n".join([f"n {g.n}"] + [f"{u} {v}" for u, v in g.edges]) + "\n"


def load_pattern(source: str) -> SimpleGraph:
    """A path to an edge-list file, else a builtin name."""
    path = Path(source)
    if path.is_file():
        return parse_edge_list(path.read_text())
    return builtin_graph(source)
