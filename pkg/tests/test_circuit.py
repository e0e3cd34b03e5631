from itertools import islice

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cayley_sidorenko.circuit import (
    CircuitMatrix,
    circuit_matrix,
    double_columns,
    fundamental_cycles,
    oriented_cycle_matrix,
    rational_rank,
    signed_incidence,
    verify_kernel_image,
)
from cayley_sidorenko.errors import BudgetExceededError, NotBipartiteError
from cayley_sidorenko.graphs import (
    Bipartition,
    SimpleGraph,
    builtin_graph,
    is_bipartite,
    standard_subdivision,
)
from cayley_sidorenko.group import AbelianGroup

Z2, Z3 = AbelianGroup((2,)), AbelianGroup((3,))


@st.composite
def connected_bipartite(draw, max_side=3):
    a = draw(st.integers(1, max_side))
    b = draw(st.integers(1, max_side))
    pairs = [(i, a + j) for i in range(a) for j in range(b)]
    # a spanning path-like skeleton keeps the graph connected
    g = nx.Graph()
    g.add_nodes_from(range(a + b))
    g.add_edges_from(draw(st.lists(st.sampled_from(pairs), unique=True)))
    for i in range(a):
        g.add_edge(i, a)
    for j in range(b):
        g.add_edge(0, a + j)
    perm = draw(st.permutations(range(a + b)))
    return SimpleGraph(a + b, tuple((perm[u], perm[v]) for u, v in g.edges))


def test_fundamental_cycle_examples():
    c4 = builtin_graph("C4")
    (cyc,) = fundamental_cycles(c4, [(0, 1), (1, 2), (2, 3)])
    assert sorted(cyc.edges) == [0, 1, 2, 3]
    assert fundamental_cycles(builtin_graph("P3")) == []
    k4 = builtin_graph("K4")
    cycles = fundamental_cycles(k4)
    assert len(cycles) == 3
    for cyc in cycles:
        # BFS tree from 0 is the star at 0: each chord closes a triangle through 0
        assert len(cyc.edges) == 3 and 0 in cyc.vertices


def test_circuit_matrix_examples():
    for name in ("C4", "C6"):
        g = builtin_graph(name)
        l = circuit_matrix(g)
        assert l.rows == 1 and sorted(np.abs(l.entries[0])) == [1] * g.n
        closed = l.entries[0]
        cyc = fundamental_cycles(g)[0]
        assert [int(closed[e]) for e in cyc.edges] == [1, -1] * (g.n // 2)
        assert verify_kernel_image(l, signed_incidence(g, is_bipartite(g)), Z3).passed
    tree = circuit_matrix(builtin_graph("P3"))
    assert tree.entries.shape == (0, 3)
    with pytest.raises(NotBipartiteError) as err:
        circuit_matrix(builtin_graph("K3"))
    assert len(err.value.witness) == 3


def test_signed_incidence_examples():
    m = signed_incidence(builtin_graph("K2"), Bipartition(frozenset({0}), frozenset({1})))
    assert m.entries.tolist() == [[1, -1]]
    p2 = builtin_graph("P2")
    m = signed_incidence(p2, Bipartition(frozenset({0, 2}), frozenset({1})))
    assert m.entries.tolist() == [[1, -1, 0], [0, -1, 1]]
    m = signed_incidence(builtin_graph("C4"), is_bipartite(builtin_graph("C4")))
    assert m.entries.shape == (4, 4)
    assert all(sorted(r) == [-1, 0, 0, 1] for r in m.entries.tolist())


def test_kernel_image_examples():
    c4 = builtin_graph("C4")
    bip = is_bipartite(c4)
    v = verify_kernel_image(circuit_matrix(c4), signed_incidence(c4, bip), Z3)
    assert v.passed and v.image_size == v.kernel_size == 27
    k2 = builtin_graph("K2")
    assert verify_kernel_image(circuit_matrix(k2), signed_incidence(k2, is_bipartite(k2)), Z2).passed


def test_corrupted_sign_fails_with_witness():
    c4 = builtin_graph("C4")
    l = circuit_matrix(c4)
    bad = l.entries.copy()
    bad[0, np.flatnonzero(bad[0])[0]] *= -1
    v = verify_kernel_image(l.with_entries(bad), signed_incidence(c4, is_bipartite(c4)), Z3)
    assert not v.passed and v.witness is not None


def test_kernel_image_budget():
    q3 = builtin_graph("Q3")
    with pytest.raises(BudgetExceededError):
        verify_kernel_image(circuit_matrix(q3), signed_incidence(q3, is_bipartite(q3)), AbelianGroup((8,)))


def test_double_columns_examples():
    l = CircuitMatrix(np.array([[1, -1, 1, -1]]), builtin_graph("C4").edges, ((0, 3),), 4)
    assert double_columns(l).entries.tolist() == [[1, -1, -1, 1, 1, -1, -1, 1]]
    empty = circuit_matrix(builtin_graph("P2"))
    assert double_columns(empty).entries.shape == (0, 4)


@pytest.mark.parametrize("name", ["K3", "C4", "K4", "C5", "K2,3"])
def test_doubled_oriented_matrix_is_a_circuit_matrix_of_subdivision(name):
    h1 = builtin_graph(name)
    h = standard_subdivision(h1)
    doubled = double_columns(oriented_cycle_matrix(h1))
    assert doubled.edges == h.edges
    v = verify_kernel_image(doubled, signed_incidence(h, is_bipartite(h)), Z2 if h.n > 9 else Z3)
    assert v.passed


def test_doubled_alternating_matrix_differs_by_column_pair_signs():
    c4 = builtin_graph("C4")
    alt = double_columns(circuit_matrix(c4)).entries
    ori = double_columns(oriented_cycle_matrix(c4)).entries
    assert np.array_equal(np.abs(alt), np.abs(ori))
    pairs = (alt * ori)[0].reshape(-1, 2)
    assert all(p[0] == p[1] for p in pairs)


@given(connected_bipartite())
@settings(max_examples=60, deadline=None)
def test_circuit_matrix_properties(g):
    bip = is_bipartite(g)
    l = circuit_matrix(g, bip)
    m = signed_incidence(g, bip)
    assert l.rows == g.num_edges - g.n + 1
    assert l.rank == l.rows == rational_rank(l.entries)
    assert not np.any(l.entries @ m.entries)
    if 2 ** max(g.n, g.num_edges) <= 1 << 12:
        assert verify_kernel_image(l, m, Z2).passed


@given(connected_bipartite(), st.data())
@settings(max_examples=40, deadline=None)
def test_other_spanning_trees(g, data):
    nxg = nx.Graph(g.edges)
    trees = list(islice(nx.SpanningTreeIterator(nxg), 20))
    t = data.draw(st.sampled_from(trees))
    tree = [tuple(sorted(e)) for e in t.edges]
    bip = is_bipartite(g)
    l = circuit_matrix(g, bip, tree)
    assert l.rank == l.rows
    assert not np.any(l.entries @ signed_incidence(g, bip).entries)


def test_rational_rank():
    assert rational_rank(np.array([[1, 2], [2, 4]])) == 1
    assert rational_rank(np.array([[1, 0, 1], [0, 1, 1], [1, 1, 2]])) == 2
    assert rational_rank(np.eye(4, dtype=int)) == 4


def test_json_fields():
    l = circuit_matrix(builtin_graph("C4"))
    assert set(l.to_json()) == {"rows", "cols", "entries", "edges", "chords"}
    m = signed_incidence(builtin_graph("C4"), is_bipartite(builtin_graph("C4")))
    assert m.to_json()["sideW"] == [0, 2]
