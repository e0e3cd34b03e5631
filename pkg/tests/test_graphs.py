import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cayley_sidorenko.graphs import (
    Bipartition,
    OddCycle,
    SimpleGraph,
    SubdivisionPlan,
    builtin_graph,
    connected_components,
    disjoint_union,
    even_subdivision,
    format_edge_list,
    is_bipartite,
    load_pattern,
    parse_edge_list,
    spanning_tree,
    standard_subdivision,
    subdivide,
)


def to_nx(g: SimpleGraph) -> nx.Graph:
    out = nx.Graph()
    out.add_nodes_from(range(g.n))
    out.add_edges_from(g.edges)
    return out


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return SimpleGraph(n, tuple(chosen))


def test_rejects_bad_edges():
    for edges in [((0, 0),), ((0, 1), (1, 0)), ((0, 3),)]:
        with pytest.raises(ValueError):
            SimpleGraph(3, edges)


def test_builtins():
    c4 = builtin_graph("C4")
    assert c4.n == 4 and set(c4.edges) == {(0, 1), (1, 2), (2, 3), (0, 3)}
    k23 = builtin_graph("K2,3")
    assert (k23.n, k23.num_edges) == (5, 6)
    q3 = builtin_graph("Q3")
    assert (q3.n, q3.num_edges) == (8, 12)
    assert nx.is_isomorphic(to_nx(q3), nx.hypercube_graph(3))
    assert builtin_graph("P3").num_edges == 3
    with pytest.raises(ValueError):
        builtin_graph("X9")


def test_bipartite_examples():
    assert is_bipartite(builtin_graph("C4")) == Bipartition(frozenset({0, 2}), frozenset({1, 3}))
    odd = is_bipartite(builtin_graph("K3"))
    assert isinstance(odd, OddCycle) and len(odd.cycle) == 3
    assert is_bipartite(SimpleGraph(3, ())) == Bipartition(frozenset({0, 1, 2}), frozenset())


@given(graphs())
@settings(max_examples=150)
def test_bipartite_against_networkx(g):
    res = is_bipartite(g)
    assert isinstance(res, Bipartition) == nx.is_bipartite(to_nx(g))
    if isinstance(res, Bipartition):
        res.validate(g)
        for comp in connected_components(g):
            assert comp[0] in res.side_w
    else:
        cyc = res.cycle
        assert len(cyc) % 2 == 1
        edges = set(g.edges)
        for i in range(len(cyc)):
            a, b = cyc[i], cyc[(i + 1) % len(cyc)]
            assert (min(a, b), max(a, b)) in edges


@given(graphs())
@settings(max_examples=150)
def test_components_and_trees(g):
    comps = connected_components(g)
    assert sorted(map(sorted, comps)) == sorted(sorted(c) for c in nx.connected_components(to_nx(g)))
    for comp in comps:
        tree = spanning_tree(g, comp)
        assert len(tree) == len(comp) - 1
        t = nx.Graph()
        t.add_nodes_from(comp)
        t.add_edges_from(tree)
        assert nx.is_tree(t)
        assert set(tree) <= set(g.edges)
    assert g.cyclomatic_number == g.num_edges - g.n + len(comps)


def test_spanning_tree_examples():
    c4 = builtin_graph("C4")
    assert spanning_tree(c4) == [(0, 1), (0, 3), (1, 2)]
    p3 = builtin_graph("P3")
    assert set(spanning_tree(p3)) == set(p3.edges)
    two = SimpleGraph(4, ((0, 1), (2, 3)))
    assert connected_components(two) == [[0, 1], [2, 3]]
    assert spanning_tree(two, [2, 3]) == [(2, 3)]


def test_subdivision_examples():
    k2 = builtin_graph("K2")
    p = even_subdivision(SubdivisionPlan(k2, (1,)))
    assert (p.n, p.num_edges) == (3, 2)
    k3 = builtin_graph("K3")
    assert nx.is_isomorphic(to_nx(even_subdivision(SubdivisionPlan(k3, (1, 1, 1)))), nx.cycle_graph(6))
    assert nx.is_isomorphic(to_nx(even_subdivision(SubdivisionPlan(k3, (1, 1, 2)))), nx.cycle_graph(8))
    assert nx.is_isomorphic(to_nx(standard_subdivision(builtin_graph("C4"))), nx.cycle_graph(8))
    k4 = standard_subdivision(builtin_graph("K4"))
    assert (k4.n, k4.num_edges) == (10, 12)
    empty = SimpleGraph(3, ())
    assert standard_subdivision(empty) == empty


@given(graphs(max_n=6), st.data())
@settings(max_examples=80)
def test_even_subdivision_counts(g, data):
    lengths = tuple(data.draw(st.lists(st.integers(1, 3), min_size=g.num_edges, max_size=g.num_edges)))
    h = even_subdivision(SubdivisionPlan(g, lengths))
    assert h.n == g.n + sum(2 * m - 1 for m in lengths)
    assert h.num_edges == sum(2 * m for m in lengths)
    assert isinstance(is_bipartite(h), Bipartition)
    # standard subdivision of the m_i-subdivision is the same graph
    assert nx.is_isomorphic(to_nx(h), to_nx(standard_subdivision(subdivide(g, lengths))))


def test_plan_validation():
    with pytest.raises(ValueError):
        SubdivisionPlan(builtin_graph("K3"), (1, 1))
    with pytest.raises(ValueError):
        SubdivisionPlan(builtin_graph("K2"), (0,))


def test_edge_list_roundtrip(tmp_path):
    g = disjoint_union(builtin_graph("C4"), builtin_graph("K2"))
    assert parse_edge_list(format_edge_list(g)) == g
    path = tmp_path / "g.txt"
    path.write_text("# comment\nn 3\n0 1  # first\n1 2\n")
    assert load_pattern(str(path)) == builtin_graph("P2")
    with pytest.raises(ValueError):
        parse_edge_list("0 1\n")


def test_induced():
    g = disjoint_union(builtin_graph("C4"), builtin_graph("K2"))
    sub, kept = g.induced([4, 5])
    assert sub == builtin_graph("K2") and kept == [4]
