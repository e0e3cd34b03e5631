import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cayley_sidorenko.cayley import (
    all_symmetric_sets,
    build_cayley,
    edge_density,
    parse_set,
    spectrum,
    symmetric_orbits,
    symmetric_set,
)
from cayley_sidorenko.group import AbelianGroup, all_groups_up_to, group_parse


def to_nx(g):
    out = nx.Graph()
    out.add_nodes_from(range(g.n))
    out.add_edges_from(g.edges)
    return out


def test_validation_examples():
    z4 = group_parse("Z4")
    assert len(symmetric_set(z4, [1, 3])) == 2
    with pytest.raises(ValueError, match="3"):
        symmetric_set(z4, [1])
    assert len(symmetric_set(z4, [1], closure=True)) == 2
    with pytest.raises(ValueError):
        symmetric_set(z4, [0, 1, 3])
    z22 = group_parse("Z2xZ2")
    assert len(symmetric_set(z22, [(1, 0), (0, 1), (1, 1)])) == 3


def test_parse_set_forms():
    z22 = group_parse("Z2xZ2")
    assert parse_set(z22, "(1,0);(0,1)").label() == "(0,1);(1,0)"
    assert parse_set(group_parse("Z6"), "1,5,3").indices() == [1, 3, 5]
    assert len(parse_set(group_parse("Z5"), "")) == 0
    with pytest.raises(ValueError):
        parse_set(group_parse("Z5"), "1,x")


def test_cayley_examples():
    assert nx.is_isomorphic(to_nx(build_cayley(parse_set(group_parse("Z4"), "1,3"))), nx.cycle_graph(4))
    assert nx.is_isomorphic(to_nx(build_cayley(parse_set(group_parse("Z5"), "1,2,3,4"))), nx.complete_graph(5))
    c = build_cayley(parse_set(group_parse("Z2xZ2"), "(1,0);(0,1)"))
    assert c.degrees() == [2, 2, 2, 2] and nx.is_isomorphic(to_nx(c), nx.cycle_graph(4))


def test_edge_density_examples():
    assert edge_density(parse_set(group_parse("Z4"), "1,3")) == 0.5
    assert edge_density(parse_set(group_parse("Z4"), "")) == 0
    assert edge_density(parse_set(group_parse("Z6"), "1,5,3")) == 0.5


def test_spectrum_examples():
    lam = spectrum(parse_set(group_parse("Z4"), "1,3"))
    assert np.max(np.abs(lam - [2, 0, -2, 0])) < 1e-12
    # oracle: characteristic polynomial of the C4 adjacency matrix is x^4 - 4x^2
    assert np.allclose(np.sort(np.roots([1, 0, -4, 0, 0]).real), np.sort(lam), atol=1e-9)
    assert not np.any(spectrum(parse_set(group_parse("Z2xZ3"), "")))


@st.composite
def hosts(draw):
    g = draw(st.sampled_from(all_groups_up_to(9)))
    sets = all_symmetric_sets(g)
    return draw(st.sampled_from(sets))


@given(hosts())
@settings(max_examples=120)
def test_spectrum_against_eigvalsh(s):
    g = build_cayley(s)
    adj = nx.to_numpy_array(to_nx(g), nodelist=range(g.n))
    ref = np.linalg.eigvalsh(adj)
    assert np.max(np.abs(np.sort(spectrum(s)) - ref)) < 1e-9
    assert all(d == len(s) for d in g.degrees())
    assert g.num_edges * 2 == len(s) * s.group.order


def test_enumeration_counts():
    z8 = AbelianGroup((8,))
    # orbits {1,7},{2,6},{3,5},{4}: sets are products of orbit choices
    assert len(symmetric_orbits(z8)) == 4
    assert len(all_symmetric_sets(z8)) == 16
    assert [s.label() for s in all_symmetric_sets(z8, size=2)] == ["1;7", "2;6", "3;5"]
    assert len(all_symmetric_sets(group_parse("Z2xZ2xZ2"))) == 128
