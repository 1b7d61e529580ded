import pytest
from hypothesis import given

import oracles
from conftest import graphs
from racgkit.cfs import CfsFailure, clique_join_factor, covering_component, is_cfs, is_strongly_cfs
from racgkit.constructions import behrstock_ladder, complete_graph, cycle_graph
from racgkit.graph import SimplicialGraph


@pytest.mark.parametrize("n", [2, 3, 5, 13])
def test_ladders_are_strongly_cfs(n):
    v = is_strongly_cfs(behrstock_ladder(n))
    assert v and v.components == 1


def test_c5_is_not_cfs(c5):
    v = is_cfs(c5)
    assert not v
    assert v.reason is CfsFailure.UNCOVERED_VERTEX
    assert v.uncovered == "a"


@pytest.mark.parametrize("n", [1, 2, 5])
def test_cliques_have_empty_omega(n):
    v = is_cfs(complete_graph(n))
    assert not v and v.reason is CfsFailure.OMEGA_EMPTY


def test_cone_over_c4_is_cfs(c4):
    g = c4.with_edges([]).__class__("abcdz", list(c4.edges) + [(x, "z") for x in "abcd"])
    omega, k = clique_join_factor(g)
    assert list(k) == ["z"] and list(omega) == list("abcd")
    assert is_strongly_cfs(g)


def test_two_disjoint_squares_are_not_cfs():
    g = SimplicialGraph("abcdefgh", [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"),
                                     ("e", "f"), ("f", "g"), ("g", "h"), ("h", "e")])
    v = is_cfs(g)
    assert not v and v.reason is CfsFailure.UNCOVERED_VERTEX


def test_certificate_covers_omega():
    g = behrstock_ladder(4)
    cert = is_cfs(g).certificate
    assert set(cert.coverage) == set(g.vertices)
    for v, sq in cert.coverage.items():
        assert v in sq.vertices and sq in cert.component
    d = is_cfs(g).to_dict()
    assert d["holds"] and d["reason"] is None


def test_covering_component_indices(c4):
    sg, comp = covering_component(c4)
    assert comp == [0] and len(sg) == 1
    _, none = covering_component(cycle_graph(5))
    assert none == []


@given(graphs(1, 8))
def test_cfs_matches_definition(g):
    want_cfs, want_strong = oracles.cfs(g)
    assert bool(is_cfs(g)) == want_cfs
    assert bool(is_strongly_cfs(g)) == want_strong


@given(graphs(1, 8))
def test_strong_implies_cfs(g):
    if is_strongly_cfs(g):
        assert is_cfs(g)
