import itertools

import pytest
from hypothesis import given, strategies as st

import oracles
from conftest import graphs
from racgkit.cayley import (
    Ball, BudgetExceeded, GroupElement, ProbePass, Violation, coset_distance, geodesic_prefixes,
    geodesic_quasiconvexity_probe, identity, left_descents, multiply, normal_form, parse_word,
    reduce_word, word_distance, word_length,
)
from racgkit.constructions import behrstock_ladder, cycle_graph
from racgkit.graph import GraphError, SimplicialGraph, VertexSubset

D_INF = SimplicialGraph("ab", [])


@st.composite
def graph_and_word(draw, max_vertices=6, max_len=10):
    g = draw(graphs(1, max_vertices))
    w = draw(st.lists(st.integers(0, len(g) - 1), max_size=max_len))
    return g, w


def test_basic_normal_forms(c4):
    assert str(normal_form(c4, "a a")) == "e"
    assert str(normal_form(c4, "b a")) == "a b"
    assert str(normal_form(c4, "a c a")) == "a c a"
    assert str(multiply(normal_form(c4, "a c"), "a")) == "a c a"
    assert word_length(c4, "a b a b") == 0
    assert word_length(D_INF, "a b a b") == 4


def test_unknown_generator(c4):
    with pytest.raises(GraphError):
        parse_word(c4, "a z")


def test_sphere_sizes():
    assert Ball(cycle_graph(4), 4).sphere_sizes == [1, 4, 8, 12, 16]
    assert len(Ball(D_INF, 3)) == 7


def test_budget():
    with pytest.raises(BudgetExceeded):
        Ball(D_INF, 10, budget=5)


def test_ball_edges_are_generator_steps(c4):
    b = Ball(c4, 3)
    for i, j, s in b.edges():
        assert len(b.elements[j]) == len(b.elements[i]) + 1
        assert reduce_word(c4.nbr_masks, b.elements[i] + (s,)) == b.elements[j]


@given(graph_and_word())
def test_involution_and_canonicity(gw):
    g, w = gw
    nbr = g.nbr_masks
    x = reduce_word(nbr, w)
    assert reduce_word(nbr, x) == x
    assert reduce_word(nbr, list(w) + list(reversed(w))) == ()
    for perm_seed in range(3):
        # shuffling adjacent commuting letters gives the same element
        u = list(w)
        for k in range(len(u) - 1):
            if (k + perm_seed) % 2 == 0 and (nbr[u[k]] >> u[k + 1]) & 1:
                u[k], u[k + 1] = u[k + 1], u[k]
        assert reduce_word(nbr, u) == x


@given(graph_and_word(max_vertices=5, max_len=8))
def test_same_element_as_tits_representation(gw):
    g, w = gw
    x = reduce_word(g.nbr_masks, w)
    assert oracles.element(g, x) == oracles.element(g, w)


@given(graphs(1, 5))
def test_lengths_match_tits_bfs(g):
    radius = 4
    truth = oracles.tits_ball(g, radius)
    b = Ball(g, radius)
    assert len(b) == len(truth)
    for w in b.elements:
        assert truth[oracles.element(g, w)] == len(w)


@given(graph_and_word(max_len=8), graph_and_word(max_len=8))
def test_group_axioms(gx, gy):
    g, w = gx
    _, v = gy
    v = [s % len(g) for s in v]
    x, y = GroupElement(g, reduce_word(g.nbr_masks, w)), GroupElement(g, reduce_word(g.nbr_masks, v))
    assert (x * x.inverse()).letters == ()
    assert (x * y).inverse().letters == (y.inverse() * x.inverse()).letters
    assert word_distance(x, y) == word_distance(y, x)
    assert word_distance(x, identity(g)) == len(x)


def _brute_coset(g, w, delta, radius):
    sub = Ball(g, radius, generators=VertexSubset(g, delta))
    nbr = g.nbr_masks
    return min(len(reduce_word(nbr, tuple(reversed(z)) + tuple(w))) for z in sub.elements)


@given(graph_and_word(max_vertices=5, max_len=6), st.integers(0, 31))
def test_coset_distance_matches_search(gw, delta):
    g, w = gw
    delta &= g.full_mask
    x = reduce_word(g.nbr_masks, w)
    assert coset_distance(g.nbr_masks, x, delta) == _brute_coset(g, x, delta, len(x))


@given(graph_and_word(max_vertices=5, max_len=6))
def test_left_descents_shorten(gw):
    g, w = gw
    nbr = g.nbr_masks
    x = reduce_word(nbr, w)
    firsts = {x[j] for j in left_descents(nbr, x)}
    for s in range(len(g)):
        assert (len(reduce_word(nbr, (s,) + x)) < len(x)) == (s in firsts)


@given(graph_and_word(max_vertices=5, max_len=6))
def test_geodesic_prefixes_are_intervals(gw):
    g, w = gw
    nbr = g.nbr_masks
    x = reduce_word(nbr, w)
    pre = geodesic_prefixes(nbr, x)
    radius = len(x)
    everything = Ball(g, radius).elements
    want = {p for p in everything if len(p) + len(reduce_word(nbr, tuple(reversed(p)) + x)) == len(x)}
    assert pre == want


def test_probe_on_c4_diagonal_is_a_pass():
    # special subgroups are convex in the word metric
    res = geodesic_quasiconvexity_probe(cycle_graph(4), ["a", "c"], 6, 1)
    assert isinstance(res, ProbePass)
    assert res.max_distance == 0


def _ball_probe(g, delta, radius):
    """Every geodesic between points of G_delta inside the ball, checked by exhaustive search."""
    nbr = g.nbr_masks
    b = Ball(g, radius)
    m = g.mask(delta)
    in_sub = [w for w in b.elements if all((m >> s) & 1 for s in w)]
    worst = 0
    for x, y in itertools.combinations(in_sub, 2):
        z = reduce_word(nbr, tuple(reversed(x)) + y)
        for p in geodesic_prefixes(nbr, z):
            worst = max(worst, coset_distance(nbr, p, m))
    return worst


@pytest.mark.parametrize("g, delta, radius", [
    (cycle_graph(4), ["a", "c"], 6),
    (cycle_graph(5), ["a", "c"], 4),
    (behrstock_ladder(3), ["a1", "b1", "a2", "b2"], 3),
])
def test_probe_agrees_with_ball_oracle(g, delta, radius):
    res = geodesic_quasiconvexity_probe(g, delta, radius, 10)
    assert isinstance(res, ProbePass)
    assert res.max_distance == _ball_probe(g, delta, radius)


def test_violation_certificate():
    g = cycle_graph(4)
    x, y = identity(g), normal_form(g, "a c")
    v = Violation(x, y, normal_form(g, "a"), 0)
    assert v.certificate() == {"d(x,v)": 1, "d(v,y)": 1, "d(x,y)": 2, "d(v,G_delta)": 0}
