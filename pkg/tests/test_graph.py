import math

import networkx as nx
import pytest
from hypothesis import given

import oracles
from conftest import graph_and_subset, graphs
from racgkit.graph import (
    GraphError, SimplicialGraph, Square, distance, enumerate_squares, is_join, join_split, link,
    square_graph, star,
)


def test_rejects_self_loops_and_unknown_vertices():
    with pytest.raises(GraphError):
        SimplicialGraph("ab", [("a", "a")])
    with pytest.raises(GraphError):
        SimplicialGraph("ab", [("a", "z")])


def test_c4_has_one_square(c4):
    sq = enumerate_squares(c4)
    assert sq == (Square(("a", "c"), ("b", "d")),)
    assert str(sq[0]) == "[ac|bd]"


def test_c5_has_no_square(c5):
    assert enumerate_squares(c5) == ()


def test_link_and_star(c4):
    assert set(link(c4, ["a"])) == {"b", "d"}
    assert set(star(c4, ["a"])) == {"a", "b", "d"}
    assert set(link(c4, ["a", "c"])) == {"b", "d"}
    with pytest.raises(GraphError):
        link(c4, [])


def test_join_split_of_c4(c4):
    a, b = join_split(c4, c4.vertices)
    assert {frozenset(a), frozenset(b)} == {frozenset("ac"), frozenset("bd")}
    assert join_split(c4, ["a", "c"]) is None


def test_distance(c5):
    assert distance(c5, "a", "c") == 2
    g = SimplicialGraph("abc", [("a", "b")])
    assert distance(g, "a", "c") == math.inf


def test_induced_keeps_parent_order(c5):
    h = c5.induced(["e", "a", "c"])
    assert h.vertices == ("a", "c", "e")
    assert h.edges == (("a", "e"),)


@given(graphs(1, 8))
def test_squares_match_brute_force(g):
    found = {frozenset({frozenset(s.diagonal1), frozenset(s.diagonal2)}) for s in enumerate_squares(g)}
    assert found == oracles.squares(g)
    assert len(found) == len(enumerate_squares(g))


@given(graphs(1, 8))
def test_square_order_is_canonical(g):
    sq = enumerate_squares(g)
    assert list(sq) == sorted(sq, key=lambda s: tuple(g.index(v) for v in s.vertices))


@given(graph_and_subset(1, 7, nonempty=True))
def test_link_matches_brute_force(gs):
    g, s = gs
    assert set(link(g, s)) == oracles.link(g, s)
    assert set(star(g, s)) == oracles.link(g, s) | set(s)


@given(graph_and_subset(1, 7, nonempty=True))
def test_join_matches_brute_force(gs):
    g, s = gs
    assert is_join(g, s) == oracles.is_join(g, s)
    split = join_split(g, s)
    if split is not None:
        a, b = split
        assert a.mask and b.mask and not a.mask & b.mask
        assert all(g.adjacent(u, v) for u in a for v in b)


@given(graphs(2, 8))
def test_square_graph_adjacency_is_shared_diagonal(g):
    sg = square_graph(g)
    for i, j in sg.edges:
        assert set(sg.squares[i].diagonals) & set(sg.squares[j].diagonals)


@given(graphs(1, 8))
def test_distance_matches_networkx(g):
    h = oracles.to_nx(g)
    lengths = dict(nx.all_pairs_shortest_path_length(h))
    for u in g.vertices:
        for v in g.vertices:
            assert distance(g, u, v) == lengths[u].get(v, math.inf)
