from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given

import oracles
from conftest import metric_graphs
from racgkit.metric_lab import (
    DivergenceProfile, MetricGraph, Pass, Witness, binary_tree, closest_point_retraction, comb_tree,
    contraction_test, grid_box, model_space, quadratic_floor_violations, vertical_projection,
)
from racgkit.metric_lab.space import ceil_pow


def test_closest_point_on_path():
    X = MetricGraph(5, [(0, 1), (1, 2), (2, 3), (3, 4)], [0, 4])
    assert list(closest_point_retraction(X)) == [0, 0, 0, 4, 4]


@given(metric_graphs())
def test_closest_point_is_nearest(X):
    g = closest_point_retraction(X)
    adj = oracles.adjacency(X)
    dY = oracles.bfs(adj, [int(y) for y in X.marked])
    for v in range(X.n):
        dist = oracles.bfs(adj, [v])
        nearest = [int(y) for y in X.marked if dist[int(y)] == dY[v]]
        assert g[v] == min(nearest)


@pytest.mark.parametrize("X", [comb_tree(20, 24), binary_tree(8)], ids=["comb", "binary-tree"])
def test_trees_pass(X):
    res = contraction_test(X, closest_point_retraction(X), 1, 2)
    assert isinstance(res, Pass)


def test_model_space_fails_lipschitz():
    X = model_space(ceil_pow(3, 2), 40)
    w = contraction_test(X, closest_point_retraction(X), Fraction(1, 2), 10)
    assert isinstance(w, Witness) and w.condition == 1
    assert w.describe(X) == "points J21:48, J21:49 have images 21 apart, more than 20"


def test_model_space_fails_ball_condition():
    X = model_space(ceil_pow(3, 2), 40)
    w = contraction_test(X, closest_point_retraction(X), Fraction(1, 2), 10, conditions=(3,))
    assert w.condition == 3 and w.radius == 6 and w.observed == 11
    assert X.label(w.center) == "J11:13"


def test_grid_fails_with_vertical_projection():
    X = grid_box(40, 20)
    w = contraction_test(X, vertical_projection(X), 1, 2)
    assert isinstance(w, Witness) and w.condition == 3


def test_near_y_condition():
    X = MetricGraph(5, [(0, 1), (1, 2), (2, 3), (3, 4)], [0, 4])
    g = np.array([4, 4, 4, 4, 4])
    # retraction values must lie in Y, and 0 is sent 4 away
    w = contraction_test(X, g, 1, 2)
    assert w.condition == 2 and w.pair == (0, 4) and w.observed == 4


def test_mapping_retraction_by_label():
    X = MetricGraph.from_weighted(["p", "q"], [("p", "q", 2)], ["p", "q"])
    res = contraction_test(X, {"p": "p", "q": "q", "p-q:1": "p"}, 1, 2)
    assert isinstance(res, Pass)


@pytest.mark.parametrize("kwargs", [dict(A=0, D=1), dict(A=2, D=1), dict(A=1, D=0)])
def test_parameter_validation(kwargs):
    X = comb_tree(2, 2)
    with pytest.raises(ValueError):
        contraction_test(X, closest_point_retraction(X), **kwargs)


def test_retraction_must_land_in_y():
    X = comb_tree(2, 2)
    with pytest.raises(ValueError):
        contraction_test(X, np.arange(X.n), 1, 1)


def _brute_contraction(X, g, A, D):
    adj = oracles.adjacency(X)
    dist = {v: oracles.bfs(adj, [v]) for v in range(X.n)}
    dY = oracles.bfs(adj, [int(y) for y in X.marked])
    if any(dist[int(y)][int(g[int(y)])] > D for y in X.marked):
        return 2
    for u in range(X.n):
        for v in range(X.n):
            if dist[int(g[u])][int(g[v])] > D * dist[u][v] + D:
                return 1
    for x in range(X.n):
        R = int(Fraction(A) * dY[x])
        ball = [v for v in range(X.n) if dist[x][v] <= R]
        if R >= 1 and max(dist[int(g[u])][int(g[v])] for u in ball for v in ball) > D:
            return 3
    return None


@given(metric_graphs(max_vertices=12))
def test_first_failing_condition_matches_brute_force(X):
    g = closest_point_retraction(X)
    for A, D in [(1, 1), (Fraction(1, 2), 1), (1, 2)]:
        res = contraction_test(X, g, A, D)
        want = _brute_contraction(X, g, A, D)
        assert (res.condition if isinstance(res, Witness) else None) == want


def test_quadratic_floor_violations():
    prof = DivergenceProfile({(Fraction(1), 6, 9): 100, (Fraction(1), 6, 20): 40, (Fraction(1), 5, 20): 1})
    out = quadratic_floor_violations(prof, 1, 1)
    assert [row[:4] for row in out] == [(1, 6, 20, 40)]
    assert out[0][4] == 100
