import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from racgkit.metric_lab import (
    MetricGraph, QgPass, QgViolation, SpiralSpec, escaping_square, generate_spirals,
    min_multiplicative_constant, quasigeodesic_check, spiral_constants, three_sides_path,
)


def test_spiral_constants():
    assert spiral_constants(1, 1) == (6, Fraction(19, 6))
    assert spiral_constants(1, 0) == (6, 0)
    assert spiral_constants(2, 2) == (12, Fraction(145, 6))
    with pytest.raises(ValueError):
        spiral_constants(0, 1)


def test_straight_line_is_geodesic():
    path = [(i, 0) for i in range(20)]
    assert quasigeodesic_check(path, 1, 0) == QgPass(190)


def test_backtrack_is_caught():
    path = [(0, 0), (1, 0), (0, 0)]
    res = quasigeodesic_check(path, 1, 0)
    assert res == QgViolation(0, 2, 0, "lower")
    assert isinstance(quasigeodesic_check(path, 1, 2), QgPass)


def test_upper_violation_on_a_graph():
    X = MetricGraph(3, [(0, 1), (1, 2)], [0])
    # consecutive samples two apart break the upper bound at lam = 1
    res = quasigeodesic_check([0, 2], 1, 0, metric=X)
    assert res == QgViolation(0, 1, 2, "upper")


def _brute_qg(path, lam, eps):
    lam, eps = Fraction(lam), Fraction(eps)
    for t, s in itertools.combinations(range(len(path)), 2):
        d = sum(abs(a - b) for a, b in zip(path[t], path[s]))
        if not (Fraction(s - t) / lam - eps <= d <= lam * (s - t) + eps):
            return False
    return True


@given(st.lists(st.sampled_from([(1, 0), (-1, 0), (0, 1), (0, -1)]), max_size=25),
       st.sampled_from([1, Fraction(3, 2), 2, 3]), st.sampled_from([0, Fraction(1, 2), 2]))
def test_check_matches_pairwise_definition(steps, lam, eps):
    path = [(0, 0)]
    for dx, dy in steps:
        path.append((path[-1][0] + dx, path[-1][1] + dy))
    assert isinstance(quasigeodesic_check(path, lam, eps), QgPass) == _brute_qg(path, lam, eps)


@pytest.mark.parametrize("n", range(2, 12))
def test_three_sides_exactly_three(n):
    path = three_sides_path(n)
    assert isinstance(quasigeodesic_check(path, 3, 0), QgPass)
    assert isinstance(quasigeodesic_check(path, 2, 0), QgViolation)
    assert min_multiplicative_constant(path) == 3


def test_escaping_square():
    n, path = escaping_square(7)
    assert n == 8 and max(y for _, y in path) == 8
    assert path[0][1] == path[-1][1] == 0


@pytest.mark.parametrize("K, L", [(1, 1), (1, 2), (2, 1), (2, 2)])
def test_generated_spirals_are_quasigeodesics(K, L):
    lam, eps = spiral_constants(K, L)
    specs = list(generate_spirals(K, L, max_segments=4, max_length=120))
    assert specs
    for sp in specs:
        assert sp.problems() == []
        assert isinstance(quasigeodesic_check(sp.path(), lam, eps), QgPass)


def test_generation_is_deterministic():
    a = [s.walks for s in generate_spirals(1, 2, max_segments=3, max_length=60)]
    b = [s.walks for s in generate_spirals(1, 2, max_segments=3, max_length=60)]
    assert a == b


def test_spec_problems():
    sp = SpiralSpec(((1,) * 3, (1,) * 15), 5, Fraction(1), Fraction(1))
    assert any("first segment" in p for p in sp.problems())
    slow = SpiralSpec(((1,) * 4, (1,) * 10, (1,) * 3), 5, Fraction(1), Fraction(0))
    assert any("slope fails" in p for p in slow.problems())
    assert SpiralSpec((), 5, Fraction(1), Fraction(1)).problems() == ["no segments"]


def test_path_alternates_axes():
    sp = SpiralSpec(((1, 1), (-1,), (1,)), 5, Fraction(1), Fraction(0))
    assert sp.path() == [(0, 0), (1, 0), (2, 0), (2, -1), (3, -1)]
