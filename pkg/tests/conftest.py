import itertools
import os
import sys

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from racgkit.graph import SimplicialGraph  # noqa: E402

settings.register_profile("default", max_examples=150, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def graphs(draw, min_vertices: int = 1, max_vertices: int = 7):
    n = draw(st.integers(min_vertices, max_vertices))
    names = [chr(97 + i) for i in range(n)]
    pairs = list(itertools.combinations(names, 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return SimplicialGraph(names, [p for p, keep in zip(pairs, chosen) if keep])


@st.composite
def graph_and_subset(draw, min_vertices: int = 1, max_vertices: int = 7, nonempty: bool = False):
    g = draw(graphs(min_vertices, max_vertices))
    sub = draw(st.lists(st.sampled_from(g.vertices), unique=True, min_size=1 if nonempty else 0))
    return g, sub


@pytest.fixture
def c4():
    return SimplicialGraph("abcd", [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")])


@pytest.fixture
def c5():
    return SimplicialGraph("abcde", [("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "a")])


@st.composite
def metric_graphs(draw, max_vertices: int = 14):
    from racgkit.metric_lab import MetricGraph

    n = draw(st.integers(2, max_vertices))
    parents = [draw(st.integers(0, i - 1)) for i in range(1, n)]
    edges = [(i, p) for i, p in zip(range(1, n), parents)]
    extra = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=n))
    edges += [(u, v) for u, v in extra if u != v]
    marked = draw(st.lists(st.integers(0, n - 1), min_size=1, max_size=3, unique=True))
    return MetricGraph(n, edges, marked)
