"""Unit-length metric graphs with a marked subset, and the standard fixtures."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Optional, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, dijkstra

IntFunction = Callable[[int], int]


class MetricGraphError(ValueError):
    pass


class MetricGraph:
    """Undirected graph with unit edges and a nonempty marked subset ``Y``.

    Distances are path lengths in edges.  Weighted input is subdivided on
    construction (see :meth:`from_weighted`), so every quantity computed on
    a ``MetricGraph`` is an integer or infinity.
    """

    def __init__(
        self,
        n: int,
        edges: Iterable[tuple[int, int]],
        marked: Iterable[int],
        labels: Optional[Sequence[str]] = None,
        allow_disconnected: bool = False,
        meta: Optional[dict] = None,
    ):
        e = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64)
        e = e.reshape(-1, 2)
        if n < 1:
            raise MetricGraphError("need at least one vertex")
        if e.size and (e.min() < 0 or e.max() >= n):
            raise MetricGraphError("edge endpoint out of range")
        if e.size and np.any(e[:, 0] == e[:, 1]):
            raise MetricGraphError("self-loop")
        y = np.unique(np.asarray(list(marked), dtype=np.int64))
        if y.size == 0:
            raise MetricGraphError("marked subset Y must be nonempty")
        if y.min() < 0 or y.max() >= n:
            raise MetricGraphError("marked vertex out of range")
        lo, hi = np.minimum(e[:, 0], e[:, 1]), np.maximum(e[:, 0], e[:, 1])
        pairs = np.unique(np.stack([lo, hi], axis=1), axis=0) if e.size else e
        rows = np.concatenate([pairs[:, 0], pairs[:, 1]])
        cols = np.concatenate([pairs[:, 1], pairs[:, 0]])
        self.n = n
        self.edges = pairs
        self.adj = csr_matrix((np.ones(rows.size, dtype=np.int8), (rows, cols)), shape=(n, n))
        self.marked = y
        self.labels = list(labels) if labels is not None else None
        if self.labels is not None and len(self.labels) != n:
            raise MetricGraphError("label count does not match vertex count")
        self.meta = meta or {}
        if not allow_disconnected and self.component_count() != 1:
            raise MetricGraphError("graph is disconnected")

    @classmethod
    def from_weighted(
        cls,
        vertices: Sequence[str],
        edges: Iterable[tuple[str, str, int]],
        marked: Iterable[str],
        allow_disconnected: bool = False,
    ) -> MetricGraph:
        """Subdivide each edge of integer length ``k`` into ``k`` unit edges.

        Interior points of the edge ``u-v`` get labels ``u-v:1`` ... ``u-v:k-1``.
        """
        labels = list(vertices)
        index = {v: i for i, v in enumerate(labels)}
        if len(index) != len(labels):
            raise MetricGraphError("duplicate vertex label")
        unit: list[tuple[int, int]] = []
        for u, v, k in edges:
            if u not in index or v not in index:
                raise MetricGraphError(f"edge {u}-{v} has an unknown endpoint")
            if int(k) != k or k < 1:
                raise MetricGraphError(f"edge {u}-{v} needs a positive integer length, got {k}")
            chain = [index[u]]
            for t in range(1, int(k)):
                chain.append(len(labels))
                labels.append(f"{u}-{v}:{t}")
            chain.append(index[v])
            unit.extend(zip(chain, chain[1:]))
        ys = [index[v] for v in marked]
        return cls(len(labels), unit, ys, labels, allow_disconnected)

    def __len__(self) -> int:
        return self.n

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels is not None else str(i)

    def component_count(self) -> int:
        return connected_components(self.adj, directed=False)[0]

    @cached_property
    def marked_distance(self) -> np.ndarray:
        """d(x, Y) for every vertex, as floats with ``inf`` when unreachable."""
        d = dijkstra(self.adj, directed=False, indices=self.marked, unweighted=True, min_only=True)
        d.setflags(write=False)
        return d

    def distances_from(self, sources: Sequence[int], limit: float = np.inf) -> np.ndarray:
        return dijkstra(self.adj, directed=False, indices=np.asarray(sources), unweighted=True, limit=limit)

    def distance(self, u: int, v: int) -> float:
        return float(self.distances_from([u])[0, v])

    def restricted(self, keep: np.ndarray) -> csr_matrix:
        """Adjacency with every edge touching a vertex outside ``keep`` removed."""
        k = keep.astype(np.int8)
        a = csr_matrix(self.adj.multiply(k[:, None]).multiply(k[None, :]))
        # csgraph reads stored zeros as edges, so drop them
        a.eliminate_zeros()
        return a


# --- integer test functions -------------------------------------------------


def ceil_pow(p: int, q: int) -> IntFunction:
    """``i -> ceil(i ** (p/q))`` computed exactly with integer roots."""
    from sympy import integer_nthroot

    def f(i: int) -> int:
        if i <= 0:
            return 0
        m = i ** p
        root, exact = integer_nthroot(m, q)
        return int(root) if exact else int(root) + 1

    f.__name__ = f"ceil_i^{p}/{q}"
    return f


def square(i: int) -> int:
    return i * i


def power_of_two(i: int) -> int:
    return 2 ** i


def identity_fn(i: int) -> int:
    return i


# --- fixtures -----------------------------------------------------------------


@dataclass(frozen=True)
class ModelLayout:
    """Where the ray points and arcs of a model space ended up."""

    f: IntFunction = field(repr=False)
    i_max: int
    ray_points: tuple[int, ...]
    arcs: dict[int, tuple[int, ...]] = field(repr=False)


def model_space(f: IntFunction, i_max: int) -> MetricGraph:
    """A ray with points x_0, x_1, ... at gaps d(x_{i-1}, x_i) = i, plus an arc J_i of length f(i) over each gap.

    The ray is marked.  ``f`` must return positive integers, be
    non-decreasing on 1..i_max and satisfy f(i_max) >= i_max.
    """
    if i_max < 1:
        raise MetricGraphError("i_max must be >= 1")
    vals = [f(i) for i in range(1, i_max + 1)]
    for i, v in enumerate(vals, start=1):
        if int(v) != v or v < 1:
            raise MetricGraphError(f"f({i}) = {v} is not a positive integer")
    if any(b < a for a, b in zip(vals, vals[1:])):
        raise MetricGraphError("f must be non-decreasing")
    if vals[-1] < i_max:
        raise MetricGraphError("f(i) >= i fails at the end of the sampled range")

    n_ray = i_max * (i_max + 1) // 2 + 1
    n_arc = sum(v - 1 for v in vals)
    n = n_ray + n_arc
    labels: list[str] = [""] * n
    x_idx = [0]
    for i in range(1, i_max + 1):
        x_idx.append(x_idx[-1] + i)
    for i, xi in enumerate(x_idx):
        labels[xi] = f"x{i}"
    edges = np.empty((n_ray - 1 + n_arc + i_max, 2), dtype=np.int64)
    edges[: n_ray - 1, 0] = np.arange(n_ray - 1)
    edges[: n_ray - 1, 1] = np.arange(1, n_ray)
    for i in range(1, i_max + 1):
        for t in range(1, i):
            labels[x_idx[i - 1] + t] = f"y{i}:{t}"
    arcs: dict[int, tuple[int, ...]] = {}
    nxt = n_ray
    row = n_ray - 1
    for i, length in enumerate(vals, start=1):
        inner = np.arange(nxt, nxt + length - 1)
        for t, v in enumerate(inner, start=1):
            labels[v] = f"J{i}:{t}"
        chain = np.concatenate([[x_idx[i - 1]], inner, [x_idx[i]]])
        k = chain.size - 1
        edges[row: row + k, 0] = chain[:-1]
        edges[row: row + k, 1] = chain[1:]
        row += k
        arcs[i] = tuple(int(c) for c in chain)
        nxt += length - 1
    layout = ModelLayout(f, i_max, tuple(x_idx), arcs)
    return MetricGraph(n, edges[:row], range(n_ray), labels, meta={"layout": layout})


def grid_box(width: int, height: int) -> MetricGraph:
    """Grid ``[0, width) x [-height//2, height//2]`` with the x-axis marked."""
    if width < 1 or height < 0:
        raise MetricGraphError("grid needs width >= 1 and height >= 0")
    half = height // 2
    ys = np.arange(-half, half + 1)
    rows = ys.size
    idx = np.arange(width * rows).reshape(width, rows)
    horiz = np.stack([idx[:-1, :].ravel(), idx[1:, :].ravel()], axis=1)
    vert = np.stack([idx[:, :-1].ravel(), idx[:, 1:].ravel()], axis=1)
    edges = np.concatenate([horiz, vert])
    axis = idx[:, half]
    labels = [f"({x},{y})" for x in range(width) for y in ys]
    coords = np.stack(np.meshgrid(np.arange(width), ys, indexing="ij"), axis=-1).reshape(-1, 2)
    return MetricGraph(width * rows, edges, axis, labels, meta={"coords": coords, "axis_row": half})


def comb_tree(spine: int, tooth: int) -> MetricGraph:
    """A path of ``spine`` edges (marked) with a hanging path of ``tooth`` edges at every spine vertex."""
    if spine < 0 or tooth < 0:
        raise MetricGraphError("comb sizes must be nonnegative")
    labels = [f"s{i}" for i in range(spine + 1)]
    edges = [(i, i + 1) for i in range(spine)]
    for i in range(spine + 1):
        prev = i
        for t in range(1, tooth + 1):
            labels.append(f"s{i}:{t}")
            edges.append((prev, len(labels) - 1))
            prev = len(labels) - 1
    return MetricGraph(len(labels), edges, range(spine + 1), labels)


def binary_tree(depth: int) -> MetricGraph:
    """Complete binary tree; the marked set is the geodesic between the two extreme leaves."""
    if depth < 1:
        raise MetricGraphError("depth must be >= 1")
    n = 2 ** (depth + 1) - 1
    edges = [(i, (i - 1) // 2) for i in range(1, n)]
    left, right = 2 ** depth - 1, n - 1
    path = set()
    for leaf in (left, right):
        v = leaf
        while True:
            path.add(v)
            if v == 0:
                break
            v = (v - 1) // 2
    return MetricGraph(n, edges, sorted(path), [f"t{i}" for i in range(n)])
