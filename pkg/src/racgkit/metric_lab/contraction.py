"""Falsifying the contracting property for a given retraction onto Y.

A retraction that fails here says nothing about other retractions, so a
pass never certifies that Y is contracting.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

import numpy as np

from .divergence import INF, DivergenceProfile
from .space import MetricGraph

CHUNK = 256


@dataclass(frozen=True)
class Pass:
    edge_jump: int
    centers: int


@dataclass(frozen=True)
class Witness:
    """Failure of one contracting condition, numbered as (1) Lipschitz, (2) near Y, (3) balls."""

    condition: int
    pair: tuple[int, int]
    observed: int
    allowed: Fraction
    center: Optional[int] = None
    radius: Optional[int] = None

    def describe(self, X: MetricGraph) -> str:
        u, v = (X.label(p) for p in self.pair)
        if self.condition == 3:
            return (f"ball of radius {self.radius} at {X.label(self.center)} maps onto a set of diameter "
                    f"{self.observed} > {self.allowed}, e.g. images {u} and {v}")
        if self.condition == 2:
            return f"{u} moves to {v}, distance {self.observed} > {self.allowed}"
        return f"points {u}, {v} have images {self.observed} apart, more than {self.allowed}"


ContractionResult = Union[Pass, Witness]


def closest_point_retraction(X: MetricGraph) -> np.ndarray:
    """Send each vertex to a nearest marked vertex, breaking ties by smallest index."""
    target = np.full(X.n, -1, dtype=np.int64)
    target[X.marked] = X.marked
    frontier = X.marked
    indptr, indices = X.adj.indptr, X.adj.indices
    while frontier.size:
        starts, ends = indptr[frontier], indptr[frontier + 1]
        counts = ends - starts
        nbrs = indices[np.concatenate([np.arange(s, e) for s, e in zip(starts, ends)])] if counts.sum() else np.empty(0, np.int64)
        srcs = np.repeat(target[frontier], counts)
        fresh = target[nbrs] == -1
        nbrs, srcs = nbrs[fresh], srcs[fresh]
        if not nbrs.size:
            break
        best = np.full(X.n, np.iinfo(np.int64).max, dtype=np.int64)
        np.minimum.at(best, nbrs, srcs)
        frontier = np.unique(nbrs)
        target[frontier] = best[frontier]
    if np.any(target < 0):
        raise ValueError("some vertices cannot reach Y")
    return target


def vertical_projection(X: MetricGraph) -> np.ndarray:
    """Grid retraction (x, y) -> (x, 0); needs the coordinates stored by ``grid_box``."""
    coords = X.meta["coords"]
    rows = int(coords[:, 1].max() - coords[:, 1].min()) + 1
    return coords[:, 0] * rows + X.meta["axis_row"]


def _as_array(X: MetricGraph, retraction) -> np.ndarray:
    if isinstance(retraction, Mapping):
        if X.labels is None:
            g = np.array([retraction[i] for i in range(X.n)], dtype=np.int64)
        else:
            pos = {lab: i for i, lab in enumerate(X.labels)}
            g = np.array([pos[retraction[lab]] for lab in X.labels], dtype=np.int64)
    else:
        g = np.asarray(retraction, dtype=np.int64)
    if g.shape != (X.n,):
        raise ValueError("retraction must be defined on every vertex")
    marked = np.zeros(X.n, dtype=bool)
    marked[X.marked] = True
    if not marked[g].all():
        raise ValueError("retraction must take values in Y")
    return g


def _image_distances(X: MetricGraph, targets: np.ndarray) -> np.ndarray:
    rows = []
    for start in range(0, targets.size, CHUNK):
        rows.append(X.distances_from(targets[start: start + CHUNK])[:, targets])
    return np.vstack(rows)


def contraction_test(
    X: MetricGraph,
    retraction: Union[Sequence[int], Mapping],
    A,
    D: int,
    conditions: Sequence[int] = (2, 1, 3),
) -> ContractionResult:
    """Check conditions (2), (1), (3) of (A, D)-contraction for one retraction.

    (2) every y in Y moves at most D;
    (1) d(g u, g v) <= D d(u, v) + D for all pairs;
    (3) for every x, g maps the closed ball of radius floor(A d(x, Y)) onto a set of diameter <= D.
    Conditions are checked in the order given by ``conditions``; the first
    failure is returned.
    """
    A = Fraction(A)
    if not 0 < A <= 1:
        raise ValueError("A must lie in (0, 1]")
    if D < 1:
        raise ValueError("D must be >= 1")
    if not set(conditions) <= {1, 2, 3}:
        raise ValueError("conditions are numbered 1, 2, 3")
    g = _as_array(X, retraction)
    targets, tpos = np.unique(g, return_inverse=True)
    dT = _image_distances(X, targets)
    checks = {1: _lipschitz, 2: _near_y, 3: _balls}
    jump = 0
    for c in conditions:
        found = checks[c](X, g, targets, tpos, dT, A, D)
        if isinstance(found, Witness):
            return found
        if c == 1:
            jump = found
    radii = np.floor(A.numerator * X.marked_distance / A.denominator)
    return Pass(jump, int(np.count_nonzero(radii >= 1)))


def _near_y(X, g, targets, tpos, dT, A, D):
    for start in range(0, X.marked.size, CHUNK):
        ys = X.marked[start: start + CHUNK]
        moved = X.distances_from(g[ys], limit=D)[np.arange(ys.size), ys]
        bad = np.flatnonzero(moved > D)
        if bad.size:
            y = int(ys[bad[0]])
            return Witness(2, (y, int(g[y])), int(X.distance(y, int(g[y]))), Fraction(D))
    return None


def _lipschitz(X, g, targets, tpos, dT, A, D):
    # unit edges first; a jump of at most D on every edge settles all pairs
    eu, ev = X.edges[:, 0], X.edges[:, 1]
    jumps = dT[tpos[eu], tpos[ev]] if eu.size else np.zeros(0)
    jump = int(jumps.max()) if jumps.size else 0
    if jump > 2 * D:
        k = int(np.argmax(jumps > 2 * D))
        return Witness(1, (int(eu[k]), int(ev[k])), int(jumps[k]), Fraction(2 * D))
    if jump > D:
        for start in range(0, X.n, CHUNK):
            src = np.arange(start, min(start + CHUNK, X.n))
            d = X.distances_from(src)
            img = dT[tpos[src][:, None], tpos[None, :]]
            viol = img > D * d + D
            if viol.any():
                i, j = np.argwhere(viol)[0]
                return Witness(1, (int(src[i]), int(j)), int(img[i, j]), Fraction(D) * int(d[i, j]) + D)
    return jump


def _balls(X, g, targets, tpos, dT, A, D):
    dY = X.marked_distance
    radii = np.floor(A.numerator * dY / A.denominator).astype(np.int64)
    centers = np.flatnonzero(radii >= 1)
    order = centers[np.argsort(radii[centers], kind="stable")]
    for start in range(0, order.size, CHUNK):
        src = order[start: start + CHUNK]
        R = radii[src]
        d = X.distances_from(src, limit=float(R.max()))
        for k, x in enumerate(src):
            ball = np.flatnonzero(d[k] <= R[k])
            img = np.unique(tpos[ball])
            sub = dT[np.ix_(img, img)]
            diam = int(sub.max())
            if diam > D:
                a, b = np.unravel_index(int(np.argmax(sub)), sub.shape)
                return Witness(3, (int(targets[img[a]]), int(targets[img[b]])), diam, Fraction(D),
                               center=int(x), radius=int(R[k]))
    return None


def quadratic_floor_violations(profile: DivergenceProfile, A, D: int) -> list[tuple]:
    """Entries with n >= 4D+2 and r > 8D whose finite sigma is below (A rho / 4D) r^2."""
    A = Fraction(A)
    out = []
    for rho, n, r, v in profile.rows():
        if n >= 4 * D + 2 and r > 8 * D and v != INF:
            floor = A * rho / (4 * D) * r * r
            if v < floor:
                out.append((rho, n, r, v, floor))
    return out


__all__ = [
    "Pass", "Witness", "closest_point_retraction", "vertical_projection", "contraction_test",
    "quadratic_floor_violations",
]
