"""Spiral paths in Z x Z with the l1 metric, and exact quasi-geodesic checks."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence, Union

import numpy as np

from .space import MetricGraph

CHUNK = 512


def spiral_constants(K, L) -> tuple[Fraction, Fraction]:
    """Quasi-geodesic constants (K', L') for spirals of slope N > 4K^2 built from (K, L) pieces.

    The upper estimate is d <= (K+1)|t-s| + 2L.  The lower one chains
    d >= |t2 - a|/(2K) - 3K^2 L with |t-s| <= 3|t2 - a| + L, giving
    d >= |t-s|/(6K) - (3K^2 L + L/(6K)).  Pairs on one or two consecutive
    pieces only need (K, 2L), which these constants dominate.
    """
    K, L = Fraction(K), Fraction(L)
    if K < 1 or L < 0:
        raise ValueError("need K >= 1 and L >= 0")
    k_out = max(K + 1, 6 * K)
    l_out = max(2 * L, 3 * K * K * L + L / (6 * K))
    return k_out, l_out


@dataclass(frozen=True)
class QgViolation:
    t: int
    s: int
    distance: int
    side: str  # "lower" or "upper"


@dataclass(frozen=True)
class QgPass:
    pairs: int


QgResult = Union[QgPass, QgViolation]


def quasigeodesic_check(path, lam, eps, metric: Optional[MetricGraph] = None) -> QgResult:
    """Check |t-s|/lam - eps <= d(p(t), p(s)) <= lam |t-s| + eps for all parameter pairs.

    ``path`` is sampled at unit arc length: either integer points of Z^k with
    the l1 metric, or vertex indices of ``metric``.  Arithmetic is exact.
    """
    lam, eps = Fraction(lam), Fraction(eps)
    if lam <= 0 or eps < 0:
        raise ValueError("need lam > 0 and eps >= 0")
    a, b = lam.numerator, lam.denominator
    c, e = eps.numerator, eps.denominator
    if metric is None:
        pts = np.asarray(path, dtype=np.int64)
        if pts.ndim == 1:
            pts = pts[:, None]
    else:
        verts = np.asarray(path, dtype=np.int64)
    m = len(path)
    idx = np.arange(m, dtype=np.int64)
    for start in range(0, m, CHUNK):
        rows = idx[start: start + CHUNK]
        if metric is None:
            d = np.abs(pts[rows, None, :] - pts[None, :, :]).sum(axis=2)
        else:
            raw = metric.distances_from(verts[rows])[:, verts]
            if np.isinf(raw).any():
                i, j = np.argwhere(np.isinf(raw))[0]
                return QgViolation(int(rows[i]), int(j), -1, "upper")
            d = raw.astype(np.int64)
        gap = np.abs(rows[:, None] - idx[None, :])
        low = a * e * d < b * e * gap - a * c
        high = b * e * d > a * e * gap + b * c
        bad = (low | high) & (idx[None, :] > rows[:, None])
        if bad.any():
            i, j = np.argwhere(bad)[0]
            side = "lower" if low[i, j] else "upper"
            return QgViolation(int(rows[i]), int(j), int(d[i, j]), side)
    return QgPass(m * (m - 1) // 2)


# --- spirals --------------------------------------------------------------------


@dataclass(frozen=True)
class SpiralSpec:
    """Alternating-axis concatenation of walks in the two factors of Z x Z.

    ``walks[i]`` is a sequence of +-1 steps taken along axis ``i % 2`` (or
    the opposite axis when ``first_axis`` is 1).
    """

    walks: tuple[tuple[int, ...], ...]
    slope: int
    K: Fraction
    L: Fraction
    first_axis: int = 0

    def axis(self, i: int) -> int:
        return (self.first_axis + i) % 2

    def separations(self) -> list[int]:
        return [abs(sum(w)) for w in self.walks]

    def path(self) -> list[tuple[int, int]]:
        p = [0, 0]
        out = [tuple(p)]
        for i, w in enumerate(self.walks):
            ax = self.axis(i)
            for step in w:
                p[ax] += step
                out.append(tuple(p))
        return out  # type: ignore[return-value]

    def problems(self) -> list[str]:
        """Reasons this is not a spiral meeting the quasi-geodesic hypotheses."""
        out = []
        if not self.walks:
            return ["no segments"]
        if any(not w or any(s not in (1, -1) for s in w) for w in self.walks):
            out.append("segments must be nonempty unit-step walks")
        if self.slope <= 4 * self.K * self.K:
            out.append(f"slope {self.slope} is not above 4K^2")
        sep = self.separations()
        if sep[0] < 3 * self.K * self.K * self.L + 1:
            out.append(f"first segment endpoints {sep[0]} apart, need >= {3 * self.K * self.K * self.L + 1}")
        for i in range(len(sep) - 2):
            if sep[i + 1] < self.slope * sep[i]:
                out.append(f"slope fails between segments {i + 1} and {i + 2}")
        for i, w in enumerate(self.walks):
            if isinstance(quasigeodesic_check(np.cumsum((0,) + w), self.K, self.L), QgViolation):
                out.append(f"segment {i + 1} is not a ({self.K},{self.L})-quasi-geodesic")
        return out


def _walk(length: int, backtrack: int, sign: int) -> tuple[int, ...]:
    """Net displacement ``length`` with one excursion back by ``backtrack`` in the middle."""
    if backtrack == 0 or length < 2:
        return (sign,) * length
    head = length // 2
    return (sign,) * (head + backtrack) + (-sign,) * backtrack + (sign,) * (length - head)


def generate_spirals(
    K: int,
    L: int,
    max_segments: int = 6,
    max_length: int = 200,
    seed: int = 0,
    random_signs: int = 2,
) -> Iterator[SpiralSpec]:
    """Slope 4K^2+1 spirals in Z^2 with segment separations at most ``max_length``.

    First separations run over the minimum, the minimum plus one and plus
    three; each later one is N or N+1 times the previous.  The last segment
    is free and takes the values 1, the previous separation, and
    ``max_length``.  Sign patterns cover the turning spiral, the staircase,
    and a few seeded random ones.  When L >= 2 a second copy of every walk
    backtracks by L // 2 in its middle.
    """
    K_, L_ = Fraction(K), Fraction(L)
    N = 4 * K * K + 1
    base = 3 * K * K * L + 1
    rng = random.Random(seed)
    backtracks = sorted({0, L // 2})
    seen = set()
    for first in (base, base + 1, base + 3):
        if first > max_length:
            continue
        for count in range(1, max_segments + 1):
            for ratios in itertools.product((N, N + 1), repeat=max(0, count - 2)):
                seps = [first]
                for q in ratios:
                    seps.append(seps[-1] * q)
                if any(s > max_length for s in seps):
                    continue
                lasts = [None] if count == 1 else sorted({1, seps[-1], max_length})
                for last in lasts:
                    full = seps + ([last] if last is not None else [])
                    full = full[:count]
                    patterns = [
                        tuple((1 if (i // 2) % 2 == 0 else -1) for i in range(count)),
                        tuple(1 for _ in range(count)),
                    ]
                    patterns += [tuple(rng.choice((1, -1)) for _ in range(count)) for _ in range(random_signs)]
                    for signs in patterns:
                        for bt in backtracks:
                            walks = tuple(_walk(s, bt, sg) for s, sg in zip(full, signs))
                            if walks in seen:
                                continue
                            seen.add(walks)
                            yield SpiralSpec(walks, N, K_, L_)


# --- the square family ----------------------------------------------------------


def three_sides_path(n: int) -> list[tuple[int, int]]:
    """Up n, across n, down n: three sides of a square resting on the x-axis."""
    if n < 1:
        raise ValueError("side must be >= 1")
    pts = [(0, y) for y in range(n + 1)]
    pts += [(x, n) for x in range(1, n + 1)]
    pts += [(n, y) for y in range(n - 1, -1, -1)]
    return pts


def escaping_square(bound: int) -> tuple[int, list[tuple[int, int]]]:
    """A (3,0)-quasi-geodesic with endpoints on the x-axis reaching beyond ``bound`` from it."""
    n = max(1, int(bound) + 1)
    return n, three_sides_path(n)


def min_multiplicative_constant(path: Sequence[tuple[int, ...]]) -> Fraction:
    """Smallest lam with |t-s|/lam <= d(p(t), p(s)) over all pairs, for an l1 path at unit speed."""
    pts = np.asarray(path, dtype=np.int64)
    best = Fraction(1)
    for i in range(len(pts) - 1):
        d = np.abs(pts[i + 1:] - pts[i]).sum(axis=1)
        gap = np.arange(1, len(pts) - i)
        if (d == 0).any():
            raise ValueError("path revisits a point")
        k = int(np.argmax(gap / d))
        best = max(best, Fraction(int(gap[k]), int(d[k])))
    return best
