"""Lower relative divergence on unit metric graphs, computed exactly by BFS."""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

import numpy as np
from scipy.sparse.csgraph import connected_components, dijkstra

from .space import IntFunction, MetricGraph, model_space

Value = Union[int, float]
INF = math.inf
CHUNK = 128


def _as_rho(rho) -> Fraction:
    q = Fraction(rho) if not isinstance(rho, float) else Fraction(rho).limit_denominator(10**6)
    if not 0 < q <= 1:
        raise ValueError(f"rho must lie in (0, 1], got {rho}")
    return q


def divergence(X: MetricGraph, rho, n: int, r: int) -> Value:
    """sigma^n_rho(r): shortest detour between far-apart points of the r-sphere around Y.

    Admissible pairs are points at distance exactly ``r`` from Y, at least
    ``n*r`` apart, joined by a path that never enters the open
    ``rho*r``-neighbourhood of Y.  The detour length is measured inside
    that complement.  Returns ``inf`` when no pair is admissible.
    """
    q = _as_rho(rho)
    if n < 2:
        raise ValueError("n must be >= 2")
    if r < 1:
        raise ValueError("r must be >= 1")
    dY = X.marked_distance
    sphere = np.flatnonzero(dY == r)
    if sphere.size < 2:
        return INF
    keep = dY >= math.ceil(q * r)
    outside = X.restricted(keep)
    _, comp = connected_components(outside, directed=False)
    far = n * r

    best = INF
    groups: dict[int, list[int]] = {}
    for v in sphere:
        groups.setdefault(int(comp[v]), []).append(int(v))
    for members in groups.values():
        if len(members) < 2:
            continue
        pts = np.asarray(members)
        for start in range(0, pts.size, CHUNK):
            src = pts[start: start + CHUNK]
            near = dijkstra(X.adj, directed=False, indices=src, unweighted=True, limit=far - 1)[:, pts]
            ok = np.isinf(near)
            if not ok.any():
                continue
            rows = np.flatnonzero(ok.any(axis=1))
            lim = best if best < INF else np.inf
            detour = dijkstra(outside, directed=False, indices=src[rows], unweighted=True, limit=lim)[:, pts]
            cand = np.where(ok[rows], detour, np.inf)
            m = cand.min()
            if m < best:
                best = m
    return int(best) if best < INF else INF


@dataclass
class DivergenceProfile:
    """sigma values keyed by (rho, n, r)."""

    entries: dict[tuple[Fraction, int, int], Value] = field(default_factory=dict)

    def __getitem__(self, key) -> Value:
        rho, n, r = key
        return self.entries[(_as_rho(rho), n, r)]

    def __len__(self) -> int:
        return len(self.entries)

    def rows(self) -> list[tuple[Fraction, int, int, Value]]:
        return [(rho, n, r, v) for (rho, n, r), v in sorted(self.entries.items())]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["rho", "n", "r", "sigma"])
        for rho, n, r, v in self.rows():
            w.writerow([str(rho), n, r, "inf" if v == INF else v])
        return buf.getvalue()

    def invariant_problems(self) -> list[str]:
        """Entries breaking the floor sigma >= n*r - 2r or monotonicity in rho."""
        out = []
        for (rho, n, r), v in sorted(self.entries.items()):
            if v != INF and v < n * r - 2 * r:
                out.append(f"sigma({rho},{n},{r}) = {v} < {n * r - 2 * r}")
        by_nr: dict[tuple[int, int], list[tuple[Fraction, Value]]] = {}
        for (rho, n, r), v in self.entries.items():
            by_nr.setdefault((n, r), []).append((rho, v))
        for (n, r), vals in sorted(by_nr.items()):
            vals.sort()
            for (r1, v1), (r2, v2) in zip(vals, vals[1:]):
                if v1 > v2:
                    out.append(f"sigma not monotone in rho at n={n}, r={r}: {r1}->{v1}, {r2}->{v2}")
        return out


def divergence_profile(
    X: MetricGraph,
    rhos: Iterable,
    ns: Iterable[int],
    rs: Iterable[int],
    threads: int = 1,
) -> DivergenceProfile:
    keys = [(_as_rho(rho), n, r) for rho in rhos for n in ns for r in rs]
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            vals = list(pool.map(lambda k: divergence(X, *k), keys))
    else:
        vals = [divergence(X, *k) for k in keys]
    return DivergenceProfile(dict(zip(keys, vals)))


# --- bounds for the arc model -------------------------------------------------


@dataclass(frozen=True)
class BoundRow:
    r: int
    lower: int
    sigma: Value
    upper: int
    slack: int
    certified: bool

    @property
    def ok(self) -> bool:
        return self.certified and self.lower - self.slack <= self.sigma <= self.upper + self.slack

    @property
    def margins(self) -> tuple[float, float]:
        return self.sigma - self.lower, self.upper - self.sigma


@dataclass
class BoundsReport:
    n: int
    rho: Fraction
    i_max: int
    vertices: int
    rows: list[BoundRow]

    @property
    def ok(self) -> bool:
        return all(row.ok for row in self.rows)

    def failures(self) -> list[BoundRow]:
        return [row for row in self.rows if not row.ok]


def check_appendix_bounds(
    f: IntFunction,
    r_range: Sequence[int],
    n: int,
    rho=1,
    slack: Optional[int] = None,
    vertex_budget: int = 2_000_000,
) -> BoundsReport:
    """Compare sigma on the arc model of ``f`` against f(r) - 2r and f((n+3)r).

    The arc model is truncated at the smallest ``i_max`` for which every
    computed value is provably exact: no arc beyond ``i_max`` can beat
    f(i_max + 1) - 2r, so a value at or below that is the true infimum.
    A row is only marked certified when that holds.
    """
    if n < 3:
        raise ValueError("n must be >= 3")
    q = _as_rho(rho)
    slack = 2 * n + 8 if slack is None else slack
    rs = list(r_range)
    r_max = max(rs)
    i_max = max(1, (n - 2) * r_max + 1)
    while f(i_max) < i_max:
        i_max += 1
    while True:
        size = i_max * (i_max + 1) // 2 + sum(f(i) for i in range(1, i_max + 1))
        X = model_space(f, i_max)
        sig = {r: divergence(X, q, n, r) for r in rs}
        cert = {r: sig[r] != INF and sig[r] <= f(i_max + 1) - 2 * r for r in rs}
        grown = i_max + 1
        next_size = size + grown + f(grown)
        if all(cert.values()) or next_size > vertex_budget:
            break
        i_max = grown
    rows = [BoundRow(r, f(r) - 2 * r, sig[r], f((n + 3) * r), slack, cert[r]) for r in rs]
    return BoundsReport(n, q, i_max, len(X), rows)


@dataclass(frozen=True)
class LogLogFit:
    slope: float
    intercept: float
    residual: float


def fit_loglog(rs: Sequence[int], sigmas: Sequence[Value]) -> LogLogFit:
    """Least squares line through (log r, log sigma)."""
    x = np.log(np.asarray(rs, dtype=float))
    y = np.log(np.asarray(sigmas, dtype=float))
    if not np.all(np.isfinite(y)):
        raise ValueError("cannot fit through infinite or zero sigma values")
    coef, res, *_ = np.polyfit(x, y, 1, full=True)
    residual = float(res[0]) if len(res) else 0.0
    return LogLogFit(float(coef[0]), float(coef[1]), residual)
