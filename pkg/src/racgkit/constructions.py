"""Behrstock ladders, the embedding of any RACG into a CFS one, and fixtures."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import cfs, convexity
from .graph import GraphError, SimplicialGraph, Square, distance, enumerate_squares


class ConstructionError(ValueError):
    pass


def behrstock_ladder(n: int) -> SimplicialGraph:
    """Levels {a_i, b_i}, each level fully joined to the next, no edge inside a level."""
    if n < 1:
        raise ConstructionError("ladder needs n >= 1")
    verts = [f"a{i}" for i in range(1, n + 1)] + [f"b{i}" for i in range(1, n + 1)]
    edges = []
    for i in range(2, n + 1):
        for x, y in itertools.product("ab", repeat=2):
            edges.append((f"{x}{i - 1}", f"{y}{i}"))
    return SimplicialGraph(verts, edges)


def cycle_graph(n: int, prefix: str = "") -> SimplicialGraph:
    """n-cycle on a, b, c, ... (or prefix1..prefixn when a prefix is given)."""
    if n < 3:
        raise ConstructionError("a cycle needs n >= 3")
    names = [f"{prefix}{i + 1}" for i in range(n)] if prefix or n > 26 else [chr(97 + i) for i in range(n)]
    return SimplicialGraph(names, [(names[i], names[(i + 1) % n]) for i in range(n)])


def complete_graph(n: int) -> SimplicialGraph:
    if n < 1:
        raise ConstructionError("a clique needs n >= 1")
    names = [f"v{i + 1}" for i in range(n)]
    return SimplicialGraph(names, itertools.combinations(names, 2))


def ladder_size(g: SimplicialGraph) -> int:
    n = len(g) // 2
    if len(g) % 2 or g != behrstock_ladder(n):
        raise ConstructionError("graph is not a Behrstock ladder")
    return n


def distance3_set(ladder: SimplicialGraph, m: int) -> list[str]:
    """``a1, a4, a7, ...``: m ladder vertices pairwise at distance at least 3."""
    n = ladder_size(ladder)
    if m < 1:
        raise ConstructionError("need m >= 1")
    need = 3 * m - 2
    if n < need:
        raise ConstructionError(f"ladder too small: n={n}, need n >= {need}")
    chosen = [f"a{1 + 3 * k}" for k in range(m)]
    for u, v in itertools.combinations(chosen, 2):
        if distance(ladder, u, v) < 3:
            raise ConstructionError(f"{u} and {v} closer than 3")
    return chosen


@dataclass(frozen=True)
class Embedding:
    source: SimplicialGraph
    target: SimplicialGraph
    vertex_map: dict[str, str]

    @property
    def image(self) -> list[str]:
        return [self.vertex_map[v] for v in self.source.vertices]

    def is_induced(self) -> bool:
        f = self.vertex_map
        if len(set(f.values())) != len(f):
            return False
        return all(
            self.source.adjacent(u, v) == self.target.adjacent(f[u], f[v])
            for u, v in itertools.combinations(self.source.vertices, 2)
        )


def cfs_embed(gamma: SimplicialGraph) -> tuple[SimplicialGraph, Embedding]:
    """Glue ``gamma`` onto a well-spaced vertex set of a ladder.

    The result is CFS and contains ``gamma`` as an induced subgraph whose
    special subgroup is strongly quasiconvex of infinite index, and stable
    when ``gamma`` has no induced 4-cycle.  All of this is re-checked.
    """
    m = len(gamma)
    if m == 0:
        raise ConstructionError("gamma must be nonempty")
    n = max(2, 3 * m - 2)
    ladder = behrstock_ladder(n)
    spots = distance3_set(ladder, m)
    vmap = dict(zip(gamma.vertices, spots))
    omega = ladder.with_edges((vmap[u], vmap[v]) for u, v in gamma.edges)
    emb = Embedding(gamma, omega, vmap)

    image = emb.image
    checks = {
        "induced embedding": emb.is_induced(),
        "CFS ambient": bool(cfs.is_cfs(omega)),
        "strongly quasiconvex image": bool(convexity.is_strongly_quasiconvex_special(omega, image)),
        "infinite index image": not convexity.is_finite_index_special(omega, image),
    }
    if not gamma.square_masks:
        checks["stable image"] = convexity.is_stable_special(omega, image)
    failed = [k for k, ok in checks.items() if not ok]
    if failed:
        raise ConstructionError("embedding post-check failed: " + ", ".join(failed))
    return omega, emb


def isolated_square_fixture(
    n: int, u1: str, u2: str, u3: str, u4: str, strict: bool = False
) -> SimplicialGraph:
    """Ladder plus the 4-cycle u1-u2-u3-u4, forming a square isolated in the square graph.

    The new square must be induced and neither of its diagonals may be a
    diagonal of another square.  New edges between vertices at distance 2 or 3
    also remove or add other squares; with ``strict`` set that is rejected,
    so the square count grows by exactly one.
    """
    ladder = behrstock_ladder(n)
    quad = (u1, u2, u3, u4)
    for u in quad:
        if u not in ladder:
            raise ConstructionError(f"{u!r} is not a vertex of the ladder")
    if len(set(quad)) != 4:
        raise ConstructionError("the four vertices must be distinct")
    for u, v in itertools.combinations(quad, 2):
        if ladder.adjacent(u, v):
            raise ConstructionError(f"{u} and {v} are already adjacent")
    out = ladder.with_edges([(u1, u2), (u2, u3), (u3, u4), (u4, u1)])

    new = Square.of(out, (u1, u3), (u2, u4))
    before = set(enumerate_squares(ladder))
    after = set(enumerate_squares(out))
    lost = sorted(before - after)
    extra = sorted(after - before - {new})
    if new not in after:
        raise ConstructionError("u1..u4 do not form an induced 4-cycle")
    for diag in new.diagonals:
        for sq in sorted(after - {new}):
            if diag in sq.diagonals:
                raise ConstructionError(f"diagonal {diag} of the new square is shared with {sq}")
    if strict and lost:
        raise ConstructionError(f"ladder square destroyed: {lost[0]}")
    if strict and extra:
        raise ConstructionError(f"extra square created: {extra[0]}")
    return out
