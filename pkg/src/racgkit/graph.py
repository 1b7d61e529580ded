"""Finite simple graphs with a fixed vertex order.

Adjacency is stored as one integer bitmask per vertex, so subsets of
vertices are plain ints throughout the internals.  The public surface
speaks in vertex labels and :class:`VertexSubset`.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Union


class GraphError(ValueError):
    """Raised for malformed graphs or unknown vertices."""


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class SimplicialGraph:
    """An immutable finite simple graph on string labels.

    The order in which vertices are given is the vertex order used for
    canonical forms and for shortlex order on group words.
    """

    def __init__(self, vertices: Iterable[str], edges: Iterable[tuple[str, str]] = ()):
        verts = tuple(str(v) for v in vertices)
        index: dict[str, int] = {}
        for i, v in enumerate(verts):
            if v in index:
                raise GraphError(f"duplicate vertex {v!r}")
            index[v] = i
        nbr = [0] * len(verts)
        for e in edges:
            u, v = e
            if u not in index or v not in index:
                missing = u if u not in index else v
                raise GraphError(f"edge {u!r}-{v!r} has unknown endpoint {missing!r}")
            if u == v:
                raise GraphError(f"self-loop at {u!r}")
            i, j = index[u], index[v]
            if nbr[i] >> j & 1:
                raise GraphError(f"duplicate edge {u!r}-{v!r}")
            nbr[i] |= 1 << j
            nbr[j] |= 1 << i
        self._vertices = verts
        self._index = index
        self._nbr = tuple(nbr)

    @classmethod
    def from_masks(cls, vertices: Iterable[str], nbr: Iterable[int]) -> SimplicialGraph:
        """Build directly from adjacency bitmasks (trusted, used by generators)."""
        g = cls.__new__(cls)
        g._vertices = tuple(vertices)
        g._index = {v: i for i, v in enumerate(g._vertices)}
        g._nbr = tuple(nbr)
        return g

    # -- basic accessors -------------------------------------------------

    @property
    def vertices(self) -> tuple[str, ...]:
        return self._vertices

    @property
    def nbr_masks(self) -> tuple[int, ...]:
        return self._nbr

    @property
    def full_mask(self) -> int:
        return (1 << len(self._vertices)) - 1

    def __len__(self) -> int:
        return len(self._vertices)

    def __contains__(self, v: object) -> bool:
        return v in self._index

    def __iter__(self) -> Iterator[str]:
        return iter(self._vertices)

    def index(self, v: str) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v!r}") from None

    def mask(self, vs: Iterable[str]) -> int:
        m = 0
        for v in vs:
            m |= 1 << self.index(v)
        return m

    def labels(self, mask: int) -> tuple[str, ...]:
        return tuple(self._vertices[i] for i in iter_bits(mask))

    def adjacent(self, u: str, v: str) -> bool:
        return bool(self._nbr[self.index(u)] >> self.index(v) & 1)

    def neighbors(self, v: str) -> tuple[str, ...]:
        return self.labels(self._nbr[self.index(v)])

    def degree(self, v: str) -> int:
        return bin(self._nbr[self.index(v)]).count("1")

    @cached_property
    def edges(self) -> tuple[tuple[str, str], ...]:
        out = []
        for i, m in enumerate(self._nbr):
            for j in iter_bits(m >> (i + 1) << (i + 1)):
                out.append((self._vertices[i], self._vertices[j]))
        return tuple(out)

    def subset(self, vs: Union[Iterable[str], int]) -> VertexSubset:
        if isinstance(vs, int):
            if vs & ~self.full_mask:
                raise GraphError("mask has bits outside the vertex set")
            return VertexSubset(self, vs)
        return VertexSubset(self, self.mask(vs))

    def induced(self, vs: Union[Iterable[str], VertexSubset]) -> SimplicialGraph:
        """Induced subgraph, keeping the parent's vertex order."""
        m = as_mask(self, vs)
        idx = list(iter_bits(m))
        pos = {old: new for new, old in enumerate(idx)}
        nbr = []
        for old in idx:
            nm = 0
            for j in iter_bits(self._nbr[old] & m):
                nm |= 1 << pos[j]
            nbr.append(nm)
        return SimplicialGraph.from_masks((self._vertices[i] for i in idx), nbr)

    def with_edges(self, extra: Iterable[tuple[str, str]]) -> SimplicialGraph:
        return SimplicialGraph(self._vertices, list(self.edges) + list(extra))

    def relabel(self, mapping: dict[str, str]) -> SimplicialGraph:
        """Rename vertices; vertex order follows the old order."""
        return SimplicialGraph.from_masks((mapping.get(v, v) for v in self._vertices), self._nbr)

    # -- equality --------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialGraph):
            return NotImplemented
        return self._vertices == other._vertices and self._nbr == other._nbr

    def __hash__(self) -> int:
        return hash((self._vertices, self._nbr))

    def __repr__(self) -> str:
        return f"SimplicialGraph({len(self)} vertices, {len(self.edges)} edges)"

    # -- cached combinatorics ---------------------------------------------

    @cached_property
    def square_masks(self) -> tuple[tuple[int, int], ...]:
        """Induced 4-cycles as (diagonal1, diagonal2) bitmask pairs, canonical order."""
        nbr = self._nbr
        n = len(nbr)
        found = []
        for u in range(n):
            for w in iter_bits(~nbr[u] & ~((2 << u) - 1) & self.full_mask):
                common = nbr[u] & nbr[w]
                d1 = (1 << u) | (1 << w)
                for x in iter_bits(common):
                    # the second diagonal must sort after the first one
                    if x < u:
                        continue
                    for y in iter_bits(common & ~nbr[x] & ~((2 << x) - 1)):
                        if x == u and y <= w:
                            continue
                        found.append((d1, (1 << x) | (1 << y)))
        found.sort(key=lambda p: (_pair_key(p[0]), _pair_key(p[1])))
        return tuple(found)


def _pair_key(mask: int) -> tuple[int, int]:
    lo = (mask & -mask).bit_length() - 1
    hi = mask.bit_length() - 1
    return lo, hi


@dataclass(frozen=True)
class VertexSubset:
    """A subset of a parent graph's vertices."""

    graph: SimplicialGraph
    mask: int

    @property
    def members(self) -> tuple[str, ...]:
        return self.graph.labels(self.mask)

    def __iter__(self) -> Iterator[str]:
        return iter(self.members)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __contains__(self, v: object) -> bool:
        return v in self.graph and bool(self.mask >> self.graph.index(v) & 1)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, VertexSubset):
            return self.mask == other.mask and self.graph == other.graph
        if isinstance(other, (set, frozenset)):
            return set(self.members) == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.mask)

    def __le__(self, other: VertexSubset) -> bool:
        return self.mask & ~other.mask == 0

    def __repr__(self) -> str:
        return "{" + ",".join(self.members) + "}"


SubsetLike = Union[VertexSubset, Iterable[str]]


def as_mask(g: SimplicialGraph, s: SubsetLike) -> int:
    if isinstance(s, VertexSubset):
        if s.graph is not g and s.graph != g:
            raise GraphError("vertex subset belongs to a different graph")
        return s.mask
    if isinstance(s, str):
        s = [s]
    return g.mask(s)


# -- link, star, join -------------------------------------------------------


def link_mask(g: SimplicialGraph, mask: int) -> int:
    nbr = g.nbr_masks
    out = g.full_mask & ~mask
    for i in iter_bits(mask):
        out &= nbr[i]
    return out


def link(g: SimplicialGraph, s: SubsetLike) -> VertexSubset:
    """Vertices outside ``s`` adjacent to every vertex of ``s``."""
    m = as_mask(g, s)
    if not m:
        raise GraphError("link of empty set undefined")
    return VertexSubset(g, link_mask(g, m))


def star(g: SimplicialGraph, s: SubsetLike) -> VertexSubset:
    m = as_mask(g, s)
    if not m:
        raise GraphError("star of empty set undefined")
    return VertexSubset(g, link_mask(g, m) | m)


def complement_components(g: SimplicialGraph, mask: int) -> list[int]:
    """Connected components of the complement of the subgraph induced on ``mask``."""
    nbr = g.nbr_masks
    comps = []
    rest = mask
    while rest:
        low = rest & -rest
        comp = low
        frontier = low
        while frontier:
            new = 0
            for i in iter_bits(frontier):
                new |= mask & ~nbr[i]
            new &= ~comp
            comp |= new
            frontier = new
        comps.append(comp)
        rest &= ~comp
    return comps


def join_split_mask(g: SimplicialGraph, mask: int) -> tuple[int, int] | None:
    comps = complement_components(g, mask)
    if len(comps) < 2:
        return None
    return comps[0], mask & ~comps[0]


def join_split(g: SimplicialGraph, s: SubsetLike) -> tuple[VertexSubset, VertexSubset] | None:
    """Return ``(A, B)`` with every A-vertex adjacent to every B-vertex, or None.

    ``A`` is the complement component containing the first vertex of ``s``.
    """
    m = as_mask(g, s)
    if not m:
        raise GraphError("join test on empty set undefined")
    split = join_split_mask(g, m)
    if split is None:
        return None
    return VertexSubset(g, split[0]), VertexSubset(g, split[1])


def is_join(g: SimplicialGraph, s: SubsetLike) -> bool:
    return join_split(g, s) is not None


def is_clique_mask(g: SimplicialGraph, mask: int) -> bool:
    nbr = g.nbr_masks
    return all(mask & ~(nbr[i] | 1 << i) == 0 for i in iter_bits(mask))


# -- squares ------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Square:
    """An induced 4-cycle, stored by its two diagonals in canonical order."""

    diagonal1: tuple[str, str]
    diagonal2: tuple[str, str]

    @classmethod
    def from_masks(cls, g: SimplicialGraph, d1: int, d2: int) -> Square:
        a, b = sorted((g.labels(d1), g.labels(d2)), key=lambda p: (g.index(p[0]), g.index(p[1])))
        return cls(a, b)  # type: ignore[arg-type]

    @classmethod
    def of(cls, g: SimplicialGraph, d1: Iterable[str], d2: Iterable[str]) -> Square:
        m1, m2 = g.mask(d1), g.mask(d2)
        if bin(m1).count("1") != 2 or bin(m2).count("1") != 2 or m1 & m2:
            raise GraphError("a square needs two disjoint vertex pairs")
        return cls.from_masks(g, m1, m2)

    @property
    def vertices(self) -> tuple[str, str, str, str]:
        return (*self.diagonal1, *self.diagonal2)

    @property
    def diagonals(self) -> tuple[tuple[str, str], tuple[str, str]]:
        return self.diagonal1, self.diagonal2

    def __str__(self) -> str:
        return f"[{self.diagonal1[0]}{self.diagonal1[1]}|{self.diagonal2[0]}{self.diagonal2[1]}]"


def enumerate_squares(g: SimplicialGraph) -> tuple[Square, ...]:
    """All induced 4-cycles of ``g`` in canonical order."""
    return tuple(Square.from_masks(g, d1, d2) for d1, d2 in g.square_masks)


class SquareGraph:
    """The graph on induced 4-cycles; two are adjacent when they share a diagonal."""

    def __init__(self, g: SimplicialGraph, square_masks: tuple[tuple[int, int], ...]):
        self.graph = g
        self._masks = square_masks
        self.squares = tuple(Square.from_masks(g, a, b) for a, b in square_masks)
        by_diag: dict[int, list[int]] = {}
        for k, (a, b) in enumerate(square_masks):
            by_diag.setdefault(a, []).append(k)
            by_diag.setdefault(b, []).append(k)
        adj: list[set[int]] = [set() for _ in square_masks]
        for members in by_diag.values():
            for i in members:
                adj[i].update(members)
        for i, nb in enumerate(adj):
            nb.discard(i)
        self._adj = tuple(frozenset(a) for a in adj)

    def __len__(self) -> int:
        return len(self.squares)

    def neighbors(self, k: int) -> frozenset[int]:
        return self._adj[k]

    def adjacent(self, s: Square, t: Square) -> bool:
        return self.squares.index(t) in self._adj[self.squares.index(s)]

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((i, j) for i, nb in enumerate(self._adj) for j in sorted(nb) if i < j)

    def component_indices(self) -> list[list[int]]:
        """Connected components as sorted index lists, ordered by smallest member."""
        seen = [False] * len(self.squares)
        comps = []
        for start in range(len(self.squares)):
            if seen[start]:
                continue
            seen[start] = True
            comp = [start]
            queue = deque([start])
            while queue:
                k = queue.popleft()
                for j in self._adj[k]:
                    if not seen[j]:
                        seen[j] = True
                        comp.append(j)
                        queue.append(j)
            comps.append(sorted(comp))
        return comps

    def components(self) -> list[tuple[Square, ...]]:
        return [tuple(self.squares[k] for k in c) for c in self.component_indices()]

    def is_connected(self) -> bool:
        return len(self.squares) > 0 and len(self.component_indices()) == 1

    def support_mask(self, indices: Iterable[int]) -> int:
        m = 0
        for k in indices:
            a, b = self._masks[k]
            m |= a | b
        return m


def square_graph(g: SimplicialGraph) -> SquareGraph:
    return SquareGraph(g, g.square_masks)


# -- distances ----------------------------------------------------------------


def distance(g: SimplicialGraph, u: str, v: str) -> float:
    """BFS distance between two vertices; ``math.inf`` when disconnected."""
    src, dst = g.index(u), g.index(v)
    if src == dst:
        return 0
    nbr = g.nbr_masks
    seen = 1 << src
    frontier = 1 << src
    d = 0
    while frontier:
        d += 1
        nxt = 0
        for i in iter_bits(frontier):
            nxt |= nbr[i]
        nxt &= ~seen
        if nxt >> dst & 1:
            return d
        seen |= nxt
        frontier = nxt
    return math.inf
