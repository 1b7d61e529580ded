"""Domains of the hierarchical structure on a RACG, at the identity coset.

A domain is a nonempty induced subgraph.  Relations between domains at
other cosets reduce to these by the group action, so nothing coset-level
is stored.  The quotient by star-cosets is not taken; every check here is
invariant under it.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Optional

from .cfs import universal_mask
from .graph import (
    GraphError, SimplicialGraph, SubsetLike, VertexSubset, as_mask, is_clique_mask, iter_bits,
    join_split_mask, link_mask,
)


class Relation(enum.Enum):
    EQUAL = "equal"
    NESTED = "nested"
    ORTHOGONAL = "orthogonal"
    TRANSVERSE = "transverse"


@dataclass(frozen=True)
class Domain:
    lam: VertexSubset

    def __post_init__(self):
        if not self.lam.mask:
            raise GraphError("a domain needs a nonempty vertex set")

    @classmethod
    def of(cls, g: SimplicialGraph, vs: SubsetLike) -> Domain:
        return cls(VertexSubset(g, as_mask(g, vs)))

    @property
    def graph(self) -> SimplicialGraph:
        return self.lam.graph

    @property
    def mask(self) -> int:
        return self.lam.mask


def _same_graph(d1: Domain, d2: Domain) -> None:
    if d1.graph is not d2.graph and d1.graph != d2.graph:
        raise GraphError("domains live over different graphs")


def is_nested(d1: Domain, d2: Domain) -> bool:
    """``d1`` nests into ``d2``."""
    _same_graph(d1, d2)
    return d1.mask & ~d2.mask == 0


def is_orthogonal(d1: Domain, d2: Domain) -> bool:
    _same_graph(d1, d2)
    return d1.mask & ~link_mask(d2.graph, d2.mask) == 0


def relation(d1: Domain, d2: Domain) -> Relation:
    _same_graph(d1, d2)
    if d1.mask == d2.mask:
        return Relation.EQUAL
    if is_orthogonal(d1, d2):
        return Relation.ORTHOGONAL
    if is_nested(d1, d2) or is_nested(d2, d1):
        return Relation.NESTED
    return Relation.TRANSVERSE


def is_unbounded(d: Domain) -> bool:
    """The coned-off space of the domain has infinite diameter."""
    g = d.graph
    return not is_clique_mask(g, d.mask) and join_split_mask(g, d.mask) is None


def s_star_witness(d: Domain) -> Optional[tuple[str, str]]:
    """A non-adjacent pair in the link of a non-join domain with at least two vertices."""
    g, m = d.graph, d.mask
    if bin(m).count("1") < 2 or join_split_mask(g, m) is not None:
        return None
    lk = link_mask(g, m)
    nbr = g.nbr_masks
    for u in iter_bits(lk):
        rest = lk & ~nbr[u] & ~((2 << u) - 1)
        if rest:
            w = (rest & -rest).bit_length() - 1
            return g.vertices[u], g.vertices[w]
    return None


def in_s_star(d: Domain) -> bool:
    return s_star_witness(d) is not None


class AtomGraph:
    """Diagonals of squares; two are adjacent when together they span a square."""

    def __init__(self, g: SimplicialGraph):
        self.graph = g
        atoms: set[int] = set()
        adj: dict[int, set[int]] = {}
        for d1, d2 in g.square_masks:
            atoms.update((d1, d2))
            adj.setdefault(d1, set()).add(d2)
            adj.setdefault(d2, set()).add(d1)
        order = sorted(atoms, key=lambda m: ((m & -m).bit_length(), m.bit_length()))
        self._masks = tuple(order)
        self._pos = {m: k for k, m in enumerate(order)}
        self._adj = tuple(frozenset(self._pos[x] for x in adj[m]) for m in order)

    @property
    def atoms(self) -> tuple[tuple[str, str], ...]:
        return tuple(self.graph.labels(m) for m in self._masks)  # type: ignore[misc]

    def __len__(self) -> int:
        return len(self._masks)

    def adjacent(self, a: tuple[str, str], b: tuple[str, str]) -> bool:
        ia, ib = self._pos[self.graph.mask(a)], self._pos[self.graph.mask(b)]
        return ib in self._adj[ia]

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((i, j) for i, nb in enumerate(self._adj) for j in sorted(nb) if i < j)

    def components(self) -> list[tuple[tuple[str, str], ...]]:
        seen = [False] * len(self._masks)
        out = []
        for s in range(len(self._masks)):
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            queue = deque([s])
            while queue:
                k = queue.popleft()
                for j in self._adj[k]:
                    if not seen[j]:
                        seen[j] = True
                        comp.append(j)
                        queue.append(j)
            out.append(tuple(self.atoms[k] for k in sorted(comp)))
        return out

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def to_dot(self, name: str = "atoms") -> str:
        lines = [f'graph "{name}" {{']
        for k, (a, b) in enumerate(self.atoms):
            lines.append(f'  t{k} [label="{a},{b}"];')
        for i, j in self.edges:
            lines.append(f"  t{i} -- t{j};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def atom_graph(g: SimplicialGraph) -> AtomGraph:
    return AtomGraph(g)


class ChainStatus(enum.Enum):
    APPLIES = "applies"
    FAILS_COVER = "fails-cover"
    FAILS_CONNECTIVITY = "fails-connectivity"


@dataclass(frozen=True)
class ChainVerdict:
    status: ChainStatus
    vertex: Optional[str] = None
    components: tuple[tuple[tuple[str, str], ...], ...] = ()

    def __bool__(self) -> bool:
        return self.status is ChainStatus.APPLIES


def orthogonality_chain_check(g: SimplicialGraph) -> ChainVerdict:
    """Graph-level check that the unbounded-product domains form one orthogonality class.

    After dropping universal vertices, every remaining vertex must lie in a
    square and any two square diagonals must be joined by a chain of
    diagonals, consecutive ones spanning a square.
    """
    omega = g.full_mask & ~universal_mask(g)
    covered = 0
    for d1, d2 in g.square_masks:
        covered |= d1 | d2
    missing = omega & ~covered
    if missing:
        return ChainVerdict(ChainStatus.FAILS_COVER, vertex=g.vertices[(missing & -missing).bit_length() - 1])
    comps = atom_graph(g).components()
    if len(comps) != 1:
        return ChainVerdict(ChainStatus.FAILS_CONNECTIVITY, components=tuple(comps))
    return ChainVerdict(ChainStatus.APPLIES)
