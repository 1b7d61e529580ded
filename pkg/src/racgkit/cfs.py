"""Classification of defining graphs that are constructed from squares."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

from .graph import SimplicialGraph, Square, SquareGraph, VertexSubset, iter_bits


class CfsFailure(enum.Enum):
    OMEGA_EMPTY = "omega-empty"
    UNCOVERED_VERTEX = "uncovered-vertex"
    SQUARE_GRAPH_DISCONNECTED = "square-graph-disconnected"


@dataclass(frozen=True)
class CfsCertificate:
    clique_factor: VertexSubset
    omega: VertexSubset
    component: frozenset[Square]
    coverage: dict[str, Square] = field(hash=False)


@dataclass(frozen=True)
class CfsVerdict:
    holds: bool
    reason: Optional[CfsFailure] = None
    uncovered: Optional[str] = None
    certificate: Optional[CfsCertificate] = None
    components: int = 0

    def __bool__(self) -> bool:
        return self.holds

    def to_dict(self) -> dict:
        out: dict = {"holds": self.holds, "reason": self.reason.value if self.reason else None}
        if self.uncovered is not None:
            out["uncovered_vertex"] = self.uncovered
        if self.certificate is not None:
            c = self.certificate
            out["certificate"] = {
                "clique_factor": list(c.clique_factor),
                "omega": list(c.omega),
                "component": [str(s) for s in sorted(c.component)],
                "coverage": {v: str(s) for v, s in c.coverage.items()},
            }
        return out


def universal_mask(g: SimplicialGraph) -> int:
    full = g.full_mask
    return sum(1 << i for i, m in enumerate(g.nbr_masks) if m | (1 << i) == full)


def clique_join_factor(g: SimplicialGraph) -> tuple[VertexSubset, VertexSubset]:
    """Split off the universal vertices: returns ``(omega, k)`` with g = omega * k."""
    k = universal_mask(g)
    return VertexSubset(g, g.full_mask & ~k), VertexSubset(g, k)


def _omega_square_graph(g: SimplicialGraph) -> tuple[VertexSubset, VertexSubset, SimplicialGraph, SquareGraph]:
    omega, k = clique_join_factor(g)
    sub = g.induced(omega)
    return omega, k, sub, SquareGraph(sub, sub.square_masks)


def _classify(g: SimplicialGraph) -> tuple[CfsVerdict, Optional[SquareGraph]]:
    omega, k, sub, sg = _omega_square_graph(g)
    if not omega.mask:
        return CfsVerdict(False, CfsFailure.OMEGA_EMPTY), None
    full = sub.full_mask
    comps = sg.component_indices()
    best: Optional[list[int]] = None
    best_support = 0
    for comp in comps:
        support = sg.support_mask(comp)
        if support == full:
            best, best_support = comp, support
            break
        if bin(support).count("1") > bin(best_support).count("1"):
            best, best_support = comp, support
    if best is None or best_support != full:
        any_support = sg.support_mask(range(len(sg)))
        missing = full & ~any_support if full & ~any_support else full & ~best_support
        first = sub.vertices[next(iter_bits(missing))]
        return CfsVerdict(False, CfsFailure.UNCOVERED_VERTEX, uncovered=first, components=len(comps)), sg

    coverage: dict[str, Square] = {}
    for idx in best:
        sq = sg.squares[idx]
        for v in sq.vertices:
            coverage.setdefault(v, sq)
    coverage = {v: coverage[v] for v in sub.vertices}
    cert = CfsCertificate(k, omega, frozenset(sg.squares[i] for i in best), coverage)
    return CfsVerdict(True, certificate=cert, components=len(comps)), sg


def is_cfs(g: SimplicialGraph) -> CfsVerdict:
    """Some component of the square graph of omega touches every omega-vertex."""
    return _classify(g)[0]


def is_strongly_cfs(g: SimplicialGraph) -> CfsVerdict:
    """Constructed from squares, with a connected square graph of omega."""
    verdict, sg = _classify(g)
    if not verdict:
        return verdict
    if verdict.components != 1:
        return CfsVerdict(
            False, CfsFailure.SQUARE_GRAPH_DISCONNECTED,
            certificate=verdict.certificate, components=verdict.components,
        )
    return verdict


def covering_component(g: SimplicialGraph) -> tuple[SquareGraph, list[int]]:
    """The square graph of omega and the indices of a covering component (empty if none)."""
    verdict, sg = _classify(g)
    if sg is None:
        _, _, _, sg = _omega_square_graph(g)
    if not verdict:
        return sg, []
    comp = verdict.certificate.component  # type: ignore[union-attr]
    return sg, [i for i, s in enumerate(sg.squares) if s in comp]
