"""Strong quasiconvexity, stability and finite index for special subgroups.

A special subgroup G_delta is strongly quasiconvex exactly when delta,
containing one diagonal of an induced 4-cycle, contains the whole cycle.
Hyperbolicity of G_delta uses Moussong's criterion (no induced 4-cycle in
delta), which is standard Coxeter group theory rather than anything proved
here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .graph import (
    SimplicialGraph, Square, SubsetLike, VertexSubset, as_mask, is_clique_mask, iter_bits, link_mask,
)


@dataclass(frozen=True)
class SqcVerdict:
    strongly_quasiconvex: bool
    violating_square: Optional[Square] = None
    violating_pair: Optional[tuple[str, str]] = None

    def __bool__(self) -> bool:
        return self.strongly_quasiconvex


@dataclass(frozen=True)
class Counterexample:
    """Orthogonal domains where delta projects onto ``lam`` but not onto ``lam_prime``."""

    lam: VertexSubset
    lam_prime: VertexSubset


def _sqc_scan(g: SimplicialGraph, m: int) -> Optional[tuple[int, int]]:
    for d1, d2 in g.square_masks:
        if d1 & m == d1:
            if d2 & m != d2:
                return d1, d2
        elif d2 & m == d2:
            return d2, d1
    return None


def is_strongly_quasiconvex_special(g: SimplicialGraph, delta: SubsetLike) -> SqcVerdict:
    m = as_mask(g, delta)
    bad = _sqc_scan(g, m)
    if bad is None:
        return SqcVerdict(True)
    inside, _ = bad
    sq = Square.from_masks(g, *bad)
    pair = g.labels(inside)
    return SqcVerdict(False, sq, (pair[0], pair[1]))


def has_square_mask(g: SimplicialGraph, m: int) -> bool:
    return any((d1 | d2) & ~m == 0 for d1, d2 in g.square_masks)


def is_stable_special(g: SimplicialGraph, delta: SubsetLike) -> bool:
    m = as_mask(g, delta)
    return _sqc_scan(g, m) is None and not has_square_mask(g, m)


def is_finite_index_special(g: SimplicialGraph, delta: SubsetLike) -> bool:
    """The complement of delta is a clique joined to delta, so G = G_delta x finite."""
    m = as_mask(g, delta)
    rest = g.full_mask & ~m
    if not is_clique_mask(g, rest):
        return False
    nbr = g.nbr_masks
    return all(m & ~nbr[i] == 0 for i in iter_bits(rest))


def orthogonal_dichotomy_witness(g: SimplicialGraph, delta: SubsetLike) -> Optional[Counterexample]:
    """Search pair-sized orthogonal domains breaking the projection dichotomy.

    Returns None when no non-adjacent pair inside delta has, in its link,
    a non-adjacent pair that escapes delta.
    """
    m = as_mask(g, delta)
    nbr = g.nbr_masks
    for s in iter_bits(m):
        for t in iter_bits(m & ~nbr[s] & ~((2 << s) - 1)):
            lam = (1 << s) | (1 << t)
            lk = link_mask(g, lam)
            for u in iter_bits(lk):
                for w in iter_bits(lk & ~nbr[u] & ~((2 << u) - 1)):
                    lam_prime = (1 << u) | (1 << w)
                    # lam lies in link(lam_prime) automatically for pairs
                    if lam_prime & ~m:
                        return Counterexample(VertexSubset(g, lam), VertexSubset(g, lam_prime))
    return None


def square_closure(g: SimplicialGraph, delta: SubsetLike) -> VertexSubset:
    """Smallest superset of delta that satisfies the square condition."""
    m = as_mask(g, delta)
    while True:
        bad = _sqc_scan(g, m)
        if bad is None:
            return VertexSubset(g, m)
        m |= bad[0] | bad[1]
