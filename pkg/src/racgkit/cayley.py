"""Word problem, shortlex normal forms and Cayley balls for right-angled Coxeter groups.

Words are handled internally as tuples of vertex indices; the vertex order
of the defining graph is the alphabet order for shortlex.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence, Union

from .graph import GraphError, SimplicialGraph, SubsetLike, VertexSubset, as_mask

DEFAULT_BUDGET = 2_000_000

Word = tuple[int, ...]


class BudgetExceeded(RuntimeError):
    def __init__(self, budget: int, radius: int):
        super().__init__(f"element budget {budget} exceeded while building radius {radius}")
        self.budget = budget
        self.radius = radius


def element_budget(override: Optional[int] = None) -> int:
    if override is not None:
        return override
    env = os.environ.get("RACG_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def _commutes(nbr: Sequence[int], s: int, t: int) -> bool:
    return (nbr[s] >> t) & 1 == 1


def mul_letter(nbr: Sequence[int], w: Word, s: int) -> Word:
    """Shortlex normal form of ``w * s`` for ``w`` already in normal form."""
    for j in range(len(w) - 1, -1, -1):
        t = w[j]
        if t == s:
            return w[:j] + w[j + 1:]
        if not _commutes(nbr, s, t):
            break
    # s cannot cancel; it may slide left past the commuting tail, stopping
    # before the last letter it does not commute with.
    p = 0
    for j in range(len(w) - 1, -1, -1):
        if not _commutes(nbr, s, w[j]):
            p = j + 1
            break
    for j in range(p, len(w)):
        if s < w[j]:
            return w[:j] + (s,) + w[j:]
    return w + (s,)


def reduce_word(nbr: Sequence[int], letters: Iterable[int]) -> Word:
    w: Word = ()
    for s in letters:
        w = mul_letter(nbr, w, s)
    return w


@dataclass(frozen=True)
class GroupElement:
    graph: SimplicialGraph = field(compare=False, repr=False)
    letters: Word

    @property
    def word(self) -> tuple[str, ...]:
        return tuple(self.graph.vertices[i] for i in self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return " ".join(self.word) if self.letters else "e"

    def __mul__(self, other: GroupElement) -> GroupElement:
        nbr = self.graph.nbr_masks
        w = self.letters
        for s in other.letters:
            w = mul_letter(nbr, w, s)
        return GroupElement(self.graph, w)

    def inverse(self) -> GroupElement:
        return GroupElement(self.graph, reduce_word(self.graph.nbr_masks, reversed(self.letters)))


def identity(g: SimplicialGraph) -> GroupElement:
    return GroupElement(g, ())


def _letter(g: SimplicialGraph, s: Union[str, int]) -> int:
    if isinstance(s, int):
        if not 0 <= s < len(g):
            raise GraphError(f"unknown generator index {s}")
        return s
    try:
        return g.index(s)
    except (KeyError, GraphError):
        raise GraphError(f"unknown generator {s!r}") from None


def parse_word(g: SimplicialGraph, word: Union[str, Sequence[str]]) -> list[int]:
    """Letters from a space separated string or a sequence of labels."""
    tokens = word.split() if isinstance(word, str) else list(word)
    return [_letter(g, t) for t in tokens]


def multiply(x: GroupElement, s: Union[str, int]) -> GroupElement:
    return GroupElement(x.graph, mul_letter(x.graph.nbr_masks, x.letters, _letter(x.graph, s)))


def normal_form(g: SimplicialGraph, word: Union[str, Sequence[str]]) -> GroupElement:
    return GroupElement(g, reduce_word(g.nbr_masks, parse_word(g, word)))


def word_length(g: SimplicialGraph, word: Union[str, Sequence[str]]) -> int:
    return len(normal_form(g, word))


def word_distance(x: GroupElement, y: GroupElement) -> int:
    return len(x.inverse() * y)


# --- descents and cosets -------------------------------------------------


def left_descents(nbr: Sequence[int], w: Word) -> list[int]:
    """Positions of letters that can be commuted to the front of ``w``."""
    out = []
    blocked = 0
    for j, s in enumerate(w):
        if not (blocked >> s) & 1:
            out.append(j)
        # letters after position j must commute with everything kept before them
        blocked |= ~nbr[s] | (1 << s)
    return out


def right_descents(nbr: Sequence[int], w: Word) -> list[int]:
    out = []
    blocked = 0
    for j in range(len(w) - 1, -1, -1):
        s = w[j]
        if not (blocked >> s) & 1:
            out.append(j)
        blocked |= ~nbr[s] | (1 << s)
    return sorted(out)


def coset_distance(nbr: Sequence[int], w: Word, delta_mask: int) -> int:
    """Word distance from ``w`` to the special subgroup on ``delta_mask``.

    Peels off left descents lying in delta until none remain; what is left is
    the minimal representative of the coset ``G_delta * w``.
    """
    w = tuple(w)
    while True:
        for j in left_descents(nbr, w):
            if (delta_mask >> w[j]) & 1:
                w = w[:j] + w[j + 1:]
                break
        else:
            return len(w)


def geodesic_prefixes(nbr: Sequence[int], w: Word) -> set[Word]:
    """All elements lying on some geodesic from the identity to ``w``."""
    seen = {w}
    stack = [w]
    while stack:
        u = stack.pop()
        for j in right_descents(nbr, u):
            p = reduce_word(nbr, u[:j] + u[j + 1:])
            if p not in seen:
                seen.add(p)
                stack.append(p)
    return seen


# --- balls ----------------------------------------------------------------


class Ball:
    """Elements of word length at most ``radius``, with generator edges."""

    def __init__(self, g: SimplicialGraph, radius: int, budget: Optional[int] = None,
                 generators: Optional[SubsetLike] = None):
        if radius < 0:
            raise ValueError("radius must be >= 0")
        self.graph = g
        self.radius = radius
        self.budget = element_budget(budget)
        gens_mask = g.full_mask if generators is None else as_mask(g, generators)
        self.generators = [i for i in range(len(g)) if (gens_mask >> i) & 1]
        nbr = g.nbr_masks
        elements: list[Word] = [()]
        index: dict[Word, int] = {(): 0}
        spheres = [1]
        frontier: list[Word] = [()]
        for r in range(1, radius + 1):
            nxt: list[Word] = []
            for w in frontier:
                for s in self.generators:
                    u = mul_letter(nbr, w, s)
                    if len(u) > len(w) and u not in index:
                        index[u] = len(elements)
                        elements.append(u)
                        nxt.append(u)
                        if len(elements) > self.budget:
                            raise BudgetExceeded(self.budget, r)
            spheres.append(len(nxt))
            frontier = nxt
        self.elements = elements
        self.index = index
        self.sphere_sizes = spheres

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, w: object) -> bool:
        return w in self.index

    def edges(self) -> Iterator[tuple[int, int, int]]:
        """(i, j, s) with elements[i] * s = elements[j] and i < j."""
        nbr = self.graph.nbr_masks
        for i, w in enumerate(self.elements):
            for s in self.generators:
                u = mul_letter(nbr, w, s)
                if len(u) > len(w):
                    j = self.index.get(u)
                    if j is not None:
                        yield i, j, s

    def label(self, i: int) -> str:
        w = self.elements[i]
        return " ".join(self.graph.vertices[s] for s in w) if w else "e"

    def stats(self) -> dict:
        return {
            "radius": self.radius,
            "elements": len(self.elements),
            "sphere_sizes": list(self.sphere_sizes),
        }

    def edge_list(self) -> list[tuple[str, str, str]]:
        return [(self.label(i), self.label(j), self.graph.vertices[s]) for i, j, s in self.edges()]


def ball(g: SimplicialGraph, radius: int, budget: Optional[int] = None) -> Ball:
    return Ball(g, radius, budget)


# --- quasiconvexity probe -------------------------------------------------


@dataclass(frozen=True)
class ProbePass:
    pairs: int
    geodesic_points: int
    max_distance: int


@dataclass(frozen=True)
class Violation:
    x: GroupElement
    y: GroupElement
    v: GroupElement
    distance: int

    def certificate(self) -> dict:
        dxv = word_distance(self.x, self.v)
        dvy = word_distance(self.v, self.y)
        dxy = word_distance(self.x, self.y)
        return {"d(x,v)": dxv, "d(v,y)": dvy, "d(x,y)": dxy, "d(v,G_delta)": self.distance}


ProbeResult = Union[ProbePass, Violation]


def geodesic_quasiconvexity_probe(
    g: SimplicialGraph, delta: SubsetLike, radius: int, D: int, budget: Optional[int] = None
) -> ProbeResult:
    """Look for a geodesic between points of G_delta in the R-ball that leaves the D-neighbourhood.

    By left-invariance only the pairs ``(e, z)`` matter, with ``z`` running
    over G_delta within distance 2R; every such ``z`` is realised by a pair
    in the R-ball.  Distances to G_delta are exact coset distances, so no
    ball-truncation guesswork is involved.
    """
    m = as_mask(g, delta)
    nbr = g.nbr_masks
    sub = Ball(g, 2 * radius, budget, generators=VertexSubset(g, m))
    cap = element_budget(budget)
    points = 0
    worst = 0
    for z in sub.elements:
        prefixes = geodesic_prefixes(nbr, z)
        points += len(prefixes)
        if points > cap:
            raise BudgetExceeded(cap, radius)
        for p in sorted(prefixes, key=lambda w: (len(w), w)):
            d = coset_distance(nbr, p, m)
            worst = max(worst, d)
            if d > D:
                half = len(z) // 2
                x = GroupElement(g, reduce_word(nbr, reversed(z[:half])))
                y = GroupElement(g, z[half:])
                return Violation(x, y, x * GroupElement(g, p), d)
    return ProbePass(len(sub), points, worst)
