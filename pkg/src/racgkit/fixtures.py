"""Named, deterministic fixtures with a provenance note each.

Names may carry one integer parameter after a colon, e.g. ``ladder:13``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Union

from . import constructions as cons
from .graph import SimplicialGraph
from .metric_lab import space


@dataclass(frozen=True)
class Fixture:
    name: str
    kind: str  # "graph" or "metric"
    provenance: str
    build: Callable[[Optional[int]], object]
    default: Optional[int] = None


def _embed(g: SimplicialGraph) -> SimplicialGraph:
    return cons.cfs_embed(g)[0]


class FixtureRegistry:
    def __init__(self) -> None:
        self._items: dict[str, Fixture] = {}

    def register(self, fx: Fixture) -> None:
        if fx.name in self._items:
            raise ValueError(f"fixture {fx.name!r} registered twice")
        self._items[fx.name] = fx

    def names(self) -> list[str]:
        return sorted(self._items)

    def entry(self, name: str) -> tuple[Fixture, Optional[int]]:
        base, _, arg = name.partition(":")
        if base not in self._items:
            raise KeyError(f"unknown fixture {base!r}; known: {', '.join(self.names())}")
        fx = self._items[base]
        if arg:
            try:
                param: Optional[int] = int(arg)
            except ValueError:
                raise KeyError(f"fixture parameter must be an integer, got {arg!r}") from None
        else:
            param = fx.default
        return fx, param

    def get(self, name: str) -> Union[SimplicialGraph, space.MetricGraph]:
        fx, param = self.entry(name)
        return fx.build(param)  # type: ignore[return-value]

    def provenance(self, name: str) -> str:
        return self.entry(name)[0].provenance


def default_registry() -> FixtureRegistry:
    reg = FixtureRegistry()
    g = "graph"
    m = "metric"
    reg.register(Fixture("ladder", g, "Behrstock ladder; strongly CFS for every n >= 2 (figure of the ladder family)",
                         lambda n: cons.behrstock_ladder(n), 13))
    reg.register(Fixture("cycle", g, "n-cycle; C4 is the single square, C5 is hyperbolic and has no square",
                         lambda n: cons.cycle_graph(n), 5))
    reg.register(Fixture("c4", g, "4-cycle: D_inf x D_inf", lambda _: cons.cycle_graph(4)))
    reg.register(Fixture("c5", g, "5-cycle: hyperbolic, not CFS", lambda _: cons.cycle_graph(5)))
    reg.register(Fixture("clique", g, "complete graph: finite group, never CFS", lambda n: cons.complete_graph(n), 4))
    reg.register(Fixture("isolated-square", g,
                         "ladder with a glued 4-cycle b1-a3-a6-b9 whose square shares no diagonal; CFS, not strongly",
                         lambda n: cons.isolated_square_fixture(n, "b1", "a3", "a6", "b9"), 13))
    reg.register(Fixture("embed-c4", g, "derived: C4 glued into a ladder at pairwise distance 3 (Gamma_3 row)",
                         lambda _: _embed(cons.cycle_graph(4))))
    reg.register(Fixture("embed-c5", g, "derived: C5 glued into a ladder at pairwise distance 3 (Gamma_2 row)",
                         lambda _: _embed(cons.cycle_graph(5))))
    reg.register(Fixture("grid", m, "derived: Z^2 box with the x-axis marked; width parameter, height 60",
                         lambda w: space.grid_box(w, 60), 200))
    reg.register(Fixture("comb", m, "tree: marked spine with teeth of the given length; closest point map contracts",
                         lambda t: space.comb_tree(20, t), 24))
    reg.register(Fixture("binary-tree", m, "tree: complete binary tree, marked leaf-to-leaf geodesic",
                         lambda d: space.binary_tree(d), 8))
    reg.register(Fixture("model-i1.5", m, "arc model with arcs of length ceil(i^(3/2)); strongly quasiconvex ray, "
                         "not contracting", lambda i: space.model_space(space.ceil_pow(3, 2), i), 40))
    reg.register(Fixture("model-i2", m, "derived: arc model with arcs of length i^2",
                         lambda i: space.model_space(space.square, i), 30))
    reg.register(Fixture("model-2i", m, "derived: arc model with arcs of length 2^i",
                         lambda i: space.model_space(space.power_of_two, i), 12))
    return reg
