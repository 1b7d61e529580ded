"""Graph-level convexity checks for right-angled Coxeter groups, with a metric lab."""

from .cfs import CfsVerdict, clique_join_factor, is_cfs, is_strongly_cfs
from .constructions import (
    ConstructionError, Embedding, behrstock_ladder, cfs_embed, distance3_set, isolated_square_fixture,
)
from .convexity import (
    is_finite_index_special, is_stable_special, is_strongly_quasiconvex_special,
    orthogonal_dichotomy_witness, square_closure,
)
from .graph import (
    GraphError, SimplicialGraph, Square, SquareGraph, VertexSubset, enumerate_squares, is_join,
    join_split, link, square_graph, star,
)
from .io import GraphFormatError, graph_to_dot, graph_to_json, load_graph, parse_graph

__version__ = "0.1.0"

__all__ = [
    "CfsVerdict", "ConstructionError", "Embedding", "GraphError", "GraphFormatError",
    "SimplicialGraph", "Square", "SquareGraph", "VertexSubset", "behrstock_ladder", "cfs_embed",
    "clique_join_factor", "distance3_set", "enumerate_squares", "graph_to_dot", "graph_to_json",
    "is_cfs", "is_finite_index_special", "is_join", "is_stable_special", "is_strongly_cfs",
    "is_strongly_quasiconvex_special", "isolated_square_fixture", "join_split", "link", "load_graph",
    "orthogonal_dichotomy_witness", "parse_graph", "square_closure", "square_graph", "star",
]
