"""Exact divergence, contraction and quasi-geodesic computations on unit metric graphs."""

from .contraction import (
    Pass, Witness, closest_point_retraction, contraction_test, quadratic_floor_violations,
    vertical_projection,
)
from .divergence import (
    INF, BoundRow, BoundsReport, DivergenceProfile, LogLogFit, check_appendix_bounds, divergence,
    divergence_profile, fit_loglog,
)
from .space import (
    MetricGraph, MetricGraphError, ModelLayout, binary_tree, ceil_pow, comb_tree, grid_box,
    identity_fn, model_space, power_of_two, square,
)
from .spiral import (
    QgPass, QgViolation, SpiralSpec, escaping_square, generate_spirals, min_multiplicative_constant,
    quasigeodesic_check, spiral_constants, three_sides_path,
)

__all__ = [
    "INF", "BoundRow", "BoundsReport", "DivergenceProfile", "LogLogFit", "MetricGraph",
    "MetricGraphError", "ModelLayout", "Pass", "QgPass", "QgViolation", "SpiralSpec", "Witness",
    "binary_tree", "ceil_pow", "check_appendix_bounds", "closest_point_retraction", "comb_tree",
    "contraction_test", "divergence", "divergence_profile", "escaping_square", "fit_loglog",
    "generate_spirals", "grid_box", "identity_fn", "min_multiplicative_constant", "model_space",
    "power_of_two", "quadratic_floor_violations", "quasigeodesic_check", "spiral_constants", "square",
    "three_sides_path", "vertical_projection",
]
