"""Stability of D^alpha x = a x(t) + b x(t - tau) - b x(t - 2 tau)."""

from ._core import (
    FddeError,
    alpha_double_star,
    alpha_star,
    boundary_point,
    branch_interval,
    branch_intersection,
    char_residual,
    classify,
    m1_poly,
    mittag_leffler,
    newton_root,
    roots,
    sample_branch,
    scale,
    simulate,
    stability_at,
    t1_slope,
    tangent_slope,
)

__all__ = [
    "FddeError",
    "alpha_double_star",
    "alpha_star",
    "boundary_point",
    "branch_interval",
    "branch_intersection",
    "char_residual",
    "classify",
    "m1_poly",
    "mittag_leffler",
    "newton_root",
    "roots",
    "sample_branch",
    "scale",
    "simulate",
    "stability_at",
    "t1_slope",
    "tangent_slope",
]
