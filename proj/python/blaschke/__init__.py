"""Convex polyhedra prescribed by face normals and areas."""

from ._core import (
    BlaschkeError,
    Herisson,
    Mesh,
    blaschke_sum,
    brunn_minkowski,
    cli,
    construct,
    exponent,
    kneser_suss,
    minkowski_sum,
    monotonicity,
    spherical_residual,
    sum_comparison,
)

__all__ = [
    "BlaschkeError",
    "Herisson",
    "Mesh",
    "blaschke_sum",
    "brunn_minkowski",
    "cli",
    "construct",
    "exponent",
    "kneser_suss",
    "minkowski_sum",
    "monotonicity",
    "spherical_residual",
    "sum_comparison",
]
