"""Méthode de Stein : constantes explicites, résidus de caractérisation, solveur de l'équation."""

from ..distributions import QuadratureError
from .characterization import (
    SmoothFunction,
    as_smooth,
    laplace_identity,
    normal_residual,
    residual_symgamma,
    residual_vg,
)
from .constants import SteinConstants, SteinHypothesisError, stein_constants
from .solver import (
    CollocationError,
    SteinSolution,
    cheb_matrix,
    constant_bound_check,
    solve_stein,
    solve_stein_batch,
)

__all__ = [
    "CollocationError",
    "QuadratureError",
    "SmoothFunction",
    "SteinConstants",
    "SteinHypothesisError",
    "SteinSolution",
    "as_smooth",
    "cheb_matrix",
    "laplace_identity",
    "constant_bound_check",
    "normal_residual",
    "residual_symgamma",
    "residual_vg",
    "solve_stein",
    "solve_stein_batch",
    "stein_constants",
]
