"""Loi Variance-Gamma : densité, cumulants, échantillonnage, cas particuliers."""

from .bessel import BesselRangeError, bessel_k, bessel_kve, log_bessel_kve
from .cumulants import CumulantSet
from .special_cases import (
    CONSTRUCTORS,
    gamma_difference,
    gamma_limit_cumulants,
    gamma_limit_sequence,
    gauss_limit_sequence,
    laplace,
    product_normals,
    special_case,
    sym_gamma,
)
from .variance_gamma import (
    DomainError,
    ParameterError,
    PoleAtLocation,
    QuadratureError,
    UnsupportedLocation,
    VGParams,
    density_at_location,
    laplace_cdf,
    laplace_density,
    symgamma_density,
    vg_cdf,
    vg_cumulants,
    vg_density,
    vg_expect,
    vg_mean,
    vg_moments,
    vg_quantile,
    vg_sample,
    vg_tail_bounds,
    vg_variance,
)

__all__ = [
    "BesselRangeError",
    "CONSTRUCTORS",
    "CumulantSet",
    "DomainError",
    "ParameterError",
    "PoleAtLocation",
    "QuadratureError",
    "UnsupportedLocation",
    "VGParams",
    "bessel_k",
    "bessel_kve",
    "density_at_location",
    "gamma_difference",
    "gamma_limit_cumulants",
    "gamma_limit_sequence",
    "gauss_limit_sequence",
    "laplace",
    "laplace_cdf",
    "laplace_density",
    "log_bessel_kve",
    "product_normals",
    "special_case",
    "sym_gamma",
    "symgamma_density",
    "vg_cdf",
    "vg_cumulants",
    "vg_density",
    "vg_expect",
    "vg_mean",
    "vg_moments",
    "vg_quantile",
    "vg_sample",
    "vg_tail_bounds",
    "vg_variance",
]
