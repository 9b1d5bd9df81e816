"""Second chaos de Wiener : noyaux matriciels, cumulants par traces, opérateurs Γ, bornes."""

from .bounds import (
    char_conditions,
    contraction_diag2,
    eigen_diag,
    gamma_bound2,
    gamma_l1_bound,
    gauss_bound2,
    gauss_l1_bound,
    six_moment_check,
    vg_bound2,
    vg_interior,
    vg_interior_contraction,
    vg_l1_bound,
)
from .kernel import (
    Kernel2,
    KernelError,
    SpectralKernel,
    as_kernel,
    exact_symgamma_kernel,
    random_kernel,
)
from .second import (
    chaos_moments,
    cov_squares,
    cross_gamma_path,
    cumulant2,
    cumulant_set,
    gamma_path,
    mc_estimate,
    norm_df_squared,
    sample_chaos2,
)

__all__ = [
    "Kernel2",
    "KernelError",
    "SpectralKernel",
    "as_kernel",
    "chaos_moments",
    "char_conditions",
    "contraction_diag2",
    "cov_squares",
    "cross_gamma_path",
    "cumulant2",
    "cumulant_set",
    "eigen_diag",
    "exact_symgamma_kernel",
    "gamma_bound2",
    "gamma_l1_bound",
    "gamma_path",
    "gauss_bound2",
    "gauss_l1_bound",
    "mc_estimate",
    "norm_df_squared",
    "random_kernel",
    "vg_l1_bound",
    "sample_chaos2",
    "six_moment_check",
    "vg_bound2",
    "vg_interior",
    "vg_interior_contraction",
]
