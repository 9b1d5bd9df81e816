"""Tenseurs symétriques denses : contractions, constantes c_q, décompositions de Γ, bornes."""

from .bounds import (
    OddOrderAsymmetryError,
    double_vs_single_contraction_check,
    mixed_sum_bound,
    mixed_sum_terms,
    symgamma_contraction_bound,
    vg_contraction_bound,
)
from .constants import AdmissibilityError, check_admissible, cq
from .decomposition import (
    GammaDecomposition,
    gamma2_decomp,
    gamma3_decomp,
    gamma3_second_moment,
    third_moment,
)
from .hermite import sample_chaos, sample_multiple_integral
from .symmetric import (
    CapacityError,
    SymTensor,
    TensorError,
    contract,
    random_sym_tensor,
    sym_contract,
    symmetrize,
)

__all__ = [
    "AdmissibilityError",
    "CapacityError",
    "GammaDecomposition",
    "OddOrderAsymmetryError",
    "SymTensor",
    "TensorError",
    "check_admissible",
    "contract",
    "cq",
    "double_vs_single_contraction_check",
    "gamma2_decomp",
    "gamma3_decomp",
    "gamma3_second_moment",
    "mixed_sum_bound",
    "mixed_sum_terms",
    "random_sym_tensor",
    "sample_chaos",
    "sample_multiple_integral",
    "sym_contract",
    "symgamma_contraction_bound",
    "symmetrize",
    "third_moment",
    "vg_contraction_bound",
]
