"""Estimation Monte Carlo : échantillons, Wasserstein 1D, k-statistiques, sommes homogènes."""

from .homogeneous import BASES, CoefficientError, HomogeneousCoeff, base_draws, homogeneous_sum
from .kstats import k_statistics, kstat_values
from .multivariate import multivariate_bound
from .streams import SampleError, SampleSet, TooFewSamples
from .wasserstein import equalize, wasserstein_1d, wasserstein_to_normal, wasserstein_to_vg

__all__ = [
    "BASES",
    "CoefficientError",
    "HomogeneousCoeff",
    "SampleError",
    "SampleSet",
    "TooFewSamples",
    "base_draws",
    "equalize",
    "homogeneous_sum",
    "k_statistics",
    "kstat_values",
    "multivariate_bound",
    "wasserstein_1d",
    "wasserstein_to_normal",
    "wasserstein_to_vg",
]
