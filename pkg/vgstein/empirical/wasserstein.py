"""Distance de Wasserstein 1D par couplage des statistiques d'ordre."""

from __future__ import annotations

import math

import numpy as np
from scipy import stats

from ..distributions import VGParams, vg_quantile
from ..observability import get_logger
from .streams import SampleError, SampleSet

logger = get_logger("empirical.wasserstein")


def equalize(s1: SampleSet, s2: SampleSet) -> tuple[SampleSet, SampleSet]:
    """Tronque l'échantillon le plus long ; la taille d'origine va dans meta["trimmed_from"]."""
    if s1.size == s2.size:
        return s1, s2
    n = min(s1.size, s2.size)
    logger.warning("unequal sample sizes trimmed", left=s1.size, right=s2.size, kept=n)
    return s1.head(n, "trimmed_from"), s2.head(n, "trimmed_from")


def _mean_abs(a: np.ndarray, b: np.ndarray) -> float:
    return math.fsum(np.abs(a - b)) / a.size


def wasserstein_1d(s1: SampleSet, s2: SampleSet) -> float:
    """Moyenne des |x_(i) − y_(i)| ; exacte pour deux lois empiriques de même taille."""
    a, b = equalize(s1, s2)
    return _mean_abs(np.sort(a.values), np.sort(b.values))


def _midpoints(n: int) -> np.ndarray:
    return (np.arange(1, n + 1) - 0.5) / n


def wasserstein_to_vg(s: SampleSet, p: VGParams) -> float:
    """Couplage par quantiles contre la loi VG : moyenne |x_(i) − F⁻¹((i − ½)/n)|."""
    if s.size == 0:
        raise SampleError("empty sample set")
    q = np.asarray(vg_quantile(p, _midpoints(s.size)), dtype=float)
    return _mean_abs(np.sort(s.values), q)


def wasserstein_to_normal(s: SampleSet, variance: float = 1.0) -> float:
    """Même couplage contre N(0, variance)."""
    if variance <= 0:
        raise SampleError(f"variance must be > 0, got {variance}")
    q = stats.norm.ppf(_midpoints(s.size), scale=math.sqrt(variance))
    return _mean_abs(np.sort(s.values), q)
