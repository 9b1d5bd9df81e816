"""
k-statistiques : estimateurs sans biais des cumulants κ₁…κ₆.

Avec P_r = Σ(x_i − x̄)^r et (n)_k = n(n−1)…(n−k+1), chaque k_j est une
somme Σ_k c_k · (produit de P)/(n)_k. Les coefficients c_k proviennent du
développement de κ_j en moments bruts, des sommes augmentées
[a₁, …, a_k]/(n)_k et de leur expression en sommes de puissances, évaluées
en P₁ = 0 (invariance par translation).
"""

from __future__ import annotations

import math

import numpy as np

from ..distributions import CumulantSet
from ..observability import get_logger
from ..rng import chunk_sizes
from .streams import SampleSet, TooFewSamples

logger = get_logger("empirical.kstats")

MIN_SAMPLES = 7

# (puissances de P) -> {k : c_k}
_TERMS: dict[int, list[tuple[tuple[int, ...], dict[int, int]]]] = {
    2: [((2,), {1: 1, 2: 1})],
    3: [((3,), {1: 1, 2: 3, 3: 4})],
    4: [
        ((4,), {1: 1, 2: 7, 3: 24, 4: 36}),
        ((2, 2), {2: -3, 3: -12, 4: -18}),
    ],
    5: [
        ((5,), {1: 1, 2: 15, 3: 100, 4: 360, 5: 576}),
        ((3, 2), {2: -10, 3: -80, 4: -300, 5: -480}),
    ],
    6: [
        ((6,), {1: 1, 2: 31, 3: 360, 4: 2340, 5: 8640, 6: 14400}),
        ((4, 2), {2: -15, 3: -240, 4: -1710, 5: -6480, 6: -10800}),
        ((3, 3), {2: -10, 3: -120, 4: -780, 5: -2880, 6: -4800}),
        ((2, 2, 2), {3: 30, 4: 270, 5: 1080, 6: 1800}),
    ],
}


def _falling(n: int, k: int) -> float:
    return float(math.prod(range(n - k + 1, n + 1)))


def kstat_values(x: np.ndarray, up_to: int = 6) -> list[float]:
    """k₁…k_{up_to} d'un tableau 1D (n ≥ up_to + 1)."""
    x = np.asarray(x, dtype=float).ravel()
    n = x.size
    dev = x - math.fsum(x) / n
    powers = {r: math.fsum(dev**r) for r in range(2, 7)}
    out = [math.fsum(x) / n]
    for j in range(2, up_to + 1):
        total = 0.0
        for parts, coefs in _TERMS[j]:
            product = math.prod(powers[r] for r in parts)
            total += product * math.fsum(c / _falling(n, k) for k, c in coefs.items())
        out.append(total)
    return out


def k_statistics(s: SampleSet, up_to: int = 6, batches: int = 50) -> CumulantSet:
    """
    k-statistiques jusqu'à l'ordre ``up_to`` (les ordres au-delà valent nan)
    et erreurs standard par moyennes de lots : écart-type des k_j calculés
    sur ``batches`` lots contigus, divisé par √batches.
    """
    if not 1 <= up_to <= 6:
        raise ValueError(f"up_to must be in 1..6, got {up_to}")
    if s.size < MIN_SAMPLES:
        raise TooFewSamples(f"k_statistics needs at least {MIN_SAMPLES} samples, got {s.size}")
    kappa = kstat_values(s.values, up_to)

    batches = min(batches, s.size // MIN_SAMPLES)
    if batches >= 2:
        bounds = np.cumsum([0, *chunk_sizes(s.size, batches)])
        per_batch = np.array(
            [kstat_values(s.values[a:b], up_to) for a, b in zip(bounds[:-1], bounds[1:])]
        )
        stderr = list(per_batch.std(axis=0, ddof=1) / math.sqrt(batches))
    else:
        stderr = [math.inf] * up_to
    pad = [math.nan] * (6 - up_to)
    logger.debug("k-statistics", n=s.size, batches=batches)
    return CumulantSet(tuple(kappa + pad), tuple(stderr + pad))
