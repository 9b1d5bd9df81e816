"""
Calcul exact sur le second chaos.

    κ_p(F)       = 2^{p−1}(p−1)! Tr(A^p)
    Γ_1(F)(z)    = zᵀAz − Tr A              (la valeur de F)
    Γ_j(F)(z)    = 2^{j−1} zᵀA^j z,  j ≥ 2
    ‖DF‖²(z)     = 4‖Az‖²
    ⟨DF, −DL⁻¹G⟩ = 2 zᵀABz                  (F = I₂(A), G = I₂(B))
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..distributions.cumulants import CumulantSet
from ..observability import get_logger
from ..rng import SeedLike, batch_mean_stderr, chunked_draws
from .kernel import Kernel2, KernelError, SpectralKernel

logger = get_logger("chaos.second")

MAX_GAMMA_ORDER = 6


# ── Cumulants ─────────────────────────────────────────────────────────────────


def cumulant2(a: Kernel2 | SpectralKernel, p: int) -> float:
    """κ_p(I₂(f)) à partir de la trace de A^p ; κ₁ = 0."""
    if not 1 <= p <= 6:
        raise KernelError(f"cumulant order must be in 1..6, got {p}")
    if p == 1:
        return 0.0
    return 2 ** (p - 1) * math.factorial(p - 1) * a.trace_power(p)


def cumulant_set(a: Kernel2 | SpectralKernel) -> CumulantSet:
    return CumulantSet(tuple(cumulant2(a, p) for p in range(1, 7)))


def chaos_moments(a: Kernel2 | SpectralKernel) -> tuple[float, ...]:
    """Moments m₁…m₆ de I₂(f) par conversion cumulants → moments."""
    return cumulant_set(a).to_moments()


# ── Opérateurs Γ trajectoriels ────────────────────────────────────────────────


def _quadratic(z: np.ndarray, m: np.ndarray) -> np.ndarray:
    return np.einsum("...i,ij,...j->...", z, m, z)


def _coords(a: Kernel2, z: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=float)
    if z.shape[-1] != a.dim:
        raise KernelError(f"coordinates have dimension {z.shape[-1]}, kernel has {a.dim}")
    return z


def gamma_path(a: Kernel2, z: np.ndarray, j: int) -> float | np.ndarray:
    """Γ_j(I₂(f)) évalué en z (vecteur de taille d ou lot (n, d))."""
    if not 1 <= j <= MAX_GAMMA_ORDER:
        raise KernelError(f"gamma order must be in 1..{MAX_GAMMA_ORDER}, got {j}")
    z = _coords(a, z)
    if j == 1:
        out = _quadratic(z, a.entries) - np.trace(a.entries)
    else:
        out = 2 ** (j - 1) * _quadratic(z, a.power(j))
    return float(out) if np.ndim(out) == 0 else out


def norm_df_squared(a: Kernel2, z: np.ndarray) -> float | np.ndarray:
    """‖DF‖² = 4‖Az‖²."""
    z = _coords(a, z)
    az = z @ a.entries
    out = 4.0 * np.sum(az * az, axis=-1)
    return float(out) if np.ndim(out) == 0 else out


def cross_gamma_path(a: Kernel2, b: Kernel2, z: np.ndarray) -> float | np.ndarray:
    """⟨DF, −DL⁻¹G⟩ = 2 zᵀABz, de moyenne 2Tr(AB) = E[FG]."""
    a.check_same_dim(b)
    z = _coords(a, z)
    out = 2.0 * np.einsum("...i,ij,...j->...", z, a.entries @ b.entries, z)
    return float(out) if np.ndim(out) == 0 else out


def cov_squares(a: Kernel2, b: Kernel2) -> float:
    """
    Cov(I₂(A)², I₂(B)²) = κ(F, F, G, G) + 2 E[FG]²
                        = 32 Tr(A²B²) + 16 Tr(ABAB) + 2 (2 Tr AB)².
    """
    a.check_same_dim(b)
    A, B = a.entries, b.entries
    ab = A @ B
    return float(
        32.0 * np.trace(A @ A @ B @ B) + 16.0 * np.trace(ab @ ab) + 2.0 * (2.0 * np.trace(ab)) ** 2
    )


# ── Échantillonnage ───────────────────────────────────────────────────────────


@dataclass(frozen=True)
class _SpectralDraw:
    eigenvalues: tuple[float, ...]

    def __call__(self, rng: np.random.Generator, n: int) -> np.ndarray:
        lam = np.asarray(self.eigenvalues)
        z = rng.standard_normal((n, lam.size))
        return (z * z - 1.0) @ lam


def sample_chaos2(
    a: Kernel2 | SpectralKernel,
    n: int,
    seed: SeedLike,
    *,
    chunks: int = 8,
    workers: int = 1,
) -> np.ndarray:
    """Tirages Σ_j λ_j (Z_j² − 1), de même loi que zᵀAz − Tr A."""
    if n < 1:
        raise KernelError(f"sample_chaos2: n must be >= 1, got {n}")
    spectrum = a if isinstance(a, SpectralKernel) else a.spectral()
    return chunked_draws(_SpectralDraw(spectrum.eigenvalues), n, seed, chunks=chunks, workers=workers)


@dataclass(frozen=True)
class _IntegrandDraw:
    integrand: Callable[[np.ndarray], np.ndarray]
    dim: int

    def __call__(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return np.asarray(self.integrand(rng.standard_normal((n, self.dim))), dtype=float)


def mc_estimate(
    integrand: Callable[[np.ndarray], np.ndarray],
    dim: int,
    n_mc: int,
    seed: SeedLike,
    *,
    chunks: int = 8,
    workers: int = 1,
    batches: int = 50,
) -> tuple[float, float]:
    """
    Moyenne Monte Carlo d'une fonctionnelle de z ~ N(0, I_d) et son erreur
    standard par moyennes de lots. ``integrand`` reçoit un lot (n, d).
    """
    values = chunked_draws(_IntegrandDraw(integrand, dim), n_mc, seed, chunks=chunks, workers=workers)
    mean, se = batch_mean_stderr(values, batches)
    logger.debug("monte carlo estimate", n=n_mc, mean=mean, se=se)
    return mean, se

