"""
Fonctionnelles de borne sur le second chaos.

Toutes les bornes sont exprimées par les cumulants κ₂…κ₆ de F = I₂(f),
c'est-à-dire par des traces de puissances de A. Les constantes C₁, C₂ valent 1
sauf demande explicite dans le cas symétrique à r/2 entier.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..distributions import UnsupportedLocation, VGParams, sym_gamma, vg_moments
from ..observability import get_logger
from ..reports import BoundReport
from ..rng import SeedLike
from .kernel import Kernel2, SpectralKernel
from .second import chaos_moments, cumulant2, mc_estimate

logger = get_logger("chaos.bounds")

NEGATIVE_TOL = 1e-9
EIGEN_TOL = 1e-9


def _centred_target(target: VGParams, op: str) -> None:
    if target.mu != 0.0:
        raise UnsupportedLocation(f"{op}: target must have mu = 0, got mu={target.mu}")


def _kappas(a: Kernel2 | SpectralKernel) -> list[float]:
    return [0.0, 0.0] + [cumulant2(a, p) for p in range(2, 7)]


def _clamp(report: BoundReport, interior: float) -> float:
    if interior < -NEGATIVE_TOL:
        report.flag("interior_negative")
        logger.warning("negative interior clamped", interior=interior, kind=report.kind)
    return math.sqrt(max(interior, 0.0))


# ── Cible Variance-Gamma ──────────────────────────────────────────────────────


def vg_interior(a: Kernel2 | SpectralKernel, target: VGParams) -> float:
    """E[(Γ₃ − 2θΓ₂ − σ²(F + rθ))²] écrit comme polynôme en κ₂…κ₆."""
    k = _kappas(a)
    r, t, s2 = target.r, target.theta, target.sigma**2
    return (
        k[6] / 120.0
        - (t / 6.0) * k[5]
        + (2.0 * t * t - s2) * k[4] / 3.0
        + (2.0 - r) * t * s2 * k[3]
        + 0.25 * k[3] ** 2
        - 2.0 * t * k[2] * k[3]
        + (s2 * s2 + 4.0 * r * t * t * s2) * k[2]
        + 4.0 * t * t * k[2] ** 2
        + r * r * t * t * s2 * s2
    )


def vg_interior_contraction(a: Kernel2, target: VGParams) -> float:
    """Même quantité par contractions : 2‖4A³ − 4θA² − σ²A‖² + (4TrA³ − 4θTrA² − rθσ²)²."""
    r, t, s2 = target.r, target.theta, target.sigma**2
    m = 4.0 * a.power(3) - 4.0 * t * a.power(2) - s2 * a.entries
    mean = 4.0 * a.trace_power(3) - 4.0 * t * a.trace_power(2) - r * t * s2
    return 2.0 * float(np.sum(m * m)) + mean * mean


def _integer_half_shape(r: float) -> int | None:
    half = 0.5 * r
    nearest = round(half)
    if nearest >= 1 and abs(half - nearest) < 1e-12:
        return int(nearest)
    return None


def vg_bound2(
    a: Kernel2 | SpectralKernel,
    target: VGParams,
    *,
    explicit_constants: bool = False,
) -> BoundReport:
    """
    Borne à deux termes pour d(F, VG_c(r, θ, σ)) :

        term1 = √max(I, 0)          I = vg_interior(a, target)
        term2 = |r(σ² + 2θ²) − κ₂|
    """
    _centred_target(target, "vg_bound2")
    report = BoundReport(kind="vg_bound2", terms={}, total=0.0)
    interior = vg_interior(a, target)
    term1 = _clamp(report, interior)
    term2 = abs(target.variance - cumulant2(a, 2))
    report.terms = {"term1": term1, "term2": term2}
    report.total = term1 + term2
    report.interior = interior

    if explicit_constants:
        _attach_constants(report, target)
    else:
        report.flag("constants_unit")
    logger.debug("vg bound evaluated", interior=interior, total=report.total)
    return report


def _attach_constants(report: BoundReport, target: VGParams) -> None:
    from ..stein.constants import stein_constants

    shape = _integer_half_shape(target.r)
    if target.theta != 0.0 or shape is None:
        report.flag("constants_unit")
        logger.warning(
            "explicit constants need theta = 0 and integer r/2",
            r=target.r,
            theta=target.theta,
        )
        return
    c = stein_constants(1.0 / target.sigma, shape)
    report.constants = {"term1": c.c2_1 + c.c2_2, "term2": c.c1}
    report.details["stein_constants"] = c.as_dict()


@dataclass(frozen=True)
class _VGIntegrand:
    a: np.ndarray
    a2: np.ndarray
    a3: np.ndarray
    trace: float
    r: float
    theta: float
    sigma2: float

    def __call__(self, z: np.ndarray) -> np.ndarray:
        f = np.einsum("ni,ij,nj->n", z, self.a, z) - self.trace
        g2 = 2.0 * np.einsum("ni,ij,nj->n", z, self.a2, z)
        g3 = 4.0 * np.einsum("ni,ij,nj->n", z, self.a3, z)
        return np.abs(self.sigma2 * (f + self.r * self.theta) + 2.0 * self.theta * g2 - g3)


def vg_l1_bound(
    a: Kernel2,
    target: VGParams,
    n_mc: int,
    seed: SeedLike,
    *,
    chunks: int = 8,
    workers: int = 1,
    batches: int = 50,
) -> BoundReport:
    """
    Forme L¹ : E|σ²(F + rθ) + 2θΓ₂ − Γ₃| estimée par Monte Carlo sur
    l'intégrande trajectoriel exact, plus le terme exact |r(σ² + 2θ²) − κ₂|.
    """
    _centred_target(target, "vg_l1_bound")
    integrand = _VGIntegrand(
        a.entries, a.power(2), a.power(3), float(np.trace(a.entries)),
        target.r, target.theta, target.sigma**2,
    )
    l1, se = mc_estimate(integrand, a.dim, n_mc, seed, chunks=chunks, workers=workers, batches=batches)
    gap = abs(target.variance - cumulant2(a, 2))
    report = BoundReport(
        kind="vg_l1",
        terms={"l1": l1, "term2": gap},
        total=l1 + gap,
        stderr={"l1": se},
        flags=["constants_unit"],
    )
    report.details["sqrt_interior"] = math.sqrt(max(vg_interior(a, target), 0.0))
    report.details["n_mc"] = n_mc
    return report


# ── Diagnostics de contraction et spectraux ───────────────────────────────────


def contraction_diag2(
    a: Kernel2,
    target: VGParams,
    lam: float | None = None,
) -> dict[str, float]:
    """
    Normes de contraction des critères de convergence :

        a  ‖A²‖                              (limite gaussienne)
        b  ‖A² − A/(2λ)‖                     (limite Gamma)
        c  ‖4A³ − A/λ²‖, |Tr A³|             (Gamma symétrisée, λ = 1/σ par défaut)
        d  ‖4A³ − 4θA² − σ²A‖, Tr A³ face à ¾rθσ² + rθ³
    """
    lam = 1.0 / target.sigma if lam is None else lam
    A, A2, A3 = a.entries, a.power(2), a.power(3)
    r, t, s2 = target.r, target.theta, target.sigma**2
    tr3 = float(np.trace(A3))
    d_target = 0.75 * r * t * s2 + r * t**3
    return {
        "a_norm": float(np.linalg.norm(A2)),
        "b_norm": float(np.linalg.norm(A2 - A / (2.0 * lam))),
        "c_norm": float(np.linalg.norm(4.0 * A3 - A / lam**2)),
        "c_trace3": abs(tr3),
        "d_norm": float(np.linalg.norm(4.0 * A3 - 4.0 * t * A2 - s2 * A)),
        "d_trace3": tr3,
        "d_trace3_target": d_target,
        "d_trace3_gap": abs(tr3 - d_target),
    }


def eigen_diag(
    a: Kernel2 | SpectralKernel,
    lam: float,
    r: float,
    qmax: int = 3,
) -> dict[str, float]:
    """
    Critère spectral pour Γ_s(λ, r) :
    Σ(μ/λ² − 4μ³)², Σμ³ et, pour q = 2..qmax, |Σμ^{2q} − (r/λ²)(4λ²)^{1−q}|.
    """
    if qmax < 2:
        raise ValueError(f"eigen_diag: qmax must be >= 2, got {qmax}")
    mu = np.asarray(a.eigenvalues if isinstance(a, SpectralKernel) else a.eigenvalues())
    out = {
        "cubic_mismatch": float(np.sum((mu / lam**2 - 4.0 * mu**3) ** 2)),
        "third_power_sum": float(np.sum(mu**3)),
    }
    for q in range(2, qmax + 1):
        expected = (r / lam**2) * (4.0 * lam**2) ** (1 - q)
        out[f"gap_{2 * q}"] = abs(float(np.sum(mu ** (2 * q))) - expected)
    return out


def six_moment_check(a: Kernel2 | SpectralKernel, target: VGParams) -> dict[str, float]:
    """|m_j(F) − m_j(Y)| pour j ∈ {2, 4, 6} (θ = 0) ou j ∈ {2, …, 6} (θ ≠ 0)."""
    _centred_target(target, "six_moment_check")
    mf = chaos_moments(a)
    my = vg_moments(target)
    orders = (2, 4, 6) if target.theta == 0.0 else (2, 3, 4, 5, 6)
    return {f"m{j}_gap": abs(mf[j - 1] - my[j - 1]) for j in orders}


# ── Cibles gaussienne et Gamma ────────────────────────────────────────────────


def gauss_bound2(a: Kernel2 | SpectralKernel, sigma2: float) -> BoundReport:
    """
    T = κ₆/120 + κ₃²/4 = E[Γ₃²], sa racine et |σ² − κ₂|.
    ``total`` utilise √T ; la forme sans racine est dans ``details``.
    """
    if sigma2 <= 0:
        raise ValueError(f"gauss_bound2: sigma2 must be > 0, got {sigma2}")
    k = _kappas(a)
    t = k[6] / 120.0 + 0.25 * k[3] ** 2
    report = BoundReport(kind="gauss_bound2", terms={}, total=0.0, interior=t)
    sqrt_t = _clamp(report, t)
    gap = abs(sigma2 - k[2])
    report.terms = {"T": t, "sqrt_T": sqrt_t, "variance_gap": gap}
    report.total = sqrt_t + gap
    report.details["total_verbatim"] = t + gap
    report.flag("constants_unit")
    return report


def gamma_bound2(a: Kernel2, lam: float, r: float) -> BoundReport:
    """Cible Γ(λ, r) centrée : 2‖4A³ − (2/λ)A²‖² + (4TrA³ − (2/λ)TrA²)² et |r/λ² − κ₂|."""
    if lam <= 0 or r <= 0:
        raise ValueError(f"gamma_bound2: lam and r must be > 0, got lam={lam}, r={r}")
    m = 4.0 * a.power(3) - (2.0 / lam) * a.power(2)
    mean = 4.0 * a.trace_power(3) - (2.0 / lam) * a.trace_power(2)
    interior = 2.0 * float(np.sum(m * m)) + mean * mean
    report = BoundReport(kind="gamma_bound2", terms={}, total=0.0, interior=interior)
    term1 = _clamp(report, interior)
    term2 = abs(r / lam**2 - cumulant2(a, 2))
    report.terms = {"term1": term1, "term2": term2}
    report.total = term1 + term2
    report.flag("constants_unit")
    return report


@dataclass(frozen=True)
class _LinearGammaIntegrand:
    a2: np.ndarray
    a3: np.ndarray
    coef2: float

    def __call__(self, z: np.ndarray) -> np.ndarray:
        g2 = 2.0 * np.einsum("ni,ij,nj->n", z, self.a2, z)
        g3 = 4.0 * np.einsum("ni,ij,nj->n", z, self.a3, z)
        return np.abs(self.coef2 * g2 - g3)


def gamma_l1_bound(
    a: Kernel2,
    lam: float,
    r: float,
    n_mc: int,
    seed: SeedLike,
    *,
    chunks: int = 8,
    workers: int = 1,
    batches: int = 50,
) -> BoundReport:
    """E|(1/λ)Γ₂ − Γ₃| par Monte Carlo, plus |r/λ² − κ₂|."""
    integrand = _LinearGammaIntegrand(a.power(2), a.power(3), 1.0 / lam)
    l1, se = mc_estimate(integrand, a.dim, n_mc, seed, chunks=chunks, workers=workers, batches=batches)
    gap = abs(r / lam**2 - cumulant2(a, 2))
    return BoundReport(
        kind="gamma_l1",
        terms={"l1": l1, "term2": gap},
        total=l1 + gap,
        stderr={"l1": se},
        flags=["constants_unit"],
    )


def gauss_l1_bound(
    a: Kernel2,
    sigma2: float,
    n_mc: int,
    seed: SeedLike,
    *,
    chunks: int = 8,
    workers: int = 1,
    batches: int = 50,
) -> BoundReport:
    """E|Γ₃| par Monte Carlo, plus |σ² − κ₂|."""
    integrand = _LinearGammaIntegrand(a.power(2), a.power(3), 0.0)
    l1, se = mc_estimate(integrand, a.dim, n_mc, seed, chunks=chunks, workers=workers, batches=batches)
    gap = abs(sigma2 - cumulant2(a, 2))
    return BoundReport(
        kind="gauss_l1",
        terms={"l1": l1, "variance_gap": gap},
        total=l1 + gap,
        stderr={"l1": se},
        flags=["constants_unit"],
    )


def char_conditions(a: Kernel2, n: int) -> dict[str, float]:
    """
    Conditions de la caractérisation Γ_s(1/2, n/2) quand E[F²] = 4n :
    écarts de variance et de moments m₄, m₆, ‖A − A³‖, |Tr A³| et nombre de
    valeurs propres égales à +1 et à −1.
    """
    if n < 1:
        raise ValueError(f"char_conditions: n must be >= 1, got {n}")
    mf = chaos_moments(a)
    my = vg_moments(sym_gamma(0.5, 0.5 * n))
    mu = a.eigenvalues()
    return {
        "variance_gap": abs(cumulant2(a, 2) - 4.0 * n),
        "m4_gap": abs(mf[3] - my[3]),
        "m6_gap": abs(mf[5] - my[5]),
        "cubic_norm": float(np.linalg.norm(a.entries - a.power(3))),
        "trace3": abs(a.trace_power(3)),
        "plus_ones": int(np.sum(np.abs(mu - 1.0) < EIGEN_TOL)),
        "minus_ones": int(np.sum(np.abs(mu + 1.0) < EIGEN_TOL)),
    }
