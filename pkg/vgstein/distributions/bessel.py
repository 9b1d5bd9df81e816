"""
Modified Bessel function of the second kind, K_ν(x), for ν ≥ 0 and x > 0.

Two evaluation paths share one large-x asymptotic branch:

    bessel_k(nu, x)          scalar, adaptive quadrature (scipy.integrate.quad)
                             of  ∫₀^∞ exp(−x cosh t) cosh(νt) dt
    bessel_kve(nu, x_array)  vectorised, exponentially scaled e^x K_ν(x),
                             trapezoidal rule on the same integrand

The trapezoidal rule converges geometrically here because the integrand is
even, analytic in a strip around the real axis and decays doubly
exponentially.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import integrate

from ..observability import get_logger

logger = get_logger("distributions.bessel")

LOG_MAX = math.log(np.finfo(float).max)
_LOG2 = math.log(2.0)
_TAIL_DROP = 46.0  # integrand below e^-46 of its peak is ignored
_TRAPEZOID_STEP = 1.0 / 16.0
_BLOCK = 2048


class BesselRangeError(ArithmeticError):
    """K_ν(x) ne tient pas dans un flottant double (x minuscule, ν grand)."""


def asymptotic_threshold(nu: float) -> float:
    """Point de bascule vers la série asymptotique ; l'erreur y est ~ e^{-2x}."""
    return 30.0 + nu * nu


# ── Intégrande ────────────────────────────────────────────────────────────────


def _log_cosh(z: np.ndarray | float) -> np.ndarray | float:
    z = np.abs(z)
    return z + np.log1p(np.exp(-2.0 * z)) - _LOG2


def _log_integrand(t: np.ndarray | float, x: float, nu: float) -> np.ndarray | float:
    # log of exp(-x (cosh t - 1)) cosh(nu t), i.e. the e^x-scaled integrand
    return -2.0 * x * np.sinh(0.5 * t) ** 2 + _log_cosh(nu * t)


def _tail_end(x: float, nu: float, t_peak: float, peak: float) -> float:
    step = 1.0
    t = t_peak + step
    while _log_integrand(t, x, nu) > peak - _TAIL_DROP:
        step *= 2.0
        t = t_peak + step
    return t


# ── Série asymptotique ────────────────────────────────────────────────────────


def _asymptotic_kve(nu: float, x: np.ndarray | float) -> np.ndarray | float:
    """e^x K_ν(x) ~ √(π/2x) Σ a_k(ν) x^{-k}, tronquée au plus petit terme."""
    x = np.asarray(x, dtype=float)
    mu = 4.0 * nu * nu
    term = np.ones_like(x)
    total = np.ones_like(x)
    prev = np.full_like(x, np.inf)
    active = np.ones(x.shape, dtype=bool)
    for k in range(1, 80):
        term = term * (mu - (2 * k - 1) ** 2) / (8.0 * k * x)
        size = np.abs(term)
        active &= size < prev
        total = np.where(active, total + term, total)
        prev = size
        if not np.any(active & (size > 1e-17 * np.abs(total))):
            break
    out = np.sqrt(np.pi / (2.0 * x)) * total
    return float(out) if out.ndim == 0 else out


# ── Chemin scalaire : quadrature adaptative ──────────────────────────────────


def _kve_quad(nu: float, x: float) -> tuple[float, float]:
    """Retourne (log e^x K_ν(x), valeur) par quadrature adaptative."""
    t_peak = math.asinh(nu / x) if nu > 0 else 0.0
    peak = float(_log_integrand(t_peak, x, nu))
    t_end = _tail_end(x, nu, t_peak, peak)

    def f(t: float) -> float:
        return math.exp(float(_log_integrand(t, x, nu)) - peak)

    total = 0.0
    for a, b in ((0.0, t_peak), (t_peak, t_end)):
        if b > a:
            value, _ = integrate.quad(f, a, b, epsabs=0.0, epsrel=1e-13, limit=200)
            total += value
    log_kve = peak + math.log(total)
    return log_kve, total


def bessel_k(nu: float, x: float) -> float:
    """K_ν(x) ; lève BesselRangeError si la valeur dépasse le plus grand double."""
    if x <= 0 or not math.isfinite(x):
        raise ValueError(f"bessel_k: x must be positive and finite, got {x}")
    nu = abs(float(nu))
    if x >= asymptotic_threshold(nu):
        logger.debug("bessel branch", nu=nu, x=x, branch="asymptotic")
        return float(_asymptotic_kve(nu, x)) * math.exp(-x)

    log_kve, _ = _kve_quad(nu, x)
    log_k = log_kve - x
    if log_k > LOG_MAX:
        raise BesselRangeError(f"K_{nu}({x}) overflows (log value {log_k:.1f})")
    logger.debug("bessel branch", nu=nu, x=x, branch="quadrature")
    return math.exp(log_k)


# ── Chemin vectoriel : trapèzes ──────────────────────────────────────────────


def log_bessel_kve(nu: float, x: np.ndarray) -> np.ndarray:
    """log(e^x K_ν(x)) élément par élément pour un tableau x > 0."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0) or not np.all(np.isfinite(x)):
        raise ValueError("log_bessel_kve: x must be positive and finite")
    nu = abs(float(nu))
    out = np.empty_like(x)
    flat_x = x.ravel()
    flat_out = out.ravel()

    far = flat_x >= asymptotic_threshold(nu)
    if np.any(far):
        flat_out[far] = np.log(_asymptotic_kve(nu, flat_x[far]))

    near_idx = np.flatnonzero(~far)
    if near_idx.size:
        x_near = flat_x[near_idx]
        x_min = float(x_near.min())
        t_peak = math.asinh(nu / x_min) if nu > 0 else 0.0
        t_end = _tail_end(x_min, nu, t_peak, float(_log_integrand(t_peak, x_min, nu)))
        t = np.arange(0.0, t_end + _TRAPEZOID_STEP, _TRAPEZOID_STEP)
        weights = np.full(t.shape, _TRAPEZOID_STEP)
        weights[0] *= 0.5
        log_w = np.log(weights)
        for start in range(0, near_idx.size, _BLOCK):
            xb = x_near[start : start + _BLOCK]
            grid = -2.0 * xb[:, None] * (np.sinh(0.5 * t) ** 2)[None, :]
            grid += _log_cosh(nu * t)[None, :] + log_w[None, :]
            peak = grid.max(axis=1)
            flat_out[near_idx[start : start + _BLOCK]] = peak + np.log(
                np.exp(grid - peak[:, None]).sum(axis=1)
            )
    return out


def bessel_kve(nu: float, x: np.ndarray) -> np.ndarray:
    """e^x K_ν(x) vectorisé ; lève BesselRangeError en cas de dépassement."""
    log_values = log_bessel_kve(nu, x)
    if np.any(log_values > LOG_MAX):
        raise BesselRangeError(f"scaled K_{nu} overflows for the smallest arguments")
    return np.exp(log_values)
