"""
Constructeurs des cas particuliers et lois limites de la famille VG.

Chaque constructeur renvoie un VGParams centré (μ = 0) dont ``provenance``
porte le nom du constructeur et ses arguments.
"""

from __future__ import annotations

import math
from typing import Any, Callable

from .variance_gamma import ParameterError, VGParams


def _tag(kind: str, **args: float) -> str:
    inner = ", ".join(f"{k}={v:g}" for k, v in args.items())
    return f"{kind}({inner})"


def _positive(kind: str, **values: float) -> None:
    for name, value in values.items():
        if not (math.isfinite(value) and value > 0):
            raise ParameterError(f"{kind}: {name} must be > 0, got {value}")


def laplace(b: float) -> VGParams:
    """Laplace(b) = VG(2, 0, b)."""
    _positive("laplace", b=b)
    return VGParams(2.0, 0.0, b, 0.0, provenance=_tag("laplace", b=b))


def sym_gamma(lam: float, r: float) -> VGParams:
    """Gamma symétrisée Γ_s(λ, r) = VG(2r, 0, 1/λ)."""
    _positive("sym_gamma", lam=lam, r=r)
    return VGParams(2.0 * r, 0.0, 1.0 / lam, 0.0, provenance=_tag("sym_gamma", lam=lam, r=r))


def product_normals(rho: float, sigma_x: float, sigma_y: float) -> VGParams:
    """XY pour (X, Y) gaussien centré de corrélation ρ : VG(1, ρσ_Xσ_Y, σ_Xσ_Y√(1−ρ²))."""
    _positive("product_normals", sigma_x=sigma_x, sigma_y=sigma_y)
    if not -1.0 < rho < 1.0:
        raise ParameterError(f"product_normals: rho must lie in (-1, 1), got {rho}")
    s = sigma_x * sigma_y
    return VGParams(
        1.0,
        rho * s,
        s * math.sqrt(1.0 - rho * rho),
        0.0,
        provenance=_tag("product_normals", rho=rho, sigma_x=sigma_x, sigma_y=sigma_y),
    )


def gamma_difference(r: float, lam1: float, lam2: float, rho: float = 0.0) -> VGParams:
    """
    X − Y pour deux Gamma(r, λ₁), Gamma(r, λ₂) corrélées (ρ) :
    VG(2r, 1/(2λ₁) − 1/(2λ₂), √(1−ρ²)/√(λ₁λ₂)).
    """
    _positive("gamma_difference", r=r, lam1=lam1, lam2=lam2)
    if not -1.0 < rho < 1.0:
        raise ParameterError(f"gamma_difference: rho must lie in (-1, 1), got {rho}")
    return VGParams(
        2.0 * r,
        0.5 / lam1 - 0.5 / lam2,
        math.sqrt(1.0 - rho * rho) / math.sqrt(lam1 * lam2),
        0.0,
        provenance=_tag("gamma_difference", r=r, lam1=lam1, lam2=lam2, rho=rho),
    )


def gauss_limit_sequence(sigma2: float, r: float) -> VGParams:
    """VG(r, 0, σ/√r) → N(0, σ²) quand r → ∞ ; κ₄ = 6σ⁴/r."""
    _positive("gauss_limit_sequence", sigma2=sigma2, r=r)
    return VGParams(
        r,
        0.0,
        math.sqrt(sigma2 / r),
        0.0,
        provenance=_tag("gauss_limit_sequence", sigma2=sigma2, r=r),
    )


def gamma_limit_sequence(lam: float, r: float, sigma: float) -> VGParams:
    """VG(2r, 1/(2λ), σ) ; la loi centrée tend vers Γ(λ, r) − r/λ quand σ → 0."""
    _positive("gamma_limit_sequence", lam=lam, r=r, sigma=sigma)
    return VGParams(
        2.0 * r,
        0.5 / lam,
        sigma,
        0.0,
        provenance=_tag("gamma_limit_sequence", lam=lam, r=r, sigma=sigma),
    )


CONSTRUCTORS: dict[str, Callable[..., VGParams]] = {
    "laplace": laplace,
    "sym_gamma": sym_gamma,
    "product_normals": product_normals,
    "gamma_difference": gamma_difference,
    "gauss_limit_sequence": gauss_limit_sequence,
    "gamma_limit_sequence": gamma_limit_sequence,
}


def special_case(kind: str, args: dict[str, Any] | None = None, **kwargs: Any) -> VGParams:
    """special_case("laplace", {"b": 1.0}) ou special_case("laplace", b=1.0)."""
    try:
        ctor = CONSTRUCTORS[kind]
    except KeyError:
        raise ParameterError(
            f"unknown special case '{kind}', expected one of {sorted(CONSTRUCTORS)}"
        ) from None
    merged = {**(args or {}), **kwargs}
    try:
        return ctor(**merged)
    except TypeError as e:
        raise ParameterError(f"{kind}: bad arguments {sorted(merged)} ({e})") from e


def gamma_limit_cumulants(lam: float, r: float) -> tuple[float, ...]:
    """Cumulants κ₁…κ₆ de Γ(λ, r) centrée : κ_j = (j−1)! r / λ^j, κ₁ = 0."""
    _positive("gamma_limit_cumulants", lam=lam, r=r)
    return (0.0, *(math.factorial(j - 1) * r / lam**j for j in range(2, 7)))
