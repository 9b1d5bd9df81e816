"""
Résidus de caractérisation de Stein, évalués par quadrature sous la vraie loi.

Chaque fonction renvoie E[(𝒜f)(Y)] pour l'opérateur 𝒜 de la loi visée ;
le résultat est nul (à la tolérance de quadrature près) pour toute fonction
test régulière dont les termes sont intégrables.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence, Union

import numpy as np
from numpy.polynomial import Polynomial, hermite_e

from ..distributions import VGParams, laplace, sym_gamma, vg_expect
from ..observability import get_logger

logger = get_logger("stein.characterization")

Fn = Callable[[np.ndarray], np.ndarray]

GAUSS_HERMITE_NODES = 80


@dataclass(frozen=True)
class SmoothFunction:
    """f avec ses deux premières dérivées, toutes vectorisées."""

    f: Fn
    df: Fn
    d2f: Fn
    name: str = "f"

    @classmethod
    def polynomial(
        cls, coefficients: Sequence[float] | Polynomial, name: str | None = None
    ) -> "SmoothFunction":
        """Coefficients par degré croissant : [c0, c1, ...]."""
        poly = coefficients if isinstance(coefficients, Polynomial) else Polynomial(list(coefficients))
        d1 = poly.deriv(1)
        d2 = poly.deriv(2)
        return cls(poly, d1, d2, name or f"poly{tuple(poly.coef)}")

    @classmethod
    def monomial(cls, degree: int) -> "SmoothFunction":
        return cls.polynomial([0.0] * degree + [1.0], name=f"x^{degree}")

    def operator(self, coef2: Fn, coef1: Fn, coef0: Fn) -> Fn:
        """x ↦ a(x) f''(x) + b(x) f'(x) + c(x) f(x)."""

        def _apply(x: np.ndarray) -> np.ndarray:
            return coef2(x) * self.d2f(x) + coef1(x) * self.df(x) + coef0(x) * self.f(x)

        return _apply


TestLike = Union[SmoothFunction, Polynomial, Sequence[float], tuple]


def as_smooth(f: TestLike) -> SmoothFunction:
    """
    Accepte un SmoothFunction, un numpy Polynomial, une liste de coefficients
    ou un triplet (f, f', f'') de fonctions vectorisées.
    """
    if isinstance(f, SmoothFunction):
        return f
    if isinstance(f, Polynomial):
        return SmoothFunction.polynomial(f)
    if isinstance(f, tuple) and len(f) == 3 and all(callable(g) for g in f):
        return SmoothFunction(*f)
    if isinstance(f, (list, tuple, np.ndarray)):
        return SmoothFunction.polynomial([float(c) for c in f])
    raise TypeError(
        "test function must be a SmoothFunction, a Polynomial, coefficients or (f, df, d2f); "
        f"got {type(f).__name__}"
    )


def _const(c: float) -> Fn:
    return lambda x: np.full_like(x, c, dtype=float)


def _identity(x: np.ndarray) -> np.ndarray:
    return x


# ── Résidus ───────────────────────────────────────────────────────────────────


def residual_symgamma(lam: float, r: float, f: TestLike) -> float:
    """E[(1/λ²) Y f''(Y) + (2r/λ²) f'(Y) − Y f(Y)] sous Γ_s(λ, r)."""
    g = as_smooth(f)
    p = sym_gamma(lam, r)
    inv = 1.0 / lam**2
    integrand = g.operator(lambda x: inv * x, _const(2.0 * r * inv), lambda x: -x)
    value = vg_expect(p, integrand)
    logger.debug("symgamma residual", lam=lam, r=r, f=g.name, value=value)
    return value


def residual_vg(params: VGParams, f: TestLike) -> float:
    """
    E[σ²(X + rθ) f''(X) + (σ²r + 2θ(X + rθ)) f'(X) − X f(X)] où X = Y − E[Y]
    suit la loi VG centrée de mêmes (r, θ, σ).
    """
    g = as_smooth(f)
    s2, r, theta = params.sigma**2, params.r, params.theta
    integrand = g.operator(
        lambda x: s2 * (x + r * theta),
        lambda x: s2 * r + 2.0 * theta * (x + r * theta),
        lambda x: -x,
    )
    value = vg_expect(params, integrand, centred=True)
    logger.debug("vg residual", params=str(params), f=g.name, value=value)
    return value


def laplace_identity(b: float, f: TestLike) -> float:
    """E[f(Y)] − f(0) − b² E[f''(Y)] sous Laplace(b)."""
    g = as_smooth(f)
    p = laplace(b)
    lhs = vg_expect(p, g.f) - float(np.asarray(g.f(np.zeros(1)))[0])
    rhs = b**2 * vg_expect(p, g.d2f)
    return lhs - rhs


def normal_residual(f: TestLike, nodes: int = GAUSS_HERMITE_NODES) -> float:
    """E[f'(Z) − Z f(Z)] par Gauss–Hermite probabiliste."""
    g = as_smooth(f)
    x, w = hermite_e.hermegauss(nodes)
    values = (g.df(x) - x * g.f(x)) * w
    return math.fsum(values) / math.sqrt(2.0 * math.pi)
