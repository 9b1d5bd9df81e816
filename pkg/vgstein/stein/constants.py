"""Constantes explicites de la solution de l'équation de Stein pour Γ_s(λ, r), r entier."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass


class SteinHypothesisError(ValueError):
    """Constantes demandées hors de l'hypothèse r entier ≥ 1, λ > 0."""


@dataclass(frozen=True)
class SteinConstants:
    """
    ‖f_h‖ ≤ c0 ‖h − Eh‖, ‖f_h'‖ ≤ c1 ‖h − Eh‖,
    ‖f_h''‖ ≤ c2_1 ‖h'‖ + c2_2 ‖h − Eh‖.
    """

    lam: float
    r: int
    c0: float
    c1: float
    c2_1: float
    c2_2: float

    def as_dict(self) -> dict[str, float]:
        return asdict(self)


def stein_constants(lam: float, r: int | float) -> SteinConstants:
    if isinstance(r, bool) or float(r) != int(r) or int(r) < 1:
        raise SteinHypothesisError(f"stein_constants: r must be a positive integer, got {r}")
    if not (math.isfinite(lam) and lam > 0):
        raise SteinHypothesisError(f"stein_constants: lam must be > 0, got {lam}")
    r = int(r)
    half = 0.5 * r
    gamma_ratio = math.exp(math.lgamma(half) - math.lgamma(half + 0.5))
    shared = math.sqrt(math.pi) / math.sqrt(2 * r + 3) + 1.0 / r
    return SteinConstants(
        lam=lam,
        r=r,
        c0=(1.0 / math.sqrt(lam)) * (1.0 / r + math.pi * gamma_ratio / 2.0),
        c1=(1.0 / lam) * (1.0 / r + 1.0 / (r + 1)),
        c2_1=(3.0 / lam) * shared,
        c2_2=(4.0 / lam**1.5) * shared,
    )
