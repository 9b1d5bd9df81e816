"""
Bornes par normes de contraction pour F = I_q(f), q ≥ 2.

La quantité centrale est E[(Γ₃ − 2θΓ₂ − σ²(F + rθ))²], développée niveau par
niveau grâce aux décompositions de Γ₂ et Γ₃ et à l'isométrie
E[I_L(g)²] = L! ‖g‖².
"""

from __future__ import annotations

import math
from itertools import product
from math import comb, factorial

import numpy as np

from ..distributions import UnsupportedLocation, VGParams
from ..observability import get_logger
from ..reports import BoundReport
from .constants import cq
from .decomposition import GammaDecomposition, gamma2_decomp, gamma3_decomp
from .symmetric import SymTensor, TensorError, check_chaos_order, contract, sym_contract

logger = get_logger("tensors.bounds")


class OddOrderAsymmetryError(TensorError):
    """q impair et θ ≠ 0 : un chaos impair n'a pas de limite asymétrique à variance bornée."""


# ── Cible Variance-Gamma ──────────────────────────────────────────────────────


def _vg_remainder(f: SymTensor, target: VGParams) -> tuple[GammaDecomposition, GammaDecomposition]:
    g2 = gamma2_decomp(f)
    x = gamma3_decomp(f).combine(g2, -2.0 * target.theta)
    x.add(f.order, f.scaled(-target.sigma**2))
    x.constant -= target.r * target.theta * target.sigma**2
    return x, g2


def vg_contraction_bound(f: SymTensor, target: VGParams) -> BoundReport:
    """
    interior = (½E[F³] − 2θE[F²] − rθσ²)²                 third_moment_gap
             + q!‖Σ c_q(r, q−r)(f⊗̃_r f)⊗̃_{q−r} f
                   − 2θ c_q(q/2) f⊗̃_{q/2} f − σ² f‖²      level_q
             + niveaux communs à Γ₂ et Γ₃ (hors q)         mixed_levels
             + niveaux propres à Γ₃                        upper_levels

    term1 = √interior, term2 = |r(σ² + 2θ²) − q!‖f‖²|.
    """
    if target.mu != 0.0:
        raise UnsupportedLocation(f"vg_contraction_bound: target must have mu = 0, got {target.mu}")
    if f.order < 2:
        raise TensorError(f"vg_contraction_bound: chaos order must be >= 2, got {f.order}")
    check_chaos_order(f)
    q = f.order
    if q % 2 == 1 and target.theta != 0.0:
        raise OddOrderAsymmetryError(
            f"odd chaos order {q} cannot approach an asymmetric target (theta={target.theta})"
        )

    x, g2 = _vg_remainder(f, target)
    shared = set(g2.levels) - {q}
    parts = {
        "third_moment_gap": x.level_energy(0),
        "level_q": x.level_energy(q),
        "mixed_levels": math.fsum(x.level_energy(k) for k in shared),
        "upper_levels": math.fsum(
            x.level_energy(k) for k in x.levels if k != q and k not in shared
        ),
    }
    interior = math.fsum(parts.values())
    report = BoundReport(kind="vg_contraction_bound", terms={}, total=0.0, interior=interior)
    term1 = math.sqrt(max(interior, 0.0))
    term2 = abs(target.variance - g2.constant)
    report.terms = {"term1": term1, "term2": term2}
    report.total = term1 + term2
    report.details["parts"] = parts
    report.flag("constants_unit")
    logger.debug("contraction bound", q=q, interior=interior)
    return report


def symgamma_contraction_bound(f: SymTensor, lam: float) -> float:
    """
    E[(Γ₃ − F/λ²)²] = q!‖f/λ² − Σ c_q(r, q−r)(f⊗̃_r f)⊗̃_{q−r} f‖²
                      + énergies des autres niveaux, pour q pair ou impair.
    """
    if lam <= 0:
        raise ValueError(f"symgamma_contraction_bound: lam must be > 0, got {lam}")
    if f.order < 2:
        raise TensorError(f"symgamma_contraction_bound: chaos order must be >= 2, got {f.order}")
    x = gamma3_decomp(f)
    x.add(f.order, f.scaled(-1.0 / lam**2))
    return x.second_moment()


# ── Somme de deux chaos ───────────────────────────────────────────────────────


def _own_term(f: SymTensor, lam: float) -> float:
    q = f.order
    acc = f.scaled(1.0 / lam**2)
    for r in range(1, q):
        inner = sym_contract(f, f, r)
        acc = acc - sym_contract(f, inner, q - r).scaled(cq(q, (r, q - r)))
    return acc.norm_squared()


def _cross_coefficient(qi: int, qj: int, qk: int, r: int, s: int) -> int:
    return (
        qi * qj
        * factorial(r - 1) * comb(qi - 1, r - 1) * comb(qj - 1, r - 1)
        * factorial(s - 1) * comb(qi - 1, s - 1) * comb(qj + qk - 2 * r - 1, s - 1)
    )


def mixed_sum_terms(f1: SymTensor, f2: SymTensor) -> list[tuple[tuple[int, int, int, int, int], float]]:
    """
    Termes (i, j, k, r, s) de l'ensemble 𝒮 avec coefficient · ‖f^i ⊗̃_s (f^j ⊗̃_r f^k)‖².
    Pour i = j = k, les termes s = q_i − r sont exclus (ils forment le terme propre).
    """
    fs = {1: f1, 2: f2}
    out = []
    for i, j, k in product((1, 2), repeat=3):
        qi, qj, qk = fs[i].order, fs[j].order, fs[k].order
        for r in range(1, min(qi, qj, qk) + 1):
            inner_order = qj + qk - 2 * r
            if inner_order < 1:
                continue
            inner = sym_contract(fs[j], fs[k], r)
            for s in range(1, min(qi, inner_order) + 1):
                if i == j == k and s == qi - r:
                    continue
                coef = _cross_coefficient(qi, qj, qk, r, s)
                norm2 = sym_contract(fs[i], inner, s).norm_squared()
                out.append(((i, j, k, r, s), coef * norm2))
    return out


def mixed_sum_bound(f1: SymTensor, f2: SymTensor, lam: float) -> float:
    """Majorant de E[(Z/λ² − Γ₃(Z))²] pour Z = I_{q1}(f1) + I_{q2}(f2), 2 ≤ q1 < q2."""
    if not 2 <= f1.order < f2.order:
        raise TensorError(f"mixed_sum_bound needs 2 <= q1 < q2, got ({f1.order}, {f2.order})")
    if f1.dim != f2.dim:
        raise TensorError(f"dimension mismatch: {f1.dim} vs {f2.dim}")
    check_chaos_order(f2)
    own = 8.0 * (_own_term(f1, lam) + _own_term(f2, lam))
    cross = math.fsum(v for _, v in mixed_sum_terms(f1, f2))
    return own + cross


# ── Contractions doubles et simples ───────────────────────────────────────────


def double_vs_single_contraction_check(f: SymTensor) -> dict[str, object]:
    """
    Compare ‖(f ⊗̃_r f) ⊗̃_{r'} f‖ (r = 1..q−1, r' + 2r ≤ 2q, niveau > 0)
    à max_l ‖f ⊗_l f‖^{3/2}. Les paires de niveau 0 sont listées à part.
    """
    if f.order < 2:
        raise TensorError(f"chaos order must be >= 2, got {f.order}")
    check_chaos_order(f)
    q = f.order
    rhs = max(float(np.linalg.norm(contract(f, f, l))) for l in range(1, q)) ** 1.5
    pairs: dict[str, float] = {}
    scalar_pairs: dict[str, float] = {}
    for r in range(1, q):
        inner = sym_contract(f, f, r)
        for rp in range(1, min(q, 2 * q - 2 * r) + 1):
            value = sym_contract(inner, f, rp).norm()
            key = f"{r},{rp}"
            if 3 * q - 2 * r - 2 * rp == 0:
                scalar_pairs[key] = value
            else:
                pairs[key] = value
    lhs_max = max(pairs.values(), default=0.0)
    return {
        "lhs_max": lhs_max,
        "rhs": rhs,
        "margin": rhs - lhs_max,
        "pairs": pairs,
        "scalar_pairs": scalar_pairs,
    }
