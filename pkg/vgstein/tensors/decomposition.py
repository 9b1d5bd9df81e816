"""
Décompositions chaotiques de Γ₂ et Γ₃ pour F = I_q(f).

    Γ₂(F) = q!‖f‖² + Σ_{r=1}^{q−1} c_q(r) I_{2q−2r}(f ⊗̃_r f)
    Γ₃(F) = Σ_{r=1}^{q−1} Σ_{s=1}^{min(2q−2r, q)} c_q(r, s) I_{3q−2r−2s}((f ⊗̃_r f) ⊗̃_s f)

Les termes de Γ₃ sont regroupés par niveau L = 3q − 2r − 2s : niveaux pairs
pour q pair (le niveau 0 vaut ½E[F³]), niveaux impairs pour q impair.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from ..observability import get_logger
from .constants import cq
from .symmetric import SymTensor, TensorError, check_chaos_order, sym_contract

logger = get_logger("tensors.decomposition")


@dataclass
class GammaDecomposition:
    """Constante (niveau 0) et noyaux symétriques g_L par niveau L ≥ 1."""

    order: int
    constant: float = 0.0
    levels: dict[int, SymTensor] = field(default_factory=dict)

    def add(self, level: int, kernel: SymTensor) -> None:
        if level == 0:
            self.constant += float(kernel.entries)
        elif level in self.levels:
            self.levels[level] = self.levels[level] + kernel
        else:
            self.levels[level] = kernel

    def expectation(self) -> float:
        return self.constant

    def second_moment(self) -> float:
        """E[Γ²] = constante² + Σ_L L! ‖g_L‖²."""
        return self.constant**2 + math.fsum(
            math.factorial(level) * g.norm_squared() for level, g in self.levels.items()
        )

    def level_energy(self, level: int) -> float:
        if level == 0:
            return self.constant**2
        g = self.levels.get(level)
        return 0.0 if g is None else math.factorial(level) * g.norm_squared()

    def combine(self, other: "GammaDecomposition", coef: float = 1.0) -> "GammaDecomposition":
        """self + coef · other, niveau par niveau."""
        out = GammaDecomposition(self.order, self.constant, dict(self.levels))
        out.constant += coef * other.constant
        for level, g in other.levels.items():
            out.add(level, g.scaled(coef))
        return out

    def summary(self) -> dict[str, float]:
        out = {"level_0": self.constant}
        out.update({f"level_{k}": g.norm() for k, g in sorted(self.levels.items())})
        return out


def _require_order(f: SymTensor, op: str) -> None:
    if f.order < 2:
        raise TensorError(f"{op}: chaos order must be >= 2, got {f.order}")
    check_chaos_order(f)


def gamma2_decomp(f: SymTensor) -> GammaDecomposition:
    _require_order(f, "gamma2_decomp")
    q = f.order
    out = GammaDecomposition(q, constant=math.factorial(q) * f.norm_squared())
    for r in range(1, q):
        out.add(2 * q - 2 * r, sym_contract(f, f, r).scaled(cq(q, r)))
    return out


def gamma3_decomp(f: SymTensor) -> GammaDecomposition:
    _require_order(f, "gamma3_decomp")
    q = f.order
    out = GammaDecomposition(q)
    for r in range(1, q):
        inner = sym_contract(f, f, r)
        for s in range(1, min(2 * q - 2 * r, q) + 1):
            level = 3 * q - 2 * r - 2 * s
            term = sym_contract(inner, f, s)
            out.add(level, term.scaled(cq(q, (r, s))))
    logger.debug("gamma3 decomposition", q=q, levels=str(sorted(out.levels)))
    return out


def gamma3_second_moment(f: SymTensor) -> float:
    """E[Γ₃(I_q(f))²] = Σ_L L! ‖g_L‖² (constante incluse au niveau 0)."""
    return gamma3_decomp(f).second_moment()


def third_moment(f: SymTensor) -> float:
    """E[I_q(f)³] = 2 E[Γ₃] ; nul pour q impair."""
    return 2.0 * gamma3_decomp(f).expectation()

