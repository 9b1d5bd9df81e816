"""
Noyaux du second chaos.

Un élément F = I₂(f) du second chaos sur ℝ^d est décrit par la matrice
symétrique A = A_f : F(z) = zᵀAz − Tr A pour z ~ N(0, I_d).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from ..observability import get_logger

logger = get_logger("chaos.kernel")

SYMMETRY_TOL = 1e-12


class KernelError(ValueError):
    """Noyau non carré, non symétrique, non fini ou de dimension incompatible."""


class Kernel2:
    """Matrice symétrique d×d immuable représentant f ∈ 𝔥^{⊙2}."""

    def __init__(self, entries: Sequence[Sequence[float]] | np.ndarray) -> None:
        a = np.array(entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
            raise KernelError(f"kernel must be a non-empty square matrix, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise KernelError("kernel entries must be finite")
        asym = float(np.max(np.abs(a - a.T)))
        if asym > SYMMETRY_TOL:
            raise KernelError(f"kernel is not symmetric (max |A - A^T| = {asym:.3g})")
        a = 0.5 * (a + a.T)
        a.setflags(write=False)
        self._a = a

    # ── Accès ─────────────────────────────────────────────────

    @property
    def entries(self) -> np.ndarray:
        return self._a

    @property
    def dim(self) -> int:
        return self._a.shape[0]

    def __repr__(self) -> str:
        return f"Kernel2(dim={self.dim}, norm={self.frobenius():.6g})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Kernel2) and np.array_equal(self._a, other._a)

    __hash__ = None  # type: ignore[assignment]

    # ── Algèbre ───────────────────────────────────────────────

    def __add__(self, other: "Kernel2") -> "Kernel2":
        self.check_same_dim(other)
        return Kernel2(self._a + other._a)

    def scaled(self, c: float) -> "Kernel2":
        return Kernel2(c * self._a)

    def check_same_dim(self, other: "Kernel2") -> None:
        if self.dim != other.dim:
            raise KernelError(f"dimension mismatch: {self.dim} vs {other.dim}")

    @cached_property
    def _powers(self) -> list[np.ndarray]:
        powers = [np.eye(self.dim), self._a]
        for _ in range(2, 7):
            powers.append(powers[-1] @ self._a)
        return powers

    def power(self, p: int) -> np.ndarray:
        """A^p par produits matriciels explicites (p ≤ 6 mis en cache)."""
        if p < 0:
            raise KernelError(f"negative matrix power {p}")
        if p <= 6:
            return self._powers[p]
        return np.linalg.matrix_power(self._a, p)

    def trace_power(self, p: int) -> float:
        return float(np.trace(self.power(p)))

    def frobenius(self) -> float:
        return float(np.linalg.norm(self._a))

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self._a)

    def spectral(self) -> "SpectralKernel":
        return SpectralKernel(tuple(float(v) for v in self.eigenvalues()))

    # ── Sérialisation ─────────────────────────────────────────

    def to_rows(self) -> list[list[float]]:
        return self._a.tolist()

    def to_csv(self, path: str | Path) -> Path:
        """CSV dense, une ligne par ligne de A, 17 chiffres significatifs."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        lines = [",".join(format(v, ".17g") for v in row) for row in self._a]
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return path

    @classmethod
    def from_csv(cls, path: str | Path) -> "Kernel2":
        path = Path(path)
        if not path.exists():
            raise KernelError(f"kernel file not found: {path}")
        rows = [
            [float(v) for v in line.split(",")]
            for line in path.read_text(encoding="utf-8").splitlines()
            if line.strip() and not line.startswith("#")
        ]
        return cls(rows)

    @classmethod
    def diag(cls, values: Iterable[float]) -> "Kernel2":
        return cls(np.diag(np.asarray(list(values), dtype=float)))


@dataclass(frozen=True)
class SpectralKernel:
    """Spectre de Hilbert–Schmidt λ_j de f ; plongement diagonal."""

    eigenvalues: tuple[float, ...]

    def __post_init__(self) -> None:
        if not self.eigenvalues:
            raise KernelError("spectrum must contain at least one eigenvalue")
        if not all(np.isfinite(self.eigenvalues)):
            raise KernelError("eigenvalues must be finite")

    @property
    def dim(self) -> int:
        return len(self.eigenvalues)

    def trace_power(self, p: int) -> float:
        return float(np.sum(np.asarray(self.eigenvalues) ** p))

    def norm_squared(self) -> float:
        return self.trace_power(2)

    def to_kernel(self) -> Kernel2:
        return Kernel2.diag(self.eigenvalues)


def exact_symgamma_kernel(m: int, lam: float) -> SpectralKernel:
    """m valeurs propres +1/(2λ) et m valeurs −1/(2λ) : I₂(f) ~ Γ_s(λ, m/2)."""
    if m < 1:
        raise KernelError(f"exact_symgamma_kernel: m must be >= 1, got {m}")
    if lam <= 0:
        raise KernelError(f"exact_symgamma_kernel: lam must be > 0, got {lam}")
    half = 0.5 / lam
    return SpectralKernel((half,) * m + (-half,) * m)


def random_kernel(dim: int, seed: int, scale: float = 1.0) -> Kernel2:
    """Matrice gaussienne symétrisée, normalisée par √dim."""
    if dim < 1:
        raise KernelError(f"random_kernel: dim must be >= 1, got {dim}")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((dim, dim))
    return Kernel2(scale * (g + g.T) / (2.0 * np.sqrt(dim)))


def as_kernel(k: "Kernel2 | SpectralKernel | np.ndarray") -> Kernel2:
    if isinstance(k, Kernel2):
        return k
    if isinstance(k, SpectralKernel):
        return k.to_kernel()
    return Kernel2(k)
