"""
Sommes homogènes H_n(X, q) = Σ_{i₁…i_q} h(i₁, …, i_q) X_{i₁}⋯X_{i_q}.

La somme porte sur tous les multi-indices ; h est symétrique et nulle sur
les diagonales. Pour une base gaussienne, H_n(G, q) = I_q(f) avec f = h
(le symétrisé de q! Σ_{i₁<…<i_q} h e_{i₁}⊗⋯⊗e_{i_q}).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations

import numpy as np

from ..chaos import Kernel2
from ..observability import get_logger
from ..tensors import SymTensor
from .streams import SampleError, SampleSet

logger = get_logger("empirical.homogeneous")

BASES = ("gaussian", "rademacher", "uniform")
SYMMETRY_TOL = 1e-12


class CoefficientError(SampleError):
    """Coefficients non symétriques ou non nuls sur une diagonale."""


def _diagonal_mask(n: int, q: int) -> np.ndarray:
    """Vrai là où au moins deux indices coïncident."""
    grids = np.indices((n,) * q)
    mask = np.zeros((n,) * q, dtype=bool)
    for a in range(q):
        for b in range(a + 1, q):
            mask |= grids[a] == grids[b]
    return mask


@dataclass(frozen=True, eq=False)
class HomogeneousCoeff:
    n: int
    q: int
    coefficients: np.ndarray

    def __post_init__(self) -> None:
        h = np.array(self.coefficients, dtype=float)
        if self.q < 1 or h.shape != (self.n,) * self.q:
            raise CoefficientError(f"coefficients must have shape {(self.n,) * self.q}, got {h.shape}")
        scale = max(1.0, float(np.max(np.abs(h)))) if h.size else 1.0
        for perm in permutations(range(self.q)):
            if float(np.max(np.abs(h - np.transpose(h, perm)))) > SYMMETRY_TOL * scale:
                raise CoefficientError("coefficients must be symmetric under index permutation")
        if self.q > 1 and np.any(h[_diagonal_mask(self.n, self.q)] != 0.0):
            raise CoefficientError("coefficients must vanish on diagonals")
        h.setflags(write=False)
        object.__setattr__(self, "coefficients", h)

    @classmethod
    def complete(cls, n: int, q: int = 2) -> "HomogeneousCoeff":
        """h constant hors diagonales, normalisé pour E[H²] = q! Σ h² = 1."""
        if n < q:
            raise CoefficientError(f"need n >= q, got n={n}, q={q}")
        off = ~_diagonal_mask(n, q)
        count = math.perm(n, q)
        h = off.astype(float) / math.sqrt(math.factorial(q) * count)
        return cls(n, q, h)

    def variance(self) -> float:
        return math.factorial(self.q) * float(np.sum(self.coefficients**2))

    def to_tensor(self) -> SymTensor:
        """Noyau f = h de H_n(G, q) = I_q(f) (soumis aux limites denses des tenseurs)."""
        return SymTensor(self.coefficients, check=False)

    def to_kernel(self) -> Kernel2:
        if self.q != 2:
            raise CoefficientError(f"to_kernel needs q = 2, got {self.q}")
        return Kernel2(self.coefficients)

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        """H pour un lot x de forme (m, n)."""
        x = np.asarray(x, dtype=float)
        if x.shape[-1] != self.n:
            raise CoefficientError(f"draws have {x.shape[-1]} coordinates, coefficients {self.n}")
        acc = np.tensordot(x, self.coefficients, axes=([1], [0]))
        for _ in range(self.q - 1):
            acc = np.einsum("mi,mi...->m...", x, acc)
        return acc


def base_draws(base: str, rng: np.random.Generator, shape: tuple[int, int]) -> np.ndarray:
    """Lois centrées réduites : gaussienne, Rademacher, uniforme sur (−√3, √3)."""
    if base == "gaussian":
        return rng.standard_normal(shape)
    if base == "rademacher":
        return 2.0 * rng.integers(0, 2, size=shape) - 1.0
    if base == "uniform":
        return rng.uniform(-math.sqrt(3.0), math.sqrt(3.0), size=shape)
    raise SampleError(f"unknown base distribution {base!r}; expected one of {BASES}")


@dataclass(frozen=True)
class _HomogeneousDraw:
    coeff: HomogeneousCoeff
    base: str

    def __call__(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return self.coeff.evaluate(base_draws(self.base, rng, (n, self.coeff.n)))


def homogeneous_sum(
    c: HomogeneousCoeff,
    base: str,
    n_draws: int,
    seed: int,
    *,
    chunks: int = 8,
    workers: int = 1,
) -> SampleSet:
    """n_draws tirages i.i.d. de H_n(X, q) pour la base donnée."""
    if base not in BASES:
        raise SampleError(f"unknown base distribution {base!r}; expected one of {BASES}")
    if n_draws < 1:
        raise SampleError(f"n_draws must be >= 1, got {n_draws}")
    meta = {"generator": "homogeneous_sum", "base": base, "index_bound": c.n, "order": c.q}
    logger.debug("homogeneous sum", base=base, n=c.n, q=c.q, draws=n_draws)
    return SampleSet.generate(_HomogeneousDraw(c, base), n_draws, seed, meta, chunks=chunks, workers=workers)
