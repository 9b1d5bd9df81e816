"""
Évaluation de I_q(f) en coordonnées gaussiennes.

Pour f symétrique, I_q(f)(z) = Σ_idx f[idx] Π_j He_{m_j}(z_j), où m_j est la
multiplicité de la coordonnée j dans idx et He les polynômes d'Hermite
probabilistes. Les multi-indices sont regroupés par vecteur de multiplicités.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from math import factorial, prod

import numpy as np
from numpy.polynomial import hermite_e

from ..rng import SeedLike, chunked_draws
from .symmetric import SymTensor, TensorError, check_chaos_order


@lru_cache(maxsize=64)
def _multiplicity_classes(order: int, dim: int) -> tuple[tuple[tuple[int, ...], tuple[int, ...], int], ...]:
    """(indice canonique, multiplicités, nombre de multi-indices de la classe)."""
    out = []
    for idx in combinations_with_replacement(range(dim), order):
        mult = tuple(idx.count(j) for j in range(dim))
        count = factorial(order) // prod(factorial(m) for m in mult)
        out.append((idx, mult, count))
    return tuple(out)


def sample_multiple_integral(f: SymTensor, z: np.ndarray) -> float | np.ndarray:
    """I_q(f) évalué en z de forme (d,) ou (n, d)."""
    check_chaos_order(f)
    z = np.asarray(z, dtype=float)
    if f.order == 0:
        value = float(f.entries)
        return value if z.ndim == 1 else np.full(z.shape[0], value)
    if z.shape[-1] != f.dim:
        raise TensorError(f"coordinates have dimension {z.shape[-1]}, tensor has {f.dim}")
    # He_0..He_q pour chaque coordonnée : forme (..., d, q+1)
    he = hermite_e.hermevander(z, f.order)
    total = np.zeros(z.shape[:-1])
    for idx, mult, count in _multiplicity_classes(f.order, f.dim):
        coef = count * f.entries[idx]
        if coef == 0.0:
            continue
        term = np.ones(z.shape[:-1])
        for j, m in enumerate(mult):
            if m:
                term = term * he[..., j, m]
        total = total + coef * term
    return float(total) if total.ndim == 0 else total


@dataclass(frozen=True)
class _MultipleIntegralDraw:
    f: SymTensor

    def __call__(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return sample_multiple_integral(self.f, rng.standard_normal((n, self.f.dim)))


def sample_chaos(
    f: SymTensor,
    n: int,
    seed: SeedLike,
    *,
    chunks: int = 8,
    workers: int = 1,
) -> np.ndarray:
    """n tirages i.i.d. de I_q(f)."""
    if n < 1:
        raise TensorError(f"sample_chaos: n must be >= 1, got {n}")
    return chunked_draws(_MultipleIntegralDraw(f), n, seed, chunks=chunks, workers=workers)
