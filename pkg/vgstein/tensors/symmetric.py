"""
Tenseurs symétriques denses sur ℝ^d.

Les contractions travaillent sur des ndarray bruts (non symétrisés) ;
``symmetrize`` est appliqué une fois, là où le calcul demande un ⊗̃.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import numpy as np

from ..observability import get_logger

logger = get_logger("tensors.symmetric")

MAX_DIM = 6
MAX_CHAOS_ORDER = 4
MAX_TENSOR_ORDER = 8
SYMMETRY_TOL = 1e-12


class TensorError(ValueError):
    """Ordre ou dimension incompatible, tenseur non symétrique."""


class CapacityError(TensorError):
    """Dépasse les limites denses : d > 6, q > 4 ou ordre de contraction > 8."""


def _check_capacity(order: int, dim: int) -> None:
    if dim > MAX_DIM:
        raise CapacityError(f"dimension {dim} exceeds the dense limit {MAX_DIM}")
    if order > MAX_TENSOR_ORDER:
        raise CapacityError(f"tensor order {order} exceeds the dense limit {MAX_TENSOR_ORDER}")


def check_chaos_order(f: "SymTensor") -> None:
    if f.order > MAX_CHAOS_ORDER:
        raise CapacityError(f"chaos order {f.order} exceeds the limit {MAX_CHAOS_ORDER}")


class SymTensor:
    """Tenseur d'ordre q ≥ 0, invariant par toute permutation des indices."""

    def __init__(self, entries: np.ndarray | float, *, check: bool = True) -> None:
        t = np.array(entries, dtype=float)
        if t.ndim > 0:
            dim = t.shape[0]
            if any(s != dim for s in t.shape):
                raise TensorError(f"all axes must have the same length, got {t.shape}")
            _check_capacity(t.ndim, dim)
        if not np.all(np.isfinite(t)):
            raise TensorError("tensor entries must be finite")
        if check and t.ndim > 1:
            # les transpositions adjacentes engendrent le groupe symétrique
            for k in range(t.ndim - 1):
                dev = float(np.max(np.abs(t - np.swapaxes(t, k, k + 1))))
                if dev > SYMMETRY_TOL * max(1.0, float(np.max(np.abs(t)))):
                    raise TensorError(f"tensor is not symmetric in axes ({k}, {k + 1}): {dev:.3g}")
        t.setflags(write=False)
        self._t = t

    @property
    def entries(self) -> np.ndarray:
        return self._t

    @property
    def order(self) -> int:
        return self._t.ndim

    @property
    def dim(self) -> int:
        return self._t.shape[0] if self._t.ndim else 0

    def __repr__(self) -> str:
        return f"SymTensor(order={self.order}, dim={self.dim}, norm={self.norm():.6g})"

    def norm(self) -> float:
        return float(np.sqrt(np.sum(self._t * self._t)))

    def norm_squared(self) -> float:
        return float(np.sum(self._t * self._t))

    def inner(self, other: "SymTensor") -> float:
        if self._t.shape != other._t.shape:
            raise TensorError(f"shape mismatch {self._t.shape} vs {other._t.shape}")
        return float(np.sum(self._t * other._t))

    def __add__(self, other: "SymTensor") -> "SymTensor":
        if self._t.shape != other._t.shape:
            raise TensorError(f"shape mismatch {self._t.shape} vs {other._t.shape}")
        return SymTensor(self._t + other._t, check=False)

    def __sub__(self, other: "SymTensor") -> "SymTensor":
        return self + other.scaled(-1.0)

    def scaled(self, c: float) -> "SymTensor":
        return SymTensor(c * self._t, check=False)

    def rotated(self, q: np.ndarray) -> "SymTensor":
        """Changement de base orthogonal appliqué à chaque indice."""
        t = self._t
        for axis in range(t.ndim):
            t = np.moveaxis(np.tensordot(q, t, axes=([1], [axis])), 0, axis)
        return SymTensor(t, check=False)

    # ── Constructeurs ─────────────────────────────────────────

    @classmethod
    def zeros(cls, order: int, dim: int) -> "SymTensor":
        return cls(np.zeros((dim,) * order), check=False)

    @classmethod
    def rank_one(cls, v: Sequence[float], order: int) -> "SymTensor":
        """v^{⊗q}."""
        v = np.asarray(v, dtype=float)
        t = np.ones(())
        for _ in range(order):
            t = np.multiply.outer(t, v)
        return cls(t, check=False)

    @classmethod
    def basis_power(cls, i: int, order: int, dim: int) -> "SymTensor":
        """e_i^{⊗q}."""
        e = np.zeros(dim)
        e[i] = 1.0
        return cls.rank_one(e, order)

    # ── Sérialisation ─────────────────────────────────────────

    def to_flat(self) -> list[float]:
        return self._t.ravel().tolist()

    @classmethod
    def from_flat(cls, order: int, dim: int, entries: Sequence[float]) -> "SymTensor":
        arr = np.asarray(entries, dtype=float)
        if arr.size != dim**order:
            raise TensorError(f"expected {dim ** order} entries for order {order}, dim {dim}, got {arr.size}")
        return cls(arr.reshape((dim,) * order))

    def to_csv(self, path: str | Path) -> Path:
        """Une valeur par ligne, en-tête ``# order=q dim=d``."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        lines = [f"# order={self.order} dim={self.dim}"]
        lines += [format(v, ".17g") for v in self._t.ravel()]
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return path

    @classmethod
    def from_csv(cls, path: str | Path) -> "SymTensor":
        path = Path(path)
        if not path.exists():
            raise TensorError(f"tensor file not found: {path}")
        lines = path.read_text(encoding="utf-8").splitlines()
        if not lines or not lines[0].startswith("#"):
            raise TensorError(f"{path}: missing '# order=q dim=d' header")
        header = dict(tok.split("=", 1) for tok in lines[0].lstrip("# ").split())
        values = [float(v) for v in lines[1:] if v.strip()]
        return cls.from_flat(int(header["order"]), int(header["dim"]), values)


def random_sym_tensor(order: int, dim: int, seed: int) -> SymTensor:
    """Tenseur gaussien symétrisé, de norme 1."""
    rng = np.random.default_rng(seed)
    t = symmetrize(rng.standard_normal((dim,) * order))
    return t.scaled(1.0 / t.norm()) if t.norm() > 0 else t


# ── Contraction et symétrisation ──────────────────────────────────────────────


def _raw(t: "SymTensor | np.ndarray") -> np.ndarray:
    return t.entries if isinstance(t, SymTensor) else np.asarray(t, dtype=float)


def contract(f: "SymTensor | np.ndarray", g: "SymTensor | np.ndarray", r: int) -> np.ndarray:
    """
    f ⊗_r g : contraction des r derniers indices de f avec les r premiers de g.
    r = 0 donne f ⊗ g ; r = p = q donne le scalaire ⟨f, g⟩ (tableau 0-d).
    """
    a, b = _raw(f), _raw(g)
    p, q = a.ndim, b.ndim
    if not 0 <= r <= min(p, q):
        raise TensorError(f"contraction index {r} out of range for orders ({p}, {q})")
    if p and q and a.shape[0] != b.shape[0]:
        raise TensorError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")
    out_order = p + q - 2 * r
    if out_order > MAX_TENSOR_ORDER:
        raise CapacityError(f"contraction order {out_order} exceeds {MAX_TENSOR_ORDER}")
    axes_a = list(range(p - r, p))
    axes_b = list(range(r))
    return np.tensordot(a, b, axes=(axes_a, axes_b))


def symmetrize(t: "SymTensor | np.ndarray") -> SymTensor:
    """
    Moyenne sur toutes les permutations d'indices, calculée exactement par
    récurrence sur les classes S_k / S_{k−1} (k transpositions par étape).
    """
    s = _raw(t).copy()
    k_max = s.ndim
    if k_max:
        _check_capacity(k_max, s.shape[0])
    for k in range(1, k_max):
        acc = s.copy()
        for j in range(k):
            acc += np.swapaxes(s, j, k)
        s = acc / (k + 1)
    return SymTensor(s, check=False)


def sym_contract(f: "SymTensor | np.ndarray", g: "SymTensor | np.ndarray", r: int) -> SymTensor:
    """f ⊗̃_r g."""
    return symmetrize(contract(f, g, r))
