"""
Résolution numérique de l'équation de Stein Variance-Gamma centrée

    σ²(x + rθ) f''(x) + (σ²r + 2θ(x + rθ)) f'(x) − x f(x) = h(x) − E[h(X)],

X suivant VG(r, θ, σ) centrée. Collocation de Chebyshev–Lobatto sur
[−T₋, T₊] (masse extérieure < 1e−14) avec les conditions de Dirichlet
f(±T) = −g(±T)/(±T), comportement borné à l'ordre dominant. La taille N
double jusqu'à ce que les coefficients de queue et le résidu hors grille
passent sous les seuils.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from pathlib import Path
from typing import Callable, Sequence

import numpy as np
from numpy.polynomial import Chebyshev
from scipy import fft, linalg

from ..distributions import VGParams, vg_density, vg_expect
from ..observability import get_logger
from .characterization import SmoothFunction

logger = get_logger("stein.solver")

TAIL_MASS = 1e-14
COEF_TOL = 1e-12
RESIDUAL_TOL = 1e-6
INTERIOR_FRACTION = 0.8
N_START = 64
N_MAX = 2048


class CollocationError(RuntimeError):
    """La collocation n'a pas convergé ; ``profile`` contient le résidu par taille N."""

    def __init__(self, message: str, profile: dict[str, list[float]]) -> None:
        super().__init__(message)
        self.profile = profile


# ── Grille ────────────────────────────────────────────────────────────────────


def _truncation(p: VGParams) -> tuple[float, float]:
    """Bornes [−T₋, T₊] de la variable centrée, masse de queue < TAIL_MASS de chaque côté."""
    centred = p.centred()
    loc = centred.mu
    ends = []
    for sign in (-1.0, 1.0):
        k = (p.alpha - sign * p.theta) / p.sigma**2
        length = 4.0 / k
        while float(vg_density(centred, loc + sign * length)) / k > TAIL_MASS:
            length *= 1.25
        ends.append(loc + sign * length)
    return ends[0], ends[1]


def cheb_matrix(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Nœuds ξ_j = cos(πj/n) et matrice de dérivation de Chebyshev associée."""
    j = np.arange(n + 1)
    xi = np.cos(np.pi * j / n)
    c = np.hstack(([2.0], np.ones(n - 1), [2.0])) * (-1.0) ** j
    dx = xi[:, None] - xi[None, :]
    d = np.outer(c, 1.0 / c) / (dx + np.eye(n + 1))
    d -= np.diag(d.sum(axis=1))
    return xi, d


def _coefficients(values: np.ndarray) -> np.ndarray:
    """Valeurs aux nœuds de Lobatto → coefficients de Chebyshev (DCT-I)."""
    n = values.size - 1
    coef = fft.dct(values, type=1) / n
    coef[0] *= 0.5
    coef[-1] *= 0.5
    return coef


def _avoid_singular_node(n: int, mid: float, half: float, x0: float) -> int:
    # le coefficient de f'' s'annule en x0 = −rθ
    for candidate in range(n, n + 4):
        xi = np.cos(np.pi * np.arange(candidate + 1) / candidate)
        if np.min(np.abs(mid + half * xi - x0)) > 1e-10 * half:
            return candidate
    return n


# ── Solution ──────────────────────────────────────────────────────────────────


@dataclass
class SteinSolution:
    """f_h tabulée ; prolongée par constante hors de [a, b] (dérivées nulles)."""

    params: VGParams
    domain: tuple[float, float]
    size: int
    h_mean: float
    series: Chebyshev
    residual: float
    tail: float
    profile: dict[str, list[float]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self._d1 = self.series.deriv(1)
        self._d2 = self.series.deriv(2)

    def _inside(self, x: np.ndarray) -> np.ndarray:
        a, b = self.domain
        return (x >= a) & (x <= b)

    def f(self, x: float | np.ndarray) -> float | np.ndarray:
        arr = np.asarray(x, dtype=float)
        out = self.series(np.clip(arr, *self.domain))
        return float(out) if out.ndim == 0 else out

    def df(self, x: float | np.ndarray) -> float | np.ndarray:
        arr = np.asarray(x, dtype=float)
        out = np.where(self._inside(arr), self._d1(np.clip(arr, *self.domain)), 0.0)
        return float(out) if out.ndim == 0 else out

    def d2f(self, x: float | np.ndarray) -> float | np.ndarray:
        arr = np.asarray(x, dtype=float)
        out = np.where(self._inside(arr), self._d2(np.clip(arr, *self.domain)), 0.0)
        return float(out) if out.ndim == 0 else out

    def nodes(self) -> np.ndarray:
        """Nœuds de collocation, par ordre croissant."""
        a, b = self.domain
        xi = np.cos(np.pi * np.arange(self.size + 1) / self.size)[::-1]
        return 0.5 * (a + b) + 0.5 * (b - a) * xi

    def as_smooth(self) -> SmoothFunction:
        return SmoothFunction(self.f, self.df, self.d2f, name="f_h")

    def sup_norms(self, points: int = 8001) -> dict[str, float]:
        """‖f‖∞, ‖f'‖∞, ‖f''‖∞ sur une grille fine du domaine."""
        x = np.linspace(*self.domain, points)
        return {
            "f": float(np.max(np.abs(self.series(x)))),
            "df": float(np.max(np.abs(self._d1(x)))),
            "d2f": float(np.max(np.abs(self._d2(x)))),
        }

    def to_csv(self, path: str | Path) -> Path:
        """Colonnes x, f, df, d2f aux nœuds de collocation."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        x = self.nodes()
        rows = np.column_stack((x, self.series(x), self._d1(x), self._d2(x)))
        lines = ["x,f,df,d2f"]
        lines += [",".join(format(v, ".17g") for v in row) for row in rows]
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return path


# ── Résolution ────────────────────────────────────────────────────────────────


def _vectorized(h: Callable) -> Callable[[np.ndarray], np.ndarray]:
    def _apply(x: np.ndarray) -> np.ndarray:
        values = np.asarray(h(x), dtype=float)
        if values.shape != x.shape:
            values = np.vectorize(h, otypes=[float])(x)
        return values

    return _apply


def _collocate(p: VGParams, g: Callable, a: float, b: float, n: int) -> np.ndarray:
    xi, d = cheb_matrix(n)
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    x = mid + half * xi
    d1 = d / half
    d2 = (d @ d) / half**2
    u = x + p.r * p.theta
    op = (p.sigma**2 * u)[:, None] * d2 + (p.sigma**2 * p.r + 2.0 * p.theta * u)[:, None] * d1
    op -= np.diag(x)
    rhs = g(x)
    # Dirichlet en ξ = ±1 (lignes 0 et n)
    for row in (0, n):
        op[row] = 0.0
        op[row, row] = 1.0
        rhs[row] = -rhs[row] / x[row]
    return linalg.solve(op, rhs)


def _interior_residual(p: VGParams, g: Callable, series: Chebyshev, a: float, b: float) -> float:
    margin = 0.5 * (1.0 - INTERIOR_FRACTION) * (b - a)
    x = np.linspace(a + margin, b - margin, 4001)
    u = x + p.r * p.theta
    lhs = (
        p.sigma**2 * u * series.deriv(2)(x)
        + (p.sigma**2 * p.r + 2.0 * p.theta * u) * series.deriv(1)(x)
        - x * series(x)
    )
    return float(np.max(np.abs(lhs - g(x))))


def solve_stein(
    params: VGParams,
    h: Callable,
    *,
    n: int | None = None,
    n_max: int = N_MAX,
    tol: float = RESIDUAL_TOL,
) -> SteinSolution:
    """
    Résout l'équation de Stein pour h (fonction de la variable centrée).

    ``n`` fixe la taille de collocation ; sinon N part de 64 et double
    jusqu'à ``n_max``. Lève CollocationError si le résidu sur les 80 %
    intérieurs du domaine reste au-dessus de ``tol``.
    """
    base = VGParams(params.r, params.theta, params.sigma, 0.0, provenance=params.provenance)
    hv = _vectorized(h)
    h_mean = vg_expect(base, hv, centred=True)

    def g(x: np.ndarray) -> np.ndarray:
        return hv(x) - h_mean

    a, b = _truncation(base)
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    x0 = -base.r * base.theta
    sizes = [n] if n is not None else []
    if n is None:
        size = min(N_START, n_max)
        while size <= n_max:
            sizes.append(size)
            size *= 2

    profile: dict[str, list[float]] = {"n": [], "residual": [], "tail": []}
    gscale = max(1.0, float(np.max(np.abs(g(np.linspace(a, b, 2001))))))
    for size in sizes:
        size = _avoid_singular_node(size, mid, half, x0)
        values = _collocate(base, g, a, b, size)
        series = Chebyshev(_coefficients(values), domain=[a, b])
        coef = np.abs(series.coef)
        width = max(8, size // 10)
        top = float(coef.max())
        tail = float(coef[-width:].max()) / top if top > 0 else 0.0
        residual = _interior_residual(base, g, series, a, b)
        profile["n"].append(float(size))
        profile["residual"].append(residual)
        profile["tail"].append(tail)
        logger.debug("collocation", n=size, residual=residual, tail=tail, domain=f"[{a:.4g}, {b:.4g}]")
        converged = residual <= tol * gscale
        if converged and (tail <= COEF_TOL or n is not None or size == sizes[-1]):
            if tail > COEF_TOL and n is None:
                logger.warning("chebyshev tail above tolerance", n=size, tail=tail)
            return SteinSolution(
                params=params,
                domain=(a, b),
                size=size,
                h_mean=h_mean,
                series=series,
                residual=residual,
                tail=tail,
                profile=profile,
            )
    raise CollocationError(
        f"stein collocation did not reach residual {tol:g} (last {profile['residual'][-1]:.3g})",
        profile,
    )


def solve_stein_batch(
    params: VGParams,
    hs: Sequence[Callable],
    *,
    n: int | None = None,
    workers: int = 1,
) -> list[SteinSolution]:
    """Une résolution par h, dans l'ordre ; les h doivent être picklables si workers > 1."""
    job = partial(solve_stein, params, n=n)
    if workers > 1 and len(hs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(job, hs))
    return [job(h) for h in hs]


def constant_bound_check(solution: SteinSolution, lam: float, r: int, h: Callable) -> dict[str, float]:
    """
    Compare ‖f_h^{(j)}‖∞ aux constantes explicites pour Γ_s(λ, r), r entier :
    marges c_j·‖h − Eh‖ (c2_1‖h'‖ + c2_2‖h − Eh‖ pour j = 2) moins la norme observée.
    """
    from .constants import stein_constants

    c = stein_constants(lam, r)
    a, b = solution.domain
    x = np.linspace(a, b, 8001)
    hv = _vectorized(h)(x)
    dev = float(np.max(np.abs(hv - solution.h_mean)))
    slope = float(np.max(np.abs(np.gradient(hv, x))))
    norms = solution.sup_norms()
    return {
        "h_dev": dev,
        "h_lip": slope,
        "f_margin": c.c0 * dev - norms["f"],
        "df_margin": c.c1 * dev - norms["df"],
        "d2f_margin": c.c2_1 * slope + c.c2_2 * dev - norms["d2f"],
    }

