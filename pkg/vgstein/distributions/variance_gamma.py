"""
Variance-Gamma family VG(r, θ, σ, μ).

Density

    p(x) = exp(θ(x−μ)/σ²) (|x−μ| / 2α)^ν K_ν(α|x−μ|/σ²) / (σ √π Γ(r/2)),
    α = √(θ² + σ²),  ν = (r−1)/2,

mean μ + rθ and variance r(σ² + 2θ²). Moment and cumulant formulas (and the
Stein characterisation in ``vgstein.stein``) describe the centred variable
Y − E[Y]; they are only offered for μ = 0, the parametrisation used by the
second-chaos limit theorems.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy import special

from ..observability import get_logger
from ..rng import SeedLike, chunked_draws
from .bessel import log_bessel_kve
from .cumulants import CumulantSet

logger = get_logger("distributions.vg")

_GL16 = np.polynomial.legendre.leggauss(16)
_GL12 = np.polynomial.legendre.leggauss(12)
_GRADING_LEVELS = 48
_MAX_INTERVALS = 40_000
_TAIL_MASS = 1e-17
EXPECTATION_TOL = 1e-10


# ── Exceptions ────────────────────────────────────────────────────────────────


class ParameterError(ValueError):
    """Paramètres hors domaine ; le message nomme l'opération ou le constructeur."""


class PoleAtLocation(ArithmeticError):
    """Densité infinie en x = μ (r ≤ 1) ; intégrer en excluant ce point."""


class UnsupportedLocation(ValueError):
    """Formule disponible uniquement pour μ = 0."""


class DomainError(ValueError):
    """Argument de quantile hors de (0, 1)."""


class QuadratureError(RuntimeError):
    """Quadrature non convergée ; ``diagnostic`` décrit les deux estimations."""

    def __init__(self, message: str, diagnostic: dict[str, float]) -> None:
        super().__init__(message)
        self.diagnostic = diagnostic


# ── Paramètres ────────────────────────────────────────────────────────────────


@dataclass(frozen=True)
class VGParams:
    """
    r     shape (> 0)
    theta asymmetry
    sigma tail scale (> 0)
    mu    location

    ``provenance`` records the special-case constructor that built the value;
    it does not take part in equality or hashing.
    """

    r: float
    theta: float = 0.0
    sigma: float = 1.0
    mu: float = 0.0
    provenance: str = field(default="raw", compare=False)

    def __post_init__(self) -> None:
        for name in ("r", "theta", "sigma", "mu"):
            if not math.isfinite(getattr(self, name)):
                raise ParameterError(f"{self.provenance}: {name} must be finite")
        if self.r <= 0:
            raise ParameterError(f"{self.provenance}: r must be > 0, got {self.r}")
        if self.sigma <= 0:
            raise ParameterError(f"{self.provenance}: sigma must be > 0, got {self.sigma}")

    @property
    def alpha(self) -> float:
        return math.hypot(self.theta, self.sigma)

    @property
    def nu(self) -> float:
        return 0.5 * (self.r - 1.0)

    @property
    def mean(self) -> float:
        return self.mu + self.r * self.theta

    @property
    def variance(self) -> float:
        return self.r * (self.sigma**2 + 2.0 * self.theta**2)

    @property
    def scale(self) -> float:
        """Longueur caractéristique σ²/α du cœur de la densité."""
        return self.sigma**2 / self.alpha

    def centred(self) -> "VGParams":
        """Même loi translatée pour être de moyenne nulle (μ = −rθ)."""
        return replace(self, mu=-self.r * self.theta)

    def as_dict(self) -> dict[str, float | str]:
        return {
            "r": self.r,
            "theta": self.theta,
            "sigma": self.sigma,
            "mu": self.mu,
            "provenance": self.provenance,
        }


def _require_centred(p: VGParams, op: str) -> None:
    if p.mu != 0.0:
        raise UnsupportedLocation(f"{op}: only mu = 0 is supported, got mu={p.mu}")


# ── Densité ───────────────────────────────────────────────────────────────────


def density_at_location(p: VGParams) -> float:
    """Limite finie de la densité en x = μ, définie seulement pour r > 1."""
    if p.r <= 1.0:
        raise PoleAtLocation(f"density has a pole at x = mu when r <= 1 (r={p.r})")
    nu = p.nu
    log_value = (
        special.gammaln(nu)
        - math.log(2.0 * p.sigma * math.sqrt(math.pi))
        - special.gammaln(0.5 * p.r)
        + nu * math.log(p.sigma**2 / p.alpha**2)
    )
    return math.exp(log_value)


def _density_off_location(p: VGParams, u: np.ndarray) -> np.ndarray:
    au = np.abs(u)
    z = p.alpha * au / p.sigma**2
    log_norm = math.log(p.sigma * math.sqrt(math.pi)) + special.gammaln(0.5 * p.r)
    log_p = (
        p.theta * u / p.sigma**2
        + p.nu * np.log(au / (2.0 * p.alpha))
        + log_bessel_kve(abs(p.nu), z)
        - z
        - log_norm
    )
    return np.exp(log_p)


def vg_density(p: VGParams, x: float | np.ndarray) -> float | np.ndarray:
    """Densité de VG(r, θ, σ, μ) ; PoleAtLocation si x = μ et r ≤ 1."""
    arr = np.asarray(x, dtype=float)
    u = arr - p.mu
    at_loc = u == 0.0
    out = np.empty_like(u)
    if np.any(at_loc):
        out[at_loc] = density_at_location(p)
    if not np.all(at_loc):
        out[~at_loc] = _density_off_location(p, u[~at_loc])
    return float(out) if out.ndim == 0 else out


def symgamma_density(lam: float, r: float, x: float | np.ndarray) -> float | np.ndarray:
    """Forme fermée λ^r |x|^{r−1} e^{−λ|x|} / (2Γ(r)) ; égale à VG_c(2r, 0, 1/λ) pour r = 1."""
    ax = np.abs(np.asarray(x, dtype=float))
    log_p = r * math.log(lam) + (r - 1.0) * np.log(ax) - lam * ax - math.log(2.0) - special.gammaln(r)
    out = np.exp(log_p)
    return float(out) if out.ndim == 0 else out


def laplace_density(b: float, x: float | np.ndarray) -> float | np.ndarray:
    out = np.exp(-np.abs(np.asarray(x, dtype=float)) / b) / (2.0 * b)
    return float(out) if out.ndim == 0 else out


def laplace_cdf(b: float, x: float | np.ndarray) -> float | np.ndarray:
    arr = np.asarray(x, dtype=float)
    out = np.where(arr < 0, 0.5 * np.exp(arr / b), 1.0 - 0.5 * np.exp(-arr / b))
    return float(out) if out.ndim == 0 else out


# ── Moments et cumulants (loi centrée) ────────────────────────────────────────


def vg_cumulants(p: VGParams) -> CumulantSet:
    """κ₁…κ₆ de Y − E[Y] (formes fermées) ; μ ≠ 0 non supporté."""
    _require_centred(p, "vg_cumulants")
    r, t, s2 = p.r, p.theta, p.sigma**2
    t2 = t * t
    return CumulantSet(
        (
            0.0,
            r * (s2 + 2 * t2),
            2 * r * t * (3 * s2 + 4 * t2),
            6 * r * (s2 * s2 + 8 * s2 * t2 + 8 * t2 * t2),
            24 * r * t * (5 * s2 * s2 + 20 * s2 * t2 + 16 * t2 * t2),
            120 * r * (s2 + 2 * t2) * (s2 * s2 + 16 * s2 * t2 + 16 * t2 * t2),
        )
    )


def vg_moments(p: VGParams) -> tuple[float, ...]:
    """Moments m₁…m₆ de Y − E[Y] par les récurrences de la caractérisation de Stein."""
    _require_centred(p, "vg_moments")
    r, t, s2 = p.r, p.theta, p.sigma**2
    m2 = r * (s2 + 2 * t * t)
    m3 = 2 * r * t * s2 + 4 * t * m2
    m4 = (3 * s2 * (2 + r) + 6 * r * t * t) * m2 + 6 * t * m3
    m5 = 12 * r * t * s2 * m2 + (8 * r * t * t + 4 * r * s2 + 12 * s2) * m3 + 8 * t * m4
    m6 = 20 * r * t * s2 * m3 + (5 * s2 * (4 + r) + 10 * r * t * t) * m4 + 10 * t * m5
    return (0.0, m2, m3, m4, m5, m6)


# ── Échantillonnage ───────────────────────────────────────────────────────────


def _draw(p: VGParams, rng: np.random.Generator, n: int) -> np.ndarray:
    # numpy's gamma generator is a rejection sampler valid for every shape > 0
    v = rng.gamma(shape=0.5 * p.r, scale=2.0, size=n)
    z = rng.standard_normal(n)
    return p.mu + p.theta * v + p.sigma * np.sqrt(v) * z


def vg_sample(
    p: VGParams,
    n: int,
    seed: SeedLike,
    *,
    chunks: int = 8,
    workers: int = 1,
) -> np.ndarray:
    """Tirages i.i.d. Y = μ + θV + σ√V Z, V ~ Gamma(r/2, échelle 2) ; déterministe en (seed, chunks)."""
    if n < 1:
        raise ParameterError(f"vg_sample: n must be >= 1, got {n}")
    return chunked_draws(_VGDraw(p), n, seed, chunks=chunks, workers=workers)


@dataclass(frozen=True)
class _VGDraw:
    p: VGParams

    def __call__(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return _draw(self.p, rng, n)


# ── Table de quadrature (cdf, quantile, espérances) ───────────────────────────


@dataclass(frozen=True)
class _Table:
    nodes: np.ndarray
    cdf: np.ndarray
    pdf: np.ndarray
    x16: np.ndarray
    w16: np.ndarray
    x12: np.ndarray
    w12: np.ndarray
    inner_mass: float  # masse des deux intervalles [μ ± δ] quand r ≤ 1
    location: float


def _tail_length(p: VGParams, sign: float) -> float:
    k = (p.alpha - sign * p.theta) / p.sigma**2
    length = 8.0 / k
    while _density_off_location(p, np.array([sign * length]))[0] / k > _TAIL_MASS:
        length *= 1.25
    return length


def _side_nodes(p: VGParams, length: float) -> np.ndarray:
    """Nœuds u ≥ 0 : maillage géométrique vers 0 puis pas uniforme."""
    s = min(p.scale, 0.5 * length)
    graded = s * 0.5 ** np.arange(_GRADING_LEVELS, 0, -1)
    step = max(s / 40.0, length / _MAX_INTERVALS)
    uniform = np.arange(s, length, step)
    return np.concatenate(([0.0], graded, uniform, [length]))


def _interval_rule(a: np.ndarray, b: np.ndarray, rule: tuple[np.ndarray, np.ndarray]):
    t, w = rule
    half = 0.5 * (b - a)
    mid = 0.5 * (b + a)
    x = mid[:, None] + half[:, None] * t[None, :]
    return x, half[:, None] * w[None, :]


@lru_cache(maxsize=32)
def _table(p: VGParams) -> _Table:
    right = _side_nodes(p, _tail_length(p, +1.0))
    left = _side_nodes(p, _tail_length(p, -1.0))
    u = np.concatenate((-left[::-1], right[1:]))
    loc_idx = left.size - 1

    pdf = np.empty_like(u)
    off = u != 0.0
    pdf[off] = _density_off_location(p, u[off])
    pdf[loc_idx] = density_at_location(p) if p.r > 1.0 else np.inf

    a, b = u[:-1], u[1:]
    x16, w16 = _interval_rule(a, b, _GL16)
    x12, w12 = _interval_rule(a, b, _GL12)
    w16 = w16 * _density_off_location(p, x16)
    w12 = w12 * _density_off_location(p, x12)

    masses = w16.sum(axis=1)
    inner_mass = 0.0
    if p.r <= 1.0:
        # p(u) ~ c|u|^{r−1} near the pole: ∫₀^δ p = p(δ) δ / r
        for j in (loc_idx - 1, loc_idx):
            delta = b[j] - a[j]
            edge = pdf[j] if j == loc_idx - 1 else pdf[j + 1]
            masses[j] = edge * delta / p.r
            w16[j] = 0.0
            w12[j] = 0.0
            inner_mass += masses[j]

    total = masses.sum()
    if abs(total - 1.0) > 1e-8:
        logger.warning("quadrature table mass differs from one", total=total, params=str(p))
    cdf = np.concatenate(([0.0], np.cumsum(masses))) / total
    logger.debug("quadrature table built", intervals=int(a.size), mass=total, r=p.r, theta=p.theta)
    return _Table(
        nodes=u + p.mu,
        cdf=cdf,
        pdf=pdf / total,
        x16=(x16 + p.mu).ravel(),
        w16=(w16 / total).ravel(),
        x12=(x12 + p.mu).ravel(),
        w12=(w12 / total).ravel(),
        inner_mass=inner_mass / total,
        location=p.mu,
    )


def _cdf_from_table(t: _Table, x: np.ndarray) -> np.ndarray:
    idx = np.clip(np.searchsorted(t.nodes, x, side="right") - 1, 0, t.nodes.size - 2)
    a, b = t.nodes[idx], t.nodes[idx + 1]
    fa, fb = t.cdf[idx], t.cdf[idx + 1]
    pa, pb = t.pdf[idx], t.pdf[idx + 1]
    h = b - a
    s = np.clip((x - a) / h, 0.0, 1.0)
    finite = np.isfinite(pa) & np.isfinite(pb)
    pa = np.where(finite, pa, 0.0)
    pb = np.where(finite, pb, 0.0)
    s2, s3 = s * s, s * s * s
    hermite = (
        (2 * s3 - 3 * s2 + 1) * fa
        + (s3 - 2 * s2 + s) * h * pa
        + (-2 * s3 + 3 * s2) * fb
        + (s3 - s2) * h * pb
    )
    value = np.where(finite, hermite, fa + s * (fb - fa))
    value = np.clip(value, fa, fb)
    value = np.where(x <= t.nodes[0], 0.0, value)
    return np.where(x >= t.nodes[-1], 1.0, value)


def vg_cdf(p: VGParams, x: float | np.ndarray) -> float | np.ndarray:
    """Fonction de répartition, interpolée sur la table de quadrature mise en cache."""
    arr = np.asarray(x, dtype=float)
    out = _cdf_from_table(_table(p), arr)
    return float(out) if out.ndim == 0 else out


def vg_quantile(p: VGParams, u: float | np.ndarray) -> float | np.ndarray:
    """Quantile par bissection monotone sur la cdf tabulée."""
    arr = np.asarray(u, dtype=float)
    if np.any(~((arr > 0.0) & (arr < 1.0))):
        raise DomainError("vg_quantile: u must lie in the open interval (0, 1)")
    t = _table(p)
    idx = np.clip(np.searchsorted(t.cdf, arr, side="right") - 1, 0, t.nodes.size - 2)
    lo = t.nodes[idx].astype(float)
    hi = t.nodes[idx + 1].astype(float)
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        below = _cdf_from_table(t, mid) < arr
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
        if np.all(hi - lo <= 1e-14 * (1.0 + np.abs(hi))):
            break
    out = 0.5 * (lo + hi)
    return float(out) if out.ndim == 0 else out


def vg_expect(
    p: VGParams,
    g: Callable[[np.ndarray], np.ndarray],
    *,
    centred: bool = False,
    tol: float = EXPECTATION_TOL,
) -> float:
    """
    E[g(Y)] par Gauss–Legendre par intervalles sur la table, contrôlé par une
    seconde règle ; ``centred=True`` intègre g(Y − E[Y]).
    """
    t = _table(p)
    shift = p.mean if centred else 0.0

    def _apply(x: np.ndarray) -> np.ndarray:
        values = np.asarray(g(x), dtype=float)
        if values.shape != x.shape:
            values = np.vectorize(g, otypes=[float])(x)
        return values

    fine = math.fsum(_apply(t.x16 - shift) * t.w16)
    coarse = math.fsum(_apply(t.x12 - shift) * t.w12)
    if t.inner_mass:
        inner = float(_apply(np.array([t.location - shift]))[0]) * t.inner_mass
        fine += inner
        coarse += inner
    if not math.isfinite(fine) or abs(fine - coarse) > tol * (1.0 + abs(fine)):
        raise QuadratureError(
            "vg_expect did not converge",
            {"fine": fine, "coarse": coarse, "tol": tol},
        )
    return fine


def vg_tail_bounds(p: VGParams) -> tuple[float, float]:
    """Domaine de troncature [x_min, x_max] de la table (masse extérieure < 1e−17)."""
    t = _table(p)
    return float(t.nodes[0]), float(t.nodes[-1])


def vg_mean(p: VGParams) -> float:
    return p.mean


def vg_variance(p: VGParams) -> float:
    return p.variance
