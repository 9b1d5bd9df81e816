"""
Exécution des expériences décrites par une ExperimentConfig.

Chaque expérience renvoie un ExperimentResult (colonnes, lignes, résumé,
rapports de bornes). ``run`` écrit ``<kind>.csv`` et ``<kind>.json`` dans
le répertoire de sortie ; à configuration identique, les fichiers sont
identiques (hors ligne ``# generated`` supprimée par --reproducible).
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

import numpy as np

from ..__version__ import __version__
from ..chaos import (
    Kernel2,
    SpectralKernel,
    as_kernel,
    cumulant_set,
    exact_symgamma_kernel,
    gauss_bound2,
    random_kernel,
    sample_chaos2,
    six_moment_check,
    vg_bound2,
)
from ..configurations import (
    ExperimentConfig,
    KernelSection,
    MonteCarloSection,
    TargetSection,
    TensorSection,
)
from ..distributions import VGParams, special_case, sym_gamma, vg_cumulants, vg_sample
from ..empirical import (
    HomogeneousCoeff,
    SampleSet,
    homogeneous_sum,
    k_statistics,
    multivariate_bound,
    wasserstein_1d,
    wasserstein_to_normal,
    wasserstein_to_vg,
)
from ..observability import get_logger
from ..stein import (
    SmoothFunction,
    constant_bound_check,
    laplace_identity,
    normal_residual,
    residual_symgamma,
    residual_vg,
    solve_stein,
)
from ..tensors import SymTensor, mixed_sum_bound, sample_chaos, vg_contraction_bound
from .tables import write_csv, write_json

logger = get_logger("cli.runner")


class UnknownExperiment(KeyError):
    """Nom d'expérience absent du registre."""


@dataclass
class ExperimentResult:
    kind: str
    columns: list[str]
    rows: list[list[Any]]
    summary: dict[str, Any] = field(default_factory=dict)
    reports: list[dict[str, Any]] = field(default_factory=list)


# ── Construction des objets à partir de la configuration ─────────────────────


def build_kernel(section: KernelSection) -> Kernel2 | SpectralKernel:
    if section.spec == "exact_symgamma":
        return exact_symgamma_kernel(section.m, section.lam)
    if section.spec == "diag":
        return Kernel2.diag(section.entries)
    if section.spec == "matrix":
        return Kernel2(section.entries)
    if section.spec == "file":
        return Kernel2.from_csv(section.path)
    if section.spec == "random":
        return random_kernel(section.dim, section.seed)
    raise UnknownExperiment(f"unknown kernel spec {section.spec!r}")


def build_tensor(section: TensorSection) -> SymTensor:
    if section.path:
        return SymTensor.from_csv(section.path)
    return SymTensor.from_flat(section.order, section.dim, section.entries)


def build_target(section: TargetSection) -> VGParams:
    if section.special:
        return special_case(section.special, section.args)
    return VGParams(section.r, section.theta, section.sigma, section.mu)


# ── Ajustements ───────────────────────────────────────────────────────────────


def fit_loglog_slope(xs: list[float], ys: list[float]) -> float:
    """Pente des moindres carrés de log y contre log x."""
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.size < 2 or np.any(x <= 0) or np.any(y <= 0):
        raise ValueError("log-log fit needs at least two strictly positive points")
    slope, _ = np.polyfit(np.log(x), np.log(y), 1)
    return float(slope)


def is_monotone_decreasing(values: list[float], strict: bool = False) -> bool:
    pairs = zip(values[:-1], values[1:])
    return all(b < a for a, b in pairs) if strict else all(b <= a for a, b in pairs)


def _trend(xs: list[float], ys: list[float]) -> dict[str, Any]:
    out: dict[str, Any] = {"monotone_decreasing": is_monotone_decreasing(ys)}
    try:
        out["loglog_slope"] = fit_loglog_slope(xs, ys)
    except ValueError:
        out["loglog_slope"] = None
    return out


def _streams(config: ExperimentConfig, count: int) -> list[np.random.SeedSequence]:
    return np.random.SeedSequence(config.monte_carlo.seed).spawn(count)


def _map_rows(job: Callable[[Any], Any], items: list[Any], workers: int) -> list[Any]:
    """
    Évalue ``job`` sur chaque indice de la suite, résultats dans l'ordre des indices.

    Avec workers > 1 les indices passent par un ProcessPoolExecutor ; chaque
    ligne a son propre flux, donc la sortie ne dépend pas de ``workers``.
    """
    if workers > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(items))) as pool:
            return list(pool.map(job, items))
    return [job(item) for item in items]


def _inner_workers(mc: MonteCarloSection, rows: int) -> int:
    # pas de pool imbriqué : si les lignes sont parallèles, chaque tirage reste séquentiel
    return 1 if mc.workers > 1 and rows > 1 else mc.workers


# ── Expériences de convergence ────────────────────────────────────────────────


@dataclass(frozen=True)
class _SixMomentRow:
    base: Kernel2
    perturbation: Kernel2
    target: VGParams
    n_mc: int
    seed: int
    chunks: int
    workers: int

    def __call__(self, item: tuple[int, np.random.SeedSequence]) -> tuple[list[Any], dict[str, Any]]:
        n, stream = item
        a = self.base + self.perturbation.scaled(1.0 / n)
        gaps = six_moment_check(a, self.target)
        report = vg_bound2(a, self.target)
        draws = sample_chaos2(a, self.n_mc, stream, chunks=self.chunks, workers=self.workers)
        dw = wasserstein_to_vg(SampleSet(draws, self.seed, {"row": n}), self.target)
        row = [n, gaps["m2_gap"], gaps["m4_gap"], gaps["m6_gap"], report.interior, report.total, dw]
        return row, {"n": n, **report.to_dict()}


def six_moment(config: ExperimentConfig) -> ExperimentResult:
    """A_n = noyau exact Γ_s(λ, m/2) + perturbation fixe / n."""
    mc = config.monte_carlo
    ks = config.kernel
    base = exact_symgamma_kernel(ks.m, ks.lam).to_kernel()
    target = sym_gamma(ks.lam, ks.m / 2.0)
    n_values = config.experiment.n_values
    job = _SixMomentRow(
        base,
        random_kernel(base.dim, ks.seed, config.experiment.perturbation_scale),
        target,
        mc.n_mc,
        mc.seed,
        mc.chunks,
        _inner_workers(mc, len(n_values)),
    )

    result = ExperimentResult(
        "six_moment",
        ["n", "m2_gap", "m4_gap", "m6_gap", "bound_interior", "bound_total", "empirical_dW"],
        [],
    )
    for row, report in _map_rows(job, list(zip(n_values, _streams(config, len(n_values)))), mc.workers):
        result.rows.append(row)
        result.reports.append(report)
        logger.info("six_moment row", n=row[0], bound=row[5], dW=row[6])

    result.summary["bound_total"] = _trend(n_values, [row[5] for row in result.rows])
    result.summary["empirical_dW"] = _trend(n_values, [row[6] for row in result.rows])
    result.summary["target"] = target.as_dict()
    return result


@dataclass(frozen=True)
class _CltRow:
    n_mc: int
    seed: int
    chunks: int
    workers: int

    def __call__(self, item: tuple[int, np.random.SeedSequence]) -> tuple[list[Any], dict[str, Any]]:
        n, stream = item
        a = SpectralKernel((1.0 / math.sqrt(n),) * n)
        k = cumulant_set(a)
        report = gauss_bound2(a, 2.0)
        draws = sample_chaos2(a, self.n_mc, stream, chunks=self.chunks, workers=self.workers)
        dw = wasserstein_to_normal(SampleSet(draws, self.seed, {"row": n}), 2.0)
        t = report.terms
        row = [n, k[2], k[3], k[4], k[6], t["T"], t["sqrt_T"], t["variance_gap"], dw]
        return row, {"n": n, **report.to_dict()}


def clt(config: ExperimentConfig) -> ExperimentResult:
    """A_n = diag(1/√n, …, 1/√n) de taille n, cible N(0, 2)."""
    mc = config.monte_carlo
    n_values = config.experiment.n_values
    job = _CltRow(mc.n_mc, mc.seed, mc.chunks, _inner_workers(mc, len(n_values)))
    result = ExperimentResult(
        "clt",
        ["n", "kappa2", "kappa3", "kappa4", "kappa6", "T", "sqrt_T", "variance_gap", "empirical_dW"],
        [],
    )
    for row, report in _map_rows(job, list(zip(n_values, _streams(config, len(n_values)))), mc.workers):
        result.rows.append(row)
        result.reports.append(report)
        logger.info("clt row", n=row[0], sqrt_T=row[6], dW=row[8])

    result.summary["sqrt_T"] = _trend(n_values, [row[6] for row in result.rows])
    result.summary["empirical_dW"] = _trend(n_values, [row[8] for row in result.rows])
    return result


@dataclass(frozen=True)
class _UniversalityRow:
    n_mc: int
    chunks: int
    workers: int

    def __call__(self, item: tuple[int, list[int]]) -> list[Any]:
        n, seeds = item
        coeff = HomogeneousCoeff.complete(max(n, 2), 2)
        s_gauss, s_rad, s_unif = (
            homogeneous_sum(coeff, base, self.n_mc, seed, chunks=self.chunks, workers=self.workers)
            for base, seed in zip(("gaussian", "rademacher", "uniform"), seeds)
        )
        return [n, wasserstein_1d(s_rad, s_gauss), wasserstein_1d(s_unif, s_gauss)]


def universality(config: ExperimentConfig) -> ExperimentResult:
    """Sommes homogènes q = 2 à coefficients constants normalisés, trois bases."""
    mc = config.monte_carlo
    n_values = config.experiment.n_values
    result = ExperimentResult("universality", ["n", "dW_rademacher_gaussian", "dW_uniform_gaussian"], [])
    seeds = [int(s) for s in np.random.SeedSequence(mc.seed).generate_state(3 * len(n_values))]
    items = [(n, seeds[3 * idx : 3 * idx + 3]) for idx, n in enumerate(n_values)]
    job = _UniversalityRow(mc.n_mc, mc.chunks, _inner_workers(mc, len(n_values)))
    for row in _map_rows(job, items, mc.workers):
        result.rows.append(row)
        logger.info("universality row", n=row[0], rademacher=row[1], uniform=row[2])

    result.summary["dW_rademacher_gaussian"] = _trend(n_values, [row[1] for row in result.rows])
    result.summary["dW_uniform_gaussian"] = _trend(n_values, [row[2] for row in result.rows])
    return result


def multivariate(config: ExperimentConfig) -> ExperimentResult:
    mc = config.monte_carlo
    kernels = [as_kernel(build_kernel(k)) for k in config.kernels]
    targets = [build_target(t) for t in config.targets]
    report = multivariate_bound(
        kernels, targets, mc.n_mc, mc.seed, chunks=mc.chunks, workers=mc.workers, batches=mc.batches
    )
    result = ExperimentResult("multivariate", ["i", "j", "A_i", "B_ij", "B_ij_se", "cov_squares"], [])
    d = len(kernels)
    for i in range(1, d + 1):
        for j in range(i + 1, d + 1):
            key = f"B_{i}_{j}"
            result.rows.append(
                [i, j, report.terms[f"A_{i}"], report.terms[key], report.stderr[key],
                 report.details["cov_squares"][f"{i},{j}"]]
            )
    result.reports.append(report.to_dict())
    result.summary["total"] = report.total
    return result


# ── Expériences ponctuelles ───────────────────────────────────────────────────


def cumulants(config: ExperimentConfig) -> ExperimentResult:
    """Cumulants du noyau (traces), de la cible (fermés) et du tenseur (k-statistiques)."""
    mc = config.monte_carlo
    columns = ["source"] + [f"kappa{j}" for j in range(1, 7)]
    result = ExperimentResult("cumulants", columns, [])
    result.rows.append(["kernel", *cumulant_set(build_kernel(config.kernel))])
    result.rows.append(["target", *vg_cumulants(build_target(config.target))])
    if config.tensor is not None:
        f = build_tensor(config.tensor)
        draws = sample_chaos(f, mc.n_mc, mc.seed, chunks=mc.chunks, workers=mc.workers)
        ks = k_statistics(SampleSet(draws, mc.seed, {"generator": "sample_chaos"}), batches=mc.batches)
        result.rows.append(["tensor_mc", *ks])
        result.summary["tensor_mc_stderr"] = list(ks.stderr or ())
    return result


def bound(config: ExperimentConfig) -> ExperimentResult:
    columns = ["bound", "term1", "term2", "total", "total_with_constants", "interior"]
    result = ExperimentResult("bound", columns, [])
    target = build_target(config.target)

    report = vg_bound2(build_kernel(config.kernel), target, explicit_constants=True)
    t = report.terms
    result.rows.append(
        ["vg_bound2", t["term1"], t["term2"], report.total, report.total_with_constants, report.interior]
    )
    result.reports.append(report.to_dict())

    if config.tensor is not None:
        report = vg_contraction_bound(build_tensor(config.tensor), target)
        t = report.terms
        result.rows.append(
            ["vg_contraction_bound", t["term1"], t["term2"], report.total, report.total, report.interior]
        )
        result.reports.append(report.to_dict())

    if len(config.tensors) == 2:
        f1, f2 = sorted((build_tensor(s) for s in config.tensors), key=lambda f: f.order)
        value = mixed_sum_bound(f1, f2, 1.0 / target.sigma)
        result.rows.append(["mixed_sum_bound", value, 0.0, value, value, value])
    return result


def sample(config: ExperimentConfig) -> ExperimentResult:
    """Tirages de la cible et du chaos du noyau, exportés en CSV à une colonne."""
    mc = config.monte_carlo
    out_dir = Path(config.output.directory)
    target_stream, kernel_stream = _streams(config, 2)
    target = build_target(config.target)
    sets = {
        "target": SampleSet(
            vg_sample(target, mc.n_mc, target_stream, chunks=mc.chunks, workers=mc.workers),
            mc.seed, {"generator": "vg_sample", **target.as_dict(), "chunks": mc.chunks, "stream": 0},
        ),
        "kernel": SampleSet(
            sample_chaos2(
                build_kernel(config.kernel), mc.n_mc, kernel_stream, chunks=mc.chunks, workers=mc.workers
            ),
            mc.seed,
            {"generator": "sample_chaos2", "spec": config.kernel.spec, "chunks": mc.chunks, "stream": 1},
        ),
    }
    result = ExperimentResult("sample", ["source", "n", "mean", "variance", "path"], [])
    for name, s in sets.items():
        path = s.to_csv(out_dir / f"samples_{name}.csv")
        mean, var = float(np.mean(s.values)), float(np.var(s.values, ddof=1))
        result.rows.append([name, s.size, mean, var, str(path)])
    return result


def _sine() -> SmoothFunction:
    return SmoothFunction(np.sin, np.cos, lambda x: -np.sin(x), name="sin")


def _cosine() -> SmoothFunction:
    return SmoothFunction(np.cos, lambda x: -np.sin(x), lambda x: -np.cos(x), name="cos")


def stein_check(config: ExperimentConfig) -> ExperimentResult:
    """Tous les résidus de caractérisation, puis la résolution de l'équation pour h = tanh."""
    target = build_target(config.target)
    result = ExperimentResult("stein_check", ["check", "value"], [])
    rows = result.rows
    for k in range(1, 6):
        rows.append([f"residual_vg[x^{k}]", residual_vg(target, SmoothFunction.monomial(k))])
    if target.theta == 0.0:
        lam, shape = 1.0 / target.sigma, target.r / 2.0
        for k in range(1, 6):
            value = residual_symgamma(lam, shape, SmoothFunction.monomial(k))
            rows.append([f"residual_symgamma[x^{k}]", value])
    rows.append(["laplace_identity[x^2]", laplace_identity(target.sigma, [0.0, 0.0, 1.0])])
    rows.append(["laplace_identity[cos]", laplace_identity(target.sigma, _cosine())])
    rows.append(["normal_residual[x^3]", normal_residual(SmoothFunction.monomial(3))])
    rows.append(["normal_residual[sin]", normal_residual(_sine())])

    solution = solve_stein(target, np.tanh)
    rows.append(["solve_stein[tanh].residual", solution.residual])
    rows.append(["solve_stein[tanh].size", float(solution.size)])
    rows.append(["solve_stein[tanh].self_consistency", residual_vg(target, solution.as_smooth())])
    half = target.r / 2.0
    if target.theta == 0.0 and half == int(half):
        margins = constant_bound_check(solution, 1.0 / target.sigma, int(half), np.tanh)
        rows += [[f"constant_bounds.{k}", v] for k, v in margins.items()]
    return result


EXPERIMENTS: dict[str, Callable[[ExperimentConfig], ExperimentResult]] = {
    "six_moment": six_moment,
    "clt": clt,
    "universality": universality,
    "multivariate": multivariate,
    "cumulants": cumulants,
    "bound": bound,
    "sample": sample,
    "stein_check": stein_check,
}


def run_experiment(config: ExperimentConfig, kind: str | None = None) -> ExperimentResult:
    kind = kind or config.experiment.kind
    try:
        experiment = EXPERIMENTS[kind]
    except KeyError:
        raise UnknownExperiment(
            f"unknown experiment {kind!r}; expected one of {sorted(EXPERIMENTS)}"
        ) from None
    run_log = logger.bind(kind=kind, seed=config.monte_carlo.seed)
    run_log.info("experiment started", n_mc=config.monte_carlo.n_mc, workers=config.monte_carlo.workers)
    result = experiment(config)
    run_log.info("experiment finished", rows=len(result.rows))
    return result


def run(config: ExperimentConfig, kind: str | None = None) -> tuple[ExperimentResult, dict[str, Path]]:
    """Exécute l'expérience et écrit ``<kind>.csv`` et ``<kind>.json``."""
    result = run_experiment(config, kind)
    out_dir = Path(config.output.directory)
    reproducible = config.output.reproducible
    csv_path = write_csv(
        out_dir / f"{result.kind}.csv", result.columns, result.rows, reproducible=reproducible
    )
    payload = {
        "experiment": result.kind,
        "version": __version__,
        "columns": result.columns,
        "summary": result.summary,
        "reports": result.reports,
        "config": config.to_dict(),
    }
    json_path = write_json(out_dir / f"{result.kind}.json", payload)
    logger.info("experiment written", kind=result.kind, csv=str(csv_path), json=str(json_path))
    return result, {"csv": csv_path, "json": json_path}
