"""
Borne multivariée pour F = (I₂(A₁), …, I₂(A_d)) et des cibles VG centrées :

    C₁ Σ_j A(j) + C₂ Σ_{i≠j} B(i, j),

A(j) étant la borne L¹ unidimensionnelle de la coordonnée j et
B(i, j) = E|⟨DF_i, −DL⁻¹F_j⟩| = E|2 zᵀA_iA_j z|, estimé par Monte Carlo.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..chaos import Kernel2, KernelError, cov_squares, cross_gamma_path, mc_estimate, vg_l1_bound
from ..distributions import VGParams
from ..observability import get_logger
from ..reports import BoundReport

logger = get_logger("empirical.multivariate")


@dataclass(frozen=True)
class _CrossIntegrand:
    a: Kernel2
    b: Kernel2

    def __call__(self, z: np.ndarray) -> np.ndarray:
        return np.abs(cross_gamma_path(self.a, self.b, z))


def multivariate_bound(
    kernels: Sequence[Kernel2],
    targets: Sequence[VGParams],
    n_mc: int,
    seed: int,
    *,
    chunks: int = 8,
    workers: int = 1,
    batches: int = 50,
) -> BoundReport:
    if len(kernels) != len(targets):
        raise KernelError(f"{len(kernels)} kernels for {len(targets)} targets")
    if len(kernels) < 2:
        raise KernelError("multivariate_bound needs at least two coordinates")
    for k in kernels[1:]:
        kernels[0].check_same_dim(k)

    d = len(kernels)
    pairs = [(i, j) for i in range(d) for j in range(i + 1, d)]
    streams = np.random.SeedSequence(seed).spawn(d + len(pairs))

    report = BoundReport(kind="multivariate", terms={}, total=0.0, flags=["constants_unit"])
    cov: dict[str, float] = {}
    for j, (kernel, target) in enumerate(zip(kernels, targets), start=1):
        single = vg_l1_bound(
            kernel, target, n_mc, streams[j - 1], chunks=chunks, workers=workers, batches=batches
        )
        report.terms[f"A_{j}"] = single.total
        report.stderr[f"A_{j}"] = single.stderr["l1"]

    # zᵀA_iA_jz = zᵀA_jA_iz : B(i, j) = B(j, i)
    for (i, j), stream in zip(pairs, streams[d:]):
        mean, se = mc_estimate(
            _CrossIntegrand(kernels[i], kernels[j]),
            kernels[i].dim, n_mc, stream,
            chunks=chunks, workers=workers, batches=batches,
        )
        for a, b in ((i, j), (j, i)):
            report.terms[f"B_{a + 1}_{b + 1}"] = mean
            report.stderr[f"B_{a + 1}_{b + 1}"] = se
        cov[f"{i + 1},{j + 1}"] = cov_squares(kernels[i], kernels[j])

    report.total = math.fsum(report.terms.values())
    report.details["cov_squares"] = cov
    report.details["n_mc"] = n_mc
    logger.debug("multivariate bound", coordinates=d, total=report.total)
    return report
