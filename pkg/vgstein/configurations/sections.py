from __future__ import annotations

from dataclasses import asdict, dataclass, field, fields, replace
from typing import Any, Literal

ExperimentKind = Literal[
    "six_moment",
    "clt",
    "universality",
    "multivariate",
    "cumulants",
    "bound",
    "sample",
    "stein_check",
]


def _known(cls: type, d: dict[str, Any]) -> dict[str, Any]:
    valid = {f.name for f in fields(cls)}
    return {k: v for k, v in d.items() if k in valid}


@dataclass
class ExperimentSection:
    kind: str = "six_moment"
    n_values: list[int] = field(default_factory=lambda: [1, 2, 4, 8, 16, 32, 64])
    perturbation_scale: float = 1.0

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "ExperimentSection":
        return cls(**_known(cls, d))


@dataclass
class KernelSection:
    """
    Noyau de second chaos.

    spec :
        exact_symgamma → spectre ±1/(2·lam), m valeurs de chaque signe
        diag           → entries = diagonale
        matrix         → entries = matrice dense (listes imbriquées)
        file           → path vers un CSV dense ligne par ligne
        random         → matrice symétrique gaussienne de taille dim (seed)
    """

    spec: str = "exact_symgamma"
    m: int = 1
    lam: float = 1.0
    dim: int = 4
    entries: list[Any] = field(default_factory=list)
    path: str | None = None
    seed: int = 0

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "KernelSection":
        return cls(**_known(cls, d))


@dataclass
class TensorSection:
    order: int = 2
    dim: int = 2
    entries: list[float] = field(default_factory=list)  # row-major, d**q valeurs
    path: str | None = None

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "TensorSection":
        return cls(**_known(cls, d))


@dataclass
class TargetSection:
    """Loi cible : paramètres bruts ou constructeur nommé (special + args)."""

    r: float = 2.0
    theta: float = 0.0
    sigma: float = 1.0
    mu: float = 0.0
    special: str | None = None
    args: dict[str, float] = field(default_factory=dict)

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "TargetSection":
        return cls(**_known(cls, d))


@dataclass
class MonteCarloSection:
    n_mc: int = 100_000
    seed: int = 12345
    chunks: int = 8
    workers: int = 1
    batches: int = 50

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "MonteCarloSection":
        return cls(**_known(cls, d))


@dataclass
class OutputSection:
    directory: str = "runs"
    reproducible: bool = False
    dotenv: str | None = None

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "OutputSection":
        return cls(**_known(cls, d))


@dataclass
class LoggingConfig:
    level: str = "INFO"
    output: str = "text"  # "text" | "json"
    file: str | None = None
    max_bytes: int = 10_485_760
    backup_count: int = 5

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "LoggingConfig":
        return cls(**_known(cls, d))


@dataclass
class ObservabilityConfig:
    logging: LoggingConfig = field(default_factory=LoggingConfig)

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "ObservabilityConfig":
        return cls(logging=LoggingConfig.from_dict(d.get("logging") or {}))


@dataclass
class ExperimentConfig:
    experiment: ExperimentSection = field(default_factory=ExperimentSection)
    kernel: KernelSection = field(default_factory=KernelSection)
    tensor: TensorSection | None = None
    tensors: list[TensorSection] = field(default_factory=list)
    target: TargetSection = field(default_factory=TargetSection)
    kernels: list[KernelSection] = field(default_factory=list)
    targets: list[TargetSection] = field(default_factory=list)
    monte_carlo: MonteCarloSection = field(default_factory=MonteCarloSection)
    output: OutputSection = field(default_factory=OutputSection)
    observability: ObservabilityConfig = field(default_factory=ObservabilityConfig)
    raw: dict[str, Any] = field(default_factory=dict)

    def with_overrides(
        self,
        *,
        seed: int | None = None,
        n_mc: int | None = None,
        reproducible: bool | None = None,
        directory: str | None = None,
    ) -> "ExperimentConfig":
        """Copie avec les surcharges CLI appliquées (None = inchangé)."""
        mc = self.monte_carlo
        out = self.output
        if seed is not None:
            mc = replace(mc, seed=seed)
        if n_mc is not None:
            mc = replace(mc, n_mc=n_mc)
        if reproducible:
            out = replace(out, reproducible=True)
        if directory is not None:
            out = replace(out, directory=directory)
        return replace(self, monte_carlo=mc, output=out)

    def to_dict(self) -> dict[str, Any]:
        data = asdict(self)
        data.pop("raw", None)
        data["output"].pop("dotenv", None)
        return data
