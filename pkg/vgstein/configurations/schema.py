"""
Schéma pydantic du document d'expérience.

Le loader parse d'abord en dataclasses (sections.py) ; ce schéma ne sert qu'à
valider le document brut et à produire des messages d'erreur localisés.
"""

from __future__ import annotations

from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator


class ConfigError(ValueError):
    """Document de configuration invalide ; ``errors`` liste les emplacements fautifs."""

    def __init__(self, message: str, errors: list[str] | None = None) -> None:
        super().__init__(message)
        self.errors = errors or []


class _Section(BaseModel):
    model_config = ConfigDict(extra="ignore")


class ExperimentModel(_Section):
    kind: Literal[
        "six_moment",
        "clt",
        "universality",
        "multivariate",
        "cumulants",
        "bound",
        "sample",
        "stein_check",
    ] = "six_moment"
    n_values: list[int] = Field(default_factory=lambda: [1, 2, 4, 8, 16, 32, 64])
    perturbation_scale: float = 1.0

    @model_validator(mode="after")
    def _positive_indices(self) -> "ExperimentModel":
        if any(n < 1 for n in self.n_values):
            raise ValueError("n_values must be positive integers")
        return self


class KernelModel(_Section):
    spec: Literal["exact_symgamma", "diag", "matrix", "file", "random"] = "exact_symgamma"
    m: int = Field(default=1, ge=1)
    lam: float = Field(default=1.0, gt=0)
    dim: int = Field(default=4, ge=1)
    entries: list[Any] = Field(default_factory=list)
    path: str | None = None
    seed: int = 0

    @model_validator(mode="after")
    def _source_present(self) -> "KernelModel":
        if self.spec in ("diag", "matrix") and not self.entries:
            raise ValueError(f"kernel spec '{self.spec}' needs entries")
        if self.spec == "file" and not self.path:
            raise ValueError("kernel spec 'file' needs path")
        return self


class TensorModel(_Section):
    order: int = Field(default=2, ge=1, le=4)
    dim: int = Field(default=2, ge=1, le=6)
    entries: list[float] = Field(default_factory=list)
    path: str | None = None

    @model_validator(mode="after")
    def _size(self) -> "TensorModel":
        if self.entries and len(self.entries) != self.dim**self.order:
            raise ValueError(
                f"tensor entries: expected {self.dim ** self.order} values, got {len(self.entries)}"
            )
        return self


class TargetModel(_Section):
    r: float = Field(default=2.0, gt=0)
    theta: float = 0.0
    sigma: float = Field(default=1.0, gt=0)
    mu: float = 0.0
    special: (
        Literal[
            "laplace",
            "sym_gamma",
            "product_normals",
            "gamma_difference",
            "gauss_limit_sequence",
            "gamma_limit_sequence",
        ]
        | None
    ) = None
    args: dict[str, float] = Field(default_factory=dict)


class MonteCarloModel(_Section):
    n_mc: int = Field(default=100_000, ge=1)
    seed: int = Field(default=12345, ge=0)
    chunks: int = Field(default=8, ge=1)
    workers: int = Field(default=1, ge=1)
    batches: int = Field(default=50, ge=2)


class OutputModel(_Section):
    directory: str = "runs"
    reproducible: bool = False
    dotenv: str | None = None


class LoggingModel(_Section):
    level: Literal[
        "DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL", "debug", "info", "warning", "error", "critical"
    ] = "INFO"
    output: Literal["text", "json"] = "text"
    file: str | None = None
    max_bytes: int = Field(default=10_485_760, ge=1)
    backup_count: int = Field(default=5, ge=0)


class ObservabilityModel(_Section):
    logging: LoggingModel = Field(default_factory=LoggingModel)


class ExperimentDocument(_Section):
    experiment: ExperimentModel = Field(default_factory=ExperimentModel)
    kernel: KernelModel = Field(default_factory=KernelModel)
    tensor: TensorModel | None = None
    tensors: list[TensorModel] = Field(default_factory=list)
    target: TargetModel = Field(default_factory=TargetModel)
    kernels: list[KernelModel] = Field(default_factory=list)
    targets: list[TargetModel] = Field(default_factory=list)
    monte_carlo: MonteCarloModel = Field(default_factory=MonteCarloModel)
    output: OutputModel = Field(default_factory=OutputModel)
    observability: ObservabilityModel = Field(default_factory=ObservabilityModel)

    @model_validator(mode="after")
    def _paired_lists(self) -> "ExperimentDocument":
        if self.targets and len(self.targets) != len(self.kernels):
            raise ValueError("kernels and targets must have the same length")
        return self


def validate_document(raw: dict[str, Any]) -> ExperimentDocument:
    """Valide le document brut ; lève ConfigError avec les emplacements pydantic."""
    try:
        return ExperimentDocument.model_validate(raw)
    except ValidationError as exc:
        locations = [
            ".".join(str(p) for p in err["loc"]) + f": {err['msg']}" for err in exc.errors()
        ]
        raise ConfigError("invalid experiment config", locations) from exc
