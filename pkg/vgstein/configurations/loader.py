"""
ConfigLoader — charge un document d'expérience (JSON de préférence, YAML accepté) :
  - substitution ${ENV_VAR}
  - surcharges VGSTEIN__SECTION__KEY=value
  - valeurs par défaut
  - validation par le schéma pydantic
"""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Any

from ..observability import get_logger
from .helper import _coerce, _resolve
from .schema import ConfigError, validate_document
from .sections import (
    ExperimentConfig,
    ExperimentSection,
    KernelSection,
    MonteCarloSection,
    ObservabilityConfig,
    OutputSection,
    TargetSection,
    TensorSection,
)

logger = get_logger("config")


class ConfigLoader:
    """
    Charge vgstein.json (ou vgstein.yaml) et expose une ExperimentConfig typée.

    Ordre de résolution : lecture JSON/YAML, fichier .env, ${VAR},
    surcharges VGSTEIN__SECTION__KEY, schéma pydantic, puis dataclasses.
    """

    ENV_PREFIX = "VGSTEIN__"

    DEFAULT_PATHS = [
        Path("vgstein.json"),
        Path("vgstein.yaml"),
        Path("config/vgstein.json"),
        Path("config/vgstein.yaml"),
    ]

    @classmethod
    def load(cls, path: str | Path | None = None) -> ExperimentConfig:
        raw = cls._read(path)
        cls._load_dotenv(raw)
        raw = _resolve(raw)
        raw = cls._apply_env_overrides(raw)
        validate_document(raw)
        return cls._parse(raw)

    @classmethod
    def from_dict(cls, raw: dict[str, Any]) -> ExperimentConfig:
        """Même pipeline que load() sans lecture de fichier (tests, API)."""
        raw = _resolve(dict(raw))
        validate_document(raw)
        return cls._parse(raw)

    @classmethod
    def _read(cls, path: str | Path | None) -> dict[str, Any]:
        if path is not None:
            candidate = Path(path)
            if not candidate.exists():
                raise ConfigError(f"config file not found: {candidate}")
            return cls._read_file(candidate)

        for candidate in cls.DEFAULT_PATHS:
            if candidate.exists():
                return cls._read_file(candidate)
        logger.info("no config file found, using defaults")
        return {}

    @staticmethod
    def _read_file(candidate: Path) -> dict[str, Any]:
        suffix = candidate.suffix.lower()
        try:
            with open(candidate, encoding="utf-8") as f:
                if suffix in (".yaml", ".yml"):
                    import yaml

                    data = yaml.safe_load(f) or {}
                else:
                    data = json.load(f)
        except (OSError, ValueError) as e:
            raise ConfigError(f"cannot read {candidate}: {e}") from e
        if not isinstance(data, dict):
            raise ConfigError(f"{candidate}: top-level document must be an object")
        logger.info("config file loaded", path=str(candidate))
        return data

    @classmethod
    def _load_dotenv(cls, raw: dict[str, Any]) -> None:
        dotenv_file = raw.get("output", {}).get("dotenv")
        if not dotenv_file:
            return
        path = Path(dotenv_file)
        if not path.exists():
            logger.warning("dotenv file not found", path=str(path))
            return
        from dotenv import load_dotenv

        load_dotenv(dotenv_path=path, override=False)
        logger.info(".env loaded", path=str(path))

    @classmethod
    def _apply_env_overrides(cls, raw: dict[str, Any]) -> dict[str, Any]:
        for key, value in os.environ.items():
            if not key.startswith(cls.ENV_PREFIX):
                continue
            parts = key[len(cls.ENV_PREFIX) :].lower().split("__")
            target = raw
            for part in parts[:-1]:
                target = target.setdefault(part, {})
            target[parts[-1]] = _coerce(value)
            logger.debug("env override applied", key=key)
        return raw

    @classmethod
    def _parse(cls, raw: dict[str, Any]) -> ExperimentConfig:
        tensor_raw = raw.get("tensor")
        return ExperimentConfig(
            experiment=ExperimentSection.from_dict(raw.get("experiment", {})),
            kernel=KernelSection.from_dict(raw.get("kernel", {})),
            tensor=TensorSection.from_dict(tensor_raw) if tensor_raw else None,
            tensors=[TensorSection.from_dict(t) for t in raw.get("tensors", [])],
            target=TargetSection.from_dict(raw.get("target", {})),
            kernels=[KernelSection.from_dict(k) for k in raw.get("kernels", [])],
            targets=[TargetSection.from_dict(t) for t in raw.get("targets", [])],
            monte_carlo=MonteCarloSection.from_dict(raw.get("monte_carlo", {})),
            output=OutputSection.from_dict(raw.get("output", {})),
            observability=ObservabilityConfig.from_dict(raw.get("observability", {})),
            raw=raw,
        )
