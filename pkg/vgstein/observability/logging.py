"""
Logging vgstein : champs structurés, sortie texte ou JSON.

    from vgstein.observability import get_logger

    logger = get_logger("stein.solver")
    logger.debug("collocation", n=128, residual=3.1e-9)

    run_log = logger.bind(experiment="six_moment", seed=7)
    run_log.info("row", n=16, bound=np.float64(2.5e-3))

Les valeurs numpy sont acceptées telles quelles : scalaires ramenés au type
Python, tableaux résumés par forme et extrema au-delà de ARRAY_INLINE
éléments. En JSON les flottants non finis deviennent "inf", "-inf" ou "nan".

Texte :
    2026-05-29 14:08:03 [DEBUG   ] vgstein.stein.solver — collocation  n=128 residual=3.1e-09
JSON :
    {"ts":"2026-05-29T14:08:03.688+00:00","level":"DEBUG","logger":"vgstein.stein.solver",
     "msg":"collocation","n":128,"residual":3.1e-09}
"""

from __future__ import annotations

import json
import logging
import logging.handlers
import math
from datetime import datetime, timezone
from pathlib import Path
from typing import TYPE_CHECKING, Any

import numpy as np

if TYPE_CHECKING:
    from ..configurations.sections import LoggingConfig

ROOT = "vgstein"
ARRAY_INLINE = 8
_OWNED = "_vgstein_handler"


# ── Valeurs ───────────────────────────────────────────────────────────────────


def _scalar(value: Any) -> Any:
    return value.item() if isinstance(value, np.generic) else value


def _array_summary(arr: np.ndarray) -> dict[str, Any]:
    finite = arr[np.isfinite(arr)] if arr.dtype.kind in "fc" else arr
    summary: dict[str, Any] = {"shape": list(arr.shape)}
    if finite.size and arr.dtype.kind in "iuf":
        summary["min"] = float(finite.min())
        summary["max"] = float(finite.max())
    return summary


def _render(value: Any) -> str:
    value = _scalar(value)
    if isinstance(value, float):
        return format(value, ".6g")
    if isinstance(value, np.ndarray):
        if value.size <= ARRAY_INLINE:
            return "[" + ",".join(_render(v) for v in value.ravel()) + "]"
        s = _array_summary(value)
        extent = f" {s['min']:.4g}..{s['max']:.4g}" if "min" in s else ""
        return f"array{tuple(s['shape'])}{extent}"
    return str(value)


def _jsonable(value: Any) -> Any:
    value = _scalar(value)
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    if isinstance(value, np.ndarray):
        if value.size <= ARRAY_INLINE:
            return [_jsonable(v) for v in value.ravel()]
        return _array_summary(value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, Path):
        return str(value)
    return value


# ── Formateurs ────────────────────────────────────────────────────────────────


class _TextFormatter(logging.Formatter):
    """Une ligne lisible ; champs ``clé=valeur`` après le message."""

    def format(self, record: logging.LogRecord) -> str:
        ts = datetime.fromtimestamp(record.created, tz=timezone.utc)
        fields: dict = getattr(record, "vg_ctx", {})
        tail = "  " + " ".join(f"{k}={_render(v)}" for k, v in fields.items()) if fields else ""
        line = (
            f"{ts:%Y-%m-%d %H:%M:%S} [{record.levelname:<8}] {record.name} — {record.getMessage()}{tail}"
        )
        if record.exc_info:
            line += "\n" + self.formatException(record.exc_info)
        return line


class _JsonFormatter(logging.Formatter):
    """Un objet JSON strict par ligne."""

    def format(self, record: logging.LogRecord) -> str:
        data: dict[str, Any] = {
            "ts": datetime.fromtimestamp(record.created, tz=timezone.utc).isoformat(timespec="milliseconds"),
            "level": record.levelname,
            "logger": record.name,
            "msg": record.getMessage(),
        }
        for key, value in getattr(record, "vg_ctx", {}).items():
            data[key] = _jsonable(value)
        if record.exc_info:
            data["trace"] = self.formatException(record.exc_info)
        return json.dumps(data, ensure_ascii=False, allow_nan=False, default=str)


# ── Logger ────────────────────────────────────────────────────────────────────


class VgLogger:
    """
    logging.Logger plus des champs structurés passés en kwargs.

    ``bind`` renvoie un logger qui ajoute les mêmes champs à chaque entrée ;
    les kwargs d'un appel l'emportent sur les champs liés.
    """

    __slots__ = ("_log", "_bound")

    def __init__(self, logger: logging.Logger, bound: dict[str, Any] | None = None) -> None:
        self._log = logger
        self._bound = dict(bound or {})

    @property
    def name(self) -> str:
        return self._log.name

    def bind(self, **fields: Any) -> VgLogger:
        return VgLogger(self._log, {**self._bound, **fields})

    def isEnabledFor(self, level: int) -> bool:
        return self._log.isEnabledFor(level)

    def log(self, level: int, msg: str, *args: Any, exc_info: bool = False, **fields: Any) -> None:
        if not self._log.isEnabledFor(level):
            return
        ctx = {**self._bound, **fields}
        self._log.log(level, msg, *args, exc_info=exc_info, extra={"vg_ctx": ctx} if ctx else None)

    def debug(self, msg: str, *args: Any, **fields: Any) -> None:
        self.log(logging.DEBUG, msg, *args, **fields)

    def info(self, msg: str, *args: Any, **fields: Any) -> None:
        self.log(logging.INFO, msg, *args, **fields)

    def warning(self, msg: str, *args: Any, **fields: Any) -> None:
        self.log(logging.WARNING, msg, *args, **fields)

    def error(self, msg: str, *args: Any, **fields: Any) -> None:
        self.log(logging.ERROR, msg, *args, **fields)


# ── Configuration ─────────────────────────────────────────────────────────────


def _own(handler: logging.Handler) -> logging.Handler:
    setattr(handler, _OWNED, True)
    return handler


def configure_logging(cfg: LoggingConfig) -> None:
    """
    Installe les handlers vgstein selon observability.logging.

    Rappeler la fonction remplace les handlers posés par un appel précédent ;
    les handlers ajoutés par ailleurs (caplog, application hôte) sont conservés.
    """
    root = logging.getLogger(ROOT)
    root.setLevel(getattr(logging, cfg.level.upper(), logging.INFO))
    formatter = _JsonFormatter() if cfg.output == "json" else _TextFormatter()

    for handler in [h for h in root.handlers if getattr(h, _OWNED, False)]:
        root.removeHandler(handler)
        handler.close()

    handlers: list[logging.Handler] = [_own(logging.StreamHandler())]
    if cfg.file:
        path = Path(cfg.file)
        path.parent.mkdir(parents=True, exist_ok=True)
        handlers.append(
            _own(
                logging.handlers.RotatingFileHandler(
                    path, maxBytes=cfg.max_bytes, backupCount=cfg.backup_count
                )
            )
        )
    for handler in handlers:
        handler.setFormatter(formatter)
        root.addHandler(handler)


def get_logger(name: str) -> VgLogger:
    """Logger sous l'espace ``vgstein.``."""
    return VgLogger(logging.getLogger(name if name.startswith(ROOT) else f"{ROOT}.{name}"))
