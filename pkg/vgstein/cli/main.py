"""
Point d'entrée ``vgstein``.

    vgstein cumulants   --config cfg.json
    vgstein bound       --config cfg.json
    vgstein stein-check --config cfg.json
    vgstein sample      --config cfg.json --mc 200000
    vgstein converge    --sequence six_moment|clt --config cfg.json --reproducible
    vgstein universality | multivariate | run

Code de sortie 0 en cas de succès, 2 pour toute erreur de configuration ou
de calcul (message dans un panneau rich, trace dans le log).
"""

from __future__ import annotations

import argparse
from dataclasses import replace
from typing import Sequence

from rich.panel import Panel

from ..__version__ import __version__
from ..chaos import KernelError
from ..configurations import ConfigError, ConfigLoader, ExperimentConfig
from ..distributions import (
    BesselRangeError,
    DomainError,
    ParameterError,
    PoleAtLocation,
    QuadratureError,
    UnsupportedLocation,
)
from ..empirical import SampleError
from ..observability import configure_logging, get_logger
from ..stein import CollocationError, SteinHypothesisError
from ..tensors import TensorError
from .runner import UnknownExperiment, run
from .tables import console, render_table

logger = get_logger("cli")

HANDLED_ERRORS = (
    ConfigError,
    ParameterError,
    UnsupportedLocation,
    DomainError,
    PoleAtLocation,
    QuadratureError,
    BesselRangeError,
    KernelError,
    TensorError,
    SampleError,
    SteinHypothesisError,
    CollocationError,
    UnknownExperiment,
)

# sous-commande → expérience ; None = lue dans la configuration (ou --sequence)
COMMANDS: dict[str, str | None] = {
    "cumulants": "cumulants",
    "bound": "bound",
    "stein-check": "stein_check",
    "sample": "sample",
    "converge": None,
    "universality": "universality",
    "multivariate": "multivariate",
    "run": None,
}


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", type=str, default=None, help="fichier JSON/YAML de l'expérience")
    parser.add_argument("--out", type=str, default=None, help="répertoire de sortie")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--mc", type=int, default=None, help="nombre de tirages Monte Carlo")
    parser.add_argument("--reproducible", action="store_true", help="sans horodatage dans les CSV")
    parser.add_argument("--log-level", type=str, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vgstein",
        description="Variance-Gamma approximation of Wiener chaos: bounds, samples, Stein checks",
    )
    parser.add_argument("--version", action="version", version=f"vgstein {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        cmd = sub.add_parser(name)
        _common(cmd)
        if name == "converge":
            cmd.add_argument("--sequence", choices=["six_moment", "clt"], default="six_moment")
    return parser


def _prepare(args: argparse.Namespace) -> ExperimentConfig:
    config = ConfigLoader.load(args.config).with_overrides(
        seed=args.seed,
        n_mc=args.mc,
        reproducible=args.reproducible,
        directory=args.out,
    )
    if args.log_level:
        logging_cfg = replace(config.observability.logging, level=args.log_level)
        config = replace(config, observability=replace(config.observability, logging=logging_cfg))
    configure_logging(config.observability.logging)
    return config


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    kind = COMMANDS[args.command]
    if args.command == "converge":
        kind = args.sequence

    try:
        config = _prepare(args)
        result, paths = run(config, kind)
    except HANDLED_ERRORS as exc:
        logger.error("command failed", command=args.command, error=type(exc).__name__)
        logger.debug("command traceback", exc_info=True)
        console.print(Panel(str(exc), title=f"[red]{type(exc).__name__}[/red]", border_style="red"))
        return 2

    console.print(render_table(result.kind, result.columns, result.rows))
    console.print(f"[dim]csv:[/dim] {paths['csv']}  [dim]json:[/dim] {paths['json']}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
