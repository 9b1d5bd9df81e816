"""Interface en ligne de commande : sous-commandes, registre d'expériences, sorties CSV/JSON."""

from .main import build_parser, main
from .runner import EXPERIMENTS, ExperimentResult, UnknownExperiment, run, run_experiment

__all__ = [
    "EXPERIMENTS",
    "ExperimentResult",
    "UnknownExperiment",
    "build_parser",
    "main",
    "run",
    "run_experiment",
]
