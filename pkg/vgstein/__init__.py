"""
vgstein — approximation Variance-Gamma des fonctionnelles de chaos de Wiener.

Sous-paquets :
  distributions   loi VG, cas particuliers, cumulants
  stein           caractérisation, constantes, résolution de l'équation de Stein
  chaos           second chaos : noyaux matriciels et bornes
  tensors         chaos d'ordre q : contractions, décompositions de Γ, bornes
  empirical       échantillons, k-statistiques, Wasserstein, sommes homogènes
  cli             expériences et sorties
"""

from .__version__ import __version__
from .configurations import ConfigLoader, ExperimentConfig
from .distributions import VGParams, special_case, sym_gamma
from .reports import BoundReport

__all__ = [
    "BoundReport",
    "ConfigLoader",
    "ExperimentConfig",
    "VGParams",
    "__version__",
    "special_case",
    "sym_gamma",
]
