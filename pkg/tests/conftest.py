"""
conftest.py – Fixtures globales pour la suite de tests vgstein
===============================================================
Utilisées automatiquement par pytest dans tous les fichiers de test.
"""

import json
import logging
from pathlib import Path

import numpy as np
import pytest

from vgstein.chaos import Kernel2
from vgstein.tensors import SymTensor, random_sym_tensor


# ── Aléa ──────────────────────────────────────────────────────────────────────
@pytest.fixture
def rng() -> np.random.Generator:
    """Générateur à graine fixe."""
    return np.random.default_rng(20240601)


@pytest.fixture
def random_kernel(rng) -> Kernel2:
    """Matrice symétrique 4×4 à entrées gaussiennes."""
    g = rng.standard_normal((4, 4))
    return Kernel2(0.5 * (g + g.T))


@pytest.fixture
def random_tensor() -> SymTensor:
    """Tenseur symétrique d'ordre 3 en dimension 3."""
    return random_sym_tensor(3, 3, seed=5)


# ── Configuration ─────────────────────────────────────────────────────────────
@pytest.fixture
def tmp_config(tmp_path: Path):
    """Écrit un document de configuration JSON dans tmp_path et renvoie son chemin."""

    def _write(document: dict) -> Path:
        document = dict(document)
        document.setdefault("output", {})
        document["output"] = {"directory": str(tmp_path / "runs"), **document["output"]}
        path = tmp_path / "vgstein.json"
        path.write_text(json.dumps(document), encoding="utf-8")
        return path

    return _write


# ── Nettoyage logging ─────────────────────────────────────────────────────────
@pytest.fixture(autouse=True)
def reset_vgstein_logging():
    """configure_logging() ajoute des handlers au logger racine vgstein."""
    root = logging.getLogger("vgstein")
    handlers = list(root.handlers)
    level = root.level
    yield
    root.setLevel(level)
    for h in list(root.handlers):
        if h not in handlers:
            root.removeHandler(h)
            h.close()
