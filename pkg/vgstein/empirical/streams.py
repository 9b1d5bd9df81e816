"""
SampleSet : échantillon fini et sa provenance.

Un SampleSet est entièrement déterminé par (seed, meta) : ``meta`` décrit le
générateur (loi, paramètres, chunks) et ``seed`` l'entier passé à
SeedSequence. Export CSV à une colonne avec un commentaire d'en-tête.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

import numpy as np

from ..observability import get_logger
from ..rng import chunked_draws

logger = get_logger("empirical.streams")


class SampleError(ValueError):
    """Échantillon vide, valeurs non finies ou tailles incompatibles."""


class TooFewSamples(SampleError):
    """Pas assez de tirages pour l'estimateur demandé."""


@dataclass(frozen=True, eq=False)
class SampleSet:
    values: np.ndarray
    seed: int | None = None
    meta: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        arr = np.asarray(self.values, dtype=float)
        if arr.ndim != 1:
            raise SampleError(f"samples must be one-dimensional, got shape {arr.shape}")
        if arr.size == 0:
            raise SampleError("empty sample set")
        if not np.all(np.isfinite(arr)):
            raise SampleError("sample set contains non-finite values")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    def __len__(self) -> int:
        return int(self.values.size)

    @property
    def size(self) -> int:
        return int(self.values.size)

    @classmethod
    def generate(
        cls,
        draw: Callable[[np.random.Generator, int], np.ndarray],
        n: int,
        seed: int,
        meta: dict[str, Any] | None = None,
        *,
        chunks: int = 8,
        workers: int = 1,
    ) -> "SampleSet":
        """Tirages par blocs reproductibles ; ``chunks`` est enregistré dans meta."""
        values = chunked_draws(draw, n, seed, chunks=chunks, workers=workers)
        return cls(values, seed, {**(meta or {}), "n": n, "chunks": chunks})

    def head(self, n: int, reason: str = "trimmed") -> "SampleSet":
        """Les n premières valeurs ; la taille d'origine est conservée dans meta."""
        if not 1 <= n <= self.size:
            raise SampleError(f"cannot keep {n} of {self.size} values")
        if n == self.size:
            return self
        return SampleSet(self.values[:n], self.seed, {**self.meta, reason: self.size})

    # ── CSV ───────────────────────────────────────────────────

    def to_csv(self, path: str | Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        header = f"# seed={self.seed} meta={json.dumps(self.meta, sort_keys=True)}"
        lines = [header, "value"] + [format(v, ".17g") for v in self.values]
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return path

    @classmethod
    def from_csv(cls, path: str | Path) -> "SampleSet":
        path = Path(path)
        if not path.exists():
            raise SampleError(f"sample file not found: {path}")
        seed: int | None = None
        meta: dict[str, Any] = {}
        values: list[float] = []
        for line in path.read_text(encoding="utf-8").splitlines():
            line = line.strip()
            if not line or line == "value":
                continue
            if line.startswith("#"):
                body = line.lstrip("# ")
                if body.startswith("seed="):
                    seed_part, _, meta_part = body.partition(" meta=")
                    raw = seed_part.split("=", 1)[1]
                    seed = None if raw == "None" else int(raw)
                    meta = json.loads(meta_part) if meta_part else {}
                continue
            values.append(float(line))
        logger.debug("samples loaded", path=str(path), n=len(values))
        return cls(np.array(values), seed, meta)
