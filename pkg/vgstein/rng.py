"""
Flux aléatoires reproductibles.

Chaque tirage de taille n est découpé en ``chunks`` blocs de tailles fixées
par (n, chunks). Le bloc k reçoit son propre Generator PCG64 issu de
SeedSequence(seed).spawn(chunks)[k]. Les blocs sont concaténés dans l'ordre,
donc le résultat ne dépend que de (seed, chunks), quel que soit ``workers``.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Union

import numpy as np

from .observability import get_logger

logger = get_logger("rng")

SeedLike = Union[int, np.random.SeedSequence]
DrawFn = Callable[[np.random.Generator, int], np.ndarray]


def chunk_sizes(n: int, chunks: int) -> list[int]:
    """Tailles de blocs : les n mod chunks premiers blocs reçoivent un élément de plus."""
    if n < 0 or chunks < 1:
        raise ValueError(f"invalid chunk layout n={n}, chunks={chunks}")
    chunks = min(chunks, max(n, 1))
    base, extra = divmod(n, chunks)
    return [base + (1 if k < extra else 0) for k in range(chunks)]


def _seed_sequence(seed: SeedLike) -> np.random.SeedSequence:
    if isinstance(seed, np.random.SeedSequence):
        return seed
    return np.random.SeedSequence(int(seed))


def spawn_generators(seed: SeedLike, chunks: int) -> list[np.random.Generator]:
    children = _seed_sequence(seed).spawn(chunks)
    logger.debug("streams spawned", chunks=chunks, entropy=str(children[0].entropy))
    return [np.random.Generator(np.random.PCG64(child)) for child in children]


def _run_chunk(args: tuple[DrawFn, np.random.SeedSequence, int]) -> np.ndarray:
    draw, child, size = args
    return np.asarray(draw(np.random.Generator(np.random.PCG64(child)), size))


def chunked_draws(
    draw: DrawFn,
    n: int,
    seed: SeedLike,
    *,
    chunks: int = 8,
    workers: int = 1,
) -> np.ndarray:
    """
    Concatène ``draw(rng_k, size_k)`` sur les blocs, dans l'ordre des blocs.

    Avec workers > 1 les blocs passent par un ProcessPoolExecutor ; ``draw``
    doit alors être picklable (fonction de module ou dataclass appelable).
    """
    sizes = chunk_sizes(n, chunks)
    children = _seed_sequence(seed).spawn(len(sizes))
    jobs = [(draw, child, size) for child, size in zip(children, sizes)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_chunk, jobs))
    else:
        parts = [_run_chunk(job) for job in jobs]
    logger.debug("chunked draws", n=n, chunks=len(sizes), workers=workers)
    return np.concatenate(parts, axis=0)


def fsum_mean(values: Iterable[float] | np.ndarray) -> float:
    """Moyenne par sommation compensée (ordre fixe)."""
    arr = np.asarray(list(values) if not isinstance(values, np.ndarray) else values, dtype=float)
    if arr.size == 0:
        raise ValueError("mean of an empty sequence")
    return math.fsum(arr.ravel()) / arr.size


def batch_mean_stderr(values: np.ndarray, batches: int = 50) -> tuple[float, float]:
    """
    Moyenne et erreur standard par moyennes de lots.

    Les lots sont contigus et de tailles fixées par ``chunk_sizes`` ; si
    len(values) < batches on retombe sur l'erreur standard i.i.d.
    """
    arr = np.asarray(values, dtype=float).ravel()
    mean = fsum_mean(arr)
    if arr.size < 2:
        return mean, math.inf
    if arr.size < batches:
        return mean, float(np.std(arr, ddof=1) / math.sqrt(arr.size))
    bounds = np.cumsum([0, *chunk_sizes(arr.size, batches)])
    means = np.array([math.fsum(arr[a:b]) / (b - a) for a, b in zip(bounds[:-1], bounds[1:])])
    return mean, float(np.std(means, ddof=1) / math.sqrt(batches))

