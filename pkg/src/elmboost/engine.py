"""In-process map/shuffle/reduce training pipeline.

Map assigns every training row a uniform random split id; shuffle groups
rows by id; reduce trains one boosted chunk ensemble per non-empty split
on a bounded thread pool; the combiner collects the per-chunk ensembles
into a single plurality-voting classifier.

Determinism contract: every chunk derives its own seeds from the master
seed and its chunk id, and BLAS is pinned to one thread for the whole
reduce phase, so the trained ensemble is identical for any worker count
and any completion order.  Worker count only changes wall time, which is
recorded for the speedup report.
"""

from __future__ import annotations

import logging
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import NamedTuple, Optional, Sequence

import numpy as np
from threadpoolctl import threadpool_limits

from .boost import BoostConfig, ChunkEnsemble, adaboost_train, chunk_predict
from .dataio import Dataset
from .errors import DimensionError, PipelineError
from .seeding import MAP_STREAM, derive_seed

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExperimentConfig:
    """Full recipe for one pipeline run.

    ``seed`` drives the split assignment; ``boost.seed`` drives per-chunk
    training (the CLI keeps the two equal).  ``workers`` bounds reduce
    parallelism and is an execution detail: it never affects the trained
    model and is excluded from serialized provenance.
    """

    n_splits: int
    boost: BoostConfig
    seed: int = 0
    repeats: int = 1
    workers: int = 1

    def __post_init__(self):
        if self.n_splits < 1:
            raise ValueError(f"n_splits must be >= 1, got {self.n_splits}")
        if self.repeats < 1:
            raise ValueError(f"repeats must be >= 1, got {self.repeats}")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")

    def with_master_seed(self, seed: int) -> "ExperimentConfig":
        """Copy with both the split seed and the training seed replaced."""
        return replace(self, seed=seed, boost=replace(self.boost, seed=seed))


@dataclass(frozen=True)
class GlobalEnsemble:
    """All chunk ensembles of one run plus the config that produced them."""

    chunks: tuple[ChunkEnsemble, ...]
    n_classes: int
    provenance: ExperimentConfig
    reduce_seconds: float = field(default=0.0, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "chunks", tuple(self.chunks))
        if not self.chunks:
            raise PipelineError("global ensemble has no chunks")
        for chunk in self.chunks:
            if chunk.n_classes != self.n_classes:
                raise DimensionError("chunks disagree on class count")
            if chunk.n_features != self.chunks[0].n_features:
                raise DimensionError("chunks disagree on input dimension")

    @property
    def n_features(self) -> int:
        return self.chunks[0].n_features


class SpeedupRow(NamedTuple):
    n_splits: int
    wall_seconds: float
    speedup: float


def map_assign(ds: Dataset, n_splits: int, seed: int) -> list[np.ndarray]:
    """Assign each row uniformly at random to one of ``n_splits`` index sets.

    The sets are disjoint, cover every row, and are deterministic for a
    fixed seed.
    """
    if n_splits < 1:
        raise ValueError(f"n_splits must be >= 1, got {n_splits}")
    if ds.n_samples < 1:
        raise DimensionError("dataset is empty")
    rng = np.random.default_rng(seed)
    ids = rng.integers(0, n_splits, size=ds.n_samples)
    return [np.flatnonzero(ids == j) for j in range(n_splits)]


def reduce_all(
    ds: Dataset, assignment: Sequence[np.ndarray], cfg: ExperimentConfig
) -> GlobalEnsemble:
    """Train one chunk ensemble per usable split, in parallel.

    Splits that are empty or carry fewer than two distinct classes are
    skipped with a warning.  Raises :class:`PipelineError` when nothing
    survives.
    """
    tasks: list[tuple[int, Dataset]] = []
    for chunk_id, indices in enumerate(assignment):
        if len(indices) == 0:
            log.warning("split %d is empty; skipping", chunk_id)
            continue
        sub = ds.subset(indices)
        if np.unique(sub.labels).size < 2:
            log.warning(
                "split %d has a single class (%d rows); skipping", chunk_id, sub.n_samples
            )
            continue
        tasks.append((chunk_id, sub))

    if not tasks:
        raise PipelineError("no split contained at least two classes")

    def train(task: tuple[int, Dataset]) -> ChunkEnsemble:
        chunk_id, sub = task
        return adaboost_train(sub, cfg.boost, chunk_id=chunk_id)

    started = time.perf_counter()
    # One BLAS thread per worker: keeps results independent of the worker
    # count and makes the measured speedup attributable to the pool alone.
    with threadpool_limits(limits=1):
        if cfg.workers == 1 or len(tasks) == 1:
            chunks = [train(task) for task in tasks]
        else:
            with ThreadPoolExecutor(max_workers=min(cfg.workers, len(tasks))) as pool:
                chunks = list(pool.map(train, tasks))
    elapsed = time.perf_counter() - started

    chunks.sort(key=lambda chunk: chunk.chunk_id)
    return GlobalEnsemble(
        chunks=tuple(chunks),
        n_classes=ds.n_classes,
        provenance=cfg,
        reduce_seconds=elapsed,
    )


def global_predict(ensemble: GlobalEnsemble, X: np.ndarray) -> np.ndarray:
    """One vote per chunk, plurality wins, ties to the lowest class index."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] != ensemble.n_features:
        raise DimensionError(
            f"X shape {X.shape} incompatible with ensemble of {ensemble.n_features} features"
        )
    votes = np.zeros((X.shape[0], ensemble.n_classes), dtype=np.int64)
    rows = np.arange(X.shape[0])
    for chunk in ensemble.chunks:
        votes[rows, chunk_predict(chunk, X)] += 1
    return np.argmax(votes, axis=1)


def train_pipeline(train: Dataset, cfg: ExperimentConfig) -> GlobalEnsemble:
    """Map, shuffle and reduce one training set into a global ensemble."""
    assignment = map_assign(train, cfg.n_splits, derive_seed(MAP_STREAM, cfg.seed))
    return reduce_all(train, assignment, cfg)


def available_parallelism() -> int:
    return os.cpu_count() or 1


def speedup_report(
    train: Dataset,
    cfg_base: ExperimentConfig,
    split_counts: Sequence[int],
    max_workers: Optional[int] = None,
) -> list[SpeedupRow]:
    """Measure reduce wall time across split counts.

    Workers are set to ``min(split count, available parallelism)`` per run.
    Speedup is each run's time relative to the first (smallest) split
    count, so the first row reports 1.0 by construction.
    """
    if len(split_counts) < 2:
        raise ValueError("need at least two split counts")
    if any(b < a for a, b in zip(split_counts, split_counts[1:])):
        raise ValueError(f"split counts must be ascending, got {list(split_counts)}")

    ceiling = max_workers or available_parallelism()
    rows: list[SpeedupRow] = []
    baseline: Optional[float] = None
    for count in split_counts:
        cfg = replace(cfg_base, n_splits=count, workers=max(1, min(count, ceiling)))
        ensemble = train_pipeline(train, cfg)
        wall = ensemble.reduce_seconds
        if baseline is None:
            baseline = wall
        rows.append(SpeedupRow(count, wall, baseline / wall if wall > 0 else float("inf")))
        log.info("splits=%d reduce=%.3fs speedup=%.2f", count, wall, rows[-1].speedup)
    return rows
