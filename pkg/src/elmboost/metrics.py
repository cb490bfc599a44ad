"""Classification evaluation: confusion counts, macro averages, stability.

Per-class precision is the diagonal over the predicted-column total and
recall the diagonal over the true-row total; a class never predicted (or
never present) contributes 0 to the unweighted macro mean, keeping the
divisor fixed at the class count.  F1 is the harmonic mean of the two
macro values.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Mapping, Sequence

import numpy as np

from .errors import DataError, DimensionError


@dataclass(frozen=True)
class ConfusionMatrix:
    """counts[t][p] = samples with true class t predicted as p."""

    counts: np.ndarray
    n: int

    def __post_init__(self):
        counts = np.ascontiguousarray(self.counts, dtype=np.int64)
        if counts.ndim != 2 or counts.shape[0] != counts.shape[1]:
            raise DimensionError(f"counts must be square, got {counts.shape}")
        if (counts < 0).any():
            raise DataError("counts must be non-negative")
        if int(counts.sum()) != self.n:
            raise DataError(f"counts sum to {counts.sum()}, expected n={self.n}")
        counts.setflags(write=False)
        object.__setattr__(self, "counts", counts)

    @property
    def n_classes(self) -> int:
        return self.counts.shape[0]


@dataclass(frozen=True)
class MetricsReport:
    accuracy: float
    precision_macro: float
    recall_macro: float
    f1: float
    per_class: tuple[tuple[float, float], ...]  # (precision, recall) per class


def confusion(truth: np.ndarray, predictions: np.ndarray, n_classes: int) -> ConfusionMatrix:
    """Tally a confusion matrix from parallel label vectors."""
    truth = np.asarray(truth, dtype=np.int64)
    predictions = np.asarray(predictions, dtype=np.int64)
    if truth.shape != predictions.shape or truth.ndim != 1:
        raise DimensionError(
            f"truth shape {truth.shape} and predictions shape {predictions.shape} must be equal 1-D"
        )
    for name, arr in (("truth", truth), ("predictions", predictions)):
        if arr.size and (arr.min() < 0 or arr.max() >= n_classes):
            raise DataError(f"{name} labels out of range [0, {n_classes})")
    counts = np.bincount(truth * n_classes + predictions, minlength=n_classes * n_classes)
    return ConfusionMatrix(counts.reshape(n_classes, n_classes), int(truth.size))


def macro_metrics(cm: ConfusionMatrix) -> MetricsReport:
    """Accuracy plus unweighted macro precision/recall/F1."""
    if cm.n == 0:
        raise DataError("cannot compute metrics of an empty confusion matrix")
    counts = cm.counts.astype(np.float64)
    diag = np.diag(counts)
    col_sums = counts.sum(axis=0)
    row_sums = counts.sum(axis=1)
    precision = np.divide(diag, col_sums, out=np.zeros_like(diag), where=col_sums > 0)
    recall = np.divide(diag, row_sums, out=np.zeros_like(diag), where=row_sums > 0)

    precision_macro = float(precision.mean())
    recall_macro = float(recall.mean())
    denominator = precision_macro + recall_macro
    f1 = 2.0 * precision_macro * recall_macro / denominator if denominator > 0 else 0.0
    return MetricsReport(
        accuracy=float(diag.sum() / cm.n),
        precision_macro=precision_macro,
        recall_macro=recall_macro,
        f1=f1,
        per_class=tuple(zip(precision.tolist(), recall.tolist())),
    )


def evaluate(truth: np.ndarray, predictions: np.ndarray, n_classes: int) -> MetricsReport:
    """Confusion + macro metrics in one step."""
    return macro_metrics(confusion(truth, predictions, n_classes))


def stability_stats(
    values: Sequence[float], grouping: Sequence[Hashable]
) -> Mapping[Hashable, tuple[float, float]]:
    """Mean and sample standard deviation (n-1) per parameter group.

    Groups appear in first-seen order; a group with fewer than two values
    is an error naming the group.
    """
    if len(values) != len(grouping):
        raise DimensionError(
            f"{len(values)} values but {len(grouping)} group keys"
        )
    buckets: dict[Hashable, list[float]] = {}
    for value, key in zip(values, grouping):
        buckets.setdefault(key, []).append(float(value))
    out: dict[Hashable, tuple[float, float]] = {}
    for key, bucket in buckets.items():
        if len(bucket) < 2:
            raise DataError(f"group {key!r} has {len(bucket)} value(s); need at least 2")
        arr = np.asarray(bucket)
        out[key] = (float(arr.mean()), float(arr.std(ddof=1)))
    return out


METRICS_CSV_HEADER = "dataset,M,T,nh,seed,accuracy,precision_macro,recall_macro,f1"


def metrics_csv_row(
    dataset: str, n_splits: int, n_rounds: int, n_hidden: int, seed: int, report: MetricsReport
) -> str:
    """One row in the fixed reporting column order."""
    return (
        f"{dataset},{n_splits},{n_rounds},{n_hidden},{seed},"
        f"{report.accuracy!r},{report.precision_macro!r},{report.recall_macro!r},{report.f1!r}"
    )


def format_report(report: MetricsReport) -> str:
    """Human-readable block with overall and per-class numbers."""
    lines = [
        f"accuracy         {report.accuracy:.4f}",
        f"precision(macro) {report.precision_macro:.4f}",
        f"recall(macro)    {report.recall_macro:.4f}",
        f"f1               {report.f1:.4f}",
    ]
    for idx, (precision, recall) in enumerate(report.per_class):
        lines.append(f"class {idx}: precision {precision:.4f} recall {recall:.4f}")
    return "\n".join(lines)
