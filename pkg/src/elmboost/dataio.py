"""Dataset container and svmlight/libsvm text format support.

Datasets are dense: the benchmark files this library targets have at most a
few dozen attributes, so sparse rows are materialized into a float64 matrix
at parse time.  Original file labels (arbitrary integers) are remapped to
contiguous internal indices ``0..n_classes-1``; the ordered ``label_map``
records the inverse mapping for reporting.

A parsed :class:`Dataset` is immutable.  Its arrays are marked read-only so
it can be shared freely across parallel training workers.
"""

from __future__ import annotations

import io
import os
from dataclasses import dataclass
from typing import IO, Iterable, Optional, Sequence, Union

import numpy as np

from .errors import (
    DataError,
    DegenerateDistributionError,
    DimensionError,
    EmptyDatasetError,
    SvmlightParseError,
)

TextSource = Union[str, bytes, IO[str], IO[bytes]]


@dataclass(frozen=True)
class Dataset:
    """Dense feature matrix with contiguous integer class labels.

    features
        float64 matrix, one row per sample.
    labels
        int64 vector of class indices in ``[0, n_classes)``.
    n_classes
        Number of classes the label space was built for (>= 2).  Subsets
        keep the parent's value even if they no longer contain every class.
    label_map
        Strictly increasing tuple of the original labels; position ``i``
        holds the original label for internal index ``i``.
    """

    features: np.ndarray
    labels: np.ndarray
    n_classes: int
    label_map: tuple[int, ...]

    def __post_init__(self):
        features = np.ascontiguousarray(self.features, dtype=np.float64)
        labels = np.ascontiguousarray(self.labels, dtype=np.int64)
        if features.ndim != 2:
            raise DimensionError(f"features must be 2-D, got shape {features.shape}")
        if labels.ndim != 1 or labels.shape[0] != features.shape[0]:
            raise DimensionError(
                f"labels shape {labels.shape} does not match {features.shape[0]} rows"
            )
        if not np.isfinite(features).all():
            raise DataError("feature matrix contains non-finite values")
        if self.n_classes < 2:
            raise DataError(f"need at least 2 classes, got {self.n_classes}")
        if labels.size and (labels.min() < 0 or labels.max() >= self.n_classes):
            raise DimensionError(
                f"labels must lie in [0, {self.n_classes}), "
                f"got range [{labels.min()}, {labels.max()}]"
            )
        if len(self.label_map) != self.n_classes:
            raise DimensionError(
                f"label_map has {len(self.label_map)} entries, expected {self.n_classes}"
            )
        if any(b <= a for a, b in zip(self.label_map, self.label_map[1:])):
            raise DimensionError("label_map must be strictly increasing")
        features.setflags(write=False)
        labels.setflags(write=False)
        object.__setattr__(self, "features", features)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "label_map", tuple(int(v) for v in self.label_map))

    @property
    def n_samples(self) -> int:
        return self.features.shape[0]

    @property
    def n_features(self) -> int:
        return self.features.shape[1]

    def subset(self, indices: np.ndarray) -> "Dataset":
        """Rows selected by index, keeping the parent label space."""
        idx = np.asarray(indices, dtype=np.int64)
        return Dataset(self.features[idx], self.labels[idx], self.n_classes, self.label_map)

    def original_labels(self, internal: Optional[np.ndarray] = None) -> np.ndarray:
        """Map internal indices back to the labels the file used."""
        if internal is None:
            internal = self.labels
        return np.asarray(self.label_map, dtype=np.int64)[internal]


def _lines(source: TextSource) -> Iterable[str]:
    if isinstance(source, bytes):
        text = source.decode("utf-8")
    elif isinstance(source, str):
        text = source
    else:
        raw = source.read()
        text = raw.decode("utf-8") if isinstance(raw, bytes) else raw
    return text.split("\n")


def _parse_rows(
    source: TextSource, expected_dims: Optional[int]
) -> tuple[list[int], np.ndarray]:
    """Shared row scanner; returns (original labels, dense feature matrix)."""
    if expected_dims is not None and expected_dims < 1:
        raise DimensionError(f"expected_dims must be positive, got {expected_dims}")

    raw_labels: list[int] = []
    rows: list[list[tuple[int, float]]] = []
    max_index = 0

    for line_no, raw_line in enumerate(_lines(source), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        try:
            label_value = float(tokens[0])
        except ValueError:
            raise SvmlightParseError(line_no, f"non-numeric label {tokens[0]!r}") from None
        if not label_value.is_integer():
            raise SvmlightParseError(line_no, f"non-integer label {tokens[0]!r}")

        entries: list[tuple[int, float]] = []
        previous_index = 0
        for token in tokens[1:]:
            index_text, sep, value_text = token.partition(":")
            if not sep:
                raise SvmlightParseError(line_no, f"expected index:value, got {token!r}")
            try:
                index = int(index_text)
            except ValueError:
                raise SvmlightParseError(line_no, f"non-numeric index {index_text!r}") from None
            try:
                value = float(value_text)
            except ValueError:
                raise SvmlightParseError(line_no, f"non-numeric value {value_text!r}") from None
            if index <= previous_index:
                raise SvmlightParseError(
                    line_no, f"indices must be strictly increasing, got {index} after {previous_index}"
                )
            if not np.isfinite(value):
                raise SvmlightParseError(line_no, f"non-finite value {value_text!r}")
            if expected_dims is not None and index > expected_dims:
                raise DimensionError(
                    f"line {line_no}: index {index} exceeds expected_dims={expected_dims}"
                )
            entries.append((index, value))
            previous_index = index

        raw_labels.append(int(label_value))
        rows.append(entries)
        if previous_index > max_index:
            max_index = previous_index

    if not rows:
        raise EmptyDatasetError("no data lines in input")

    n_features = max(max_index, expected_dims or 0)
    features = np.zeros((len(rows), n_features), dtype=np.float64)
    for i, entries in enumerate(rows):
        for index, value in entries:
            features[i, index - 1] = value
    return raw_labels, features


def parse_svmlight(source: TextSource, expected_dims: Optional[int] = None) -> Dataset:
    """Parse svmlight/libsvm text into a dense :class:`Dataset`.

    Each non-empty line is ``<label> <index>:<value> ...`` with 1-based,
    strictly increasing indices; ``#`` starts a comment running to the end
    of the line.  The column count is the maximum index seen, or
    ``expected_dims`` if that is given and larger; unlisted indices are 0.

    Raises
    ------
    SvmlightParseError
        Non-numeric label/index/value, non-increasing indices (with the
        offending 1-based line number).
    DimensionError
        An index exceeds ``expected_dims``.
    EmptyDatasetError
        No data lines.
    DataError
        Fewer than two distinct labels.
    """
    raw_labels, features = _parse_rows(source, expected_dims)
    uniques = sorted(set(raw_labels))
    if len(uniques) < 2:
        raise DataError(f"need at least 2 distinct labels, found {uniques}")
    remap = {orig: i for i, orig in enumerate(uniques)}
    labels = np.fromiter((remap[v] for v in raw_labels), dtype=np.int64, count=len(raw_labels))
    return Dataset(features, labels, len(uniques), tuple(uniques))


def parse_features(source: TextSource, expected_dims: Optional[int] = None) -> np.ndarray:
    """Parse only the feature matrix, ignoring labels.

    For prediction inputs, whose label column is an unused placeholder and
    need not cover two classes.
    """
    _, features = _parse_rows(source, expected_dims)
    return features


def load_svmlight(path: Union[str, os.PathLike], expected_dims: Optional[int] = None) -> Dataset:
    """Parse an svmlight file from disk."""
    with open(path, "rb") as handle:
        return parse_svmlight(handle, expected_dims=expected_dims)


def dump_svmlight(ds: Dataset) -> str:
    """Serialize back to svmlight text, omitting zero entries.

    Labels are written in the original file space via ``label_map`` and
    float values with shortest round-trip ``repr``, so parsing the output
    recovers an identical dataset.  Columns whose entries are all zero
    leave no trace in the text; re-parse with ``expected_dims=ds.n_features``
    when such columns must survive.
    """
    originals = ds.original_labels()
    out = io.StringIO()
    for i in range(ds.n_samples):
        row = ds.features[i]
        nz = np.nonzero(row)[0]
        parts = [str(int(originals[i]))]
        parts.extend(f"{j + 1}:{float(row[j])!r}" for j in nz)
        out.write(" ".join(parts))
        out.write("\n")
    return out.getvalue()


def weighted_resample(ds: Dataset, weights: np.ndarray, m: int, seed: int) -> Dataset:
    """Draw ``m`` rows i.i.d. with probability proportional to ``weights``.

    Deterministic for a fixed seed.  ``weights`` must be non-negative and
    sum to 1 within 1e-9.
    """
    w = np.asarray(weights, dtype=np.float64)
    if w.shape != (ds.n_samples,):
        raise DimensionError(f"weights shape {w.shape} does not match {ds.n_samples} rows")
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    if np.any(w < 0):
        raise DegenerateDistributionError("negative weights")
    total = float(w.sum())
    if total <= 0.0:
        raise DegenerateDistributionError("all-zero weights")
    if abs(total - 1.0) > 1e-9:
        raise DegenerateDistributionError(f"weights sum to {total}, expected 1 within 1e-9")
    rng = np.random.default_rng(seed)
    idx = rng.choice(ds.n_samples, size=m, replace=True, p=w / total)
    return ds.subset(idx)


def align_to(reference: Dataset, other: Dataset) -> Dataset:
    """Re-express ``other`` in the label space of ``reference``.

    Independently parsed files can disagree on the label remapping when one
    of them is missing a class; evaluation only makes sense after both use
    the reference (training) space.  A label unknown to the reference is a
    :class:`DataError`.
    """
    if other.n_features != reference.n_features:
        raise DimensionError(
            f"feature width mismatch: {other.n_features} vs reference {reference.n_features}"
        )
    if other.label_map == reference.label_map:
        return other
    position = {orig: i for i, orig in enumerate(reference.label_map)}
    missing = [orig for orig in other.label_map if orig not in position]
    if missing:
        raise DataError(f"labels {missing} do not occur in the reference dataset")
    lookup = np.asarray([position[orig] for orig in other.label_map], dtype=np.int64)
    return Dataset(
        other.features, lookup[other.labels], reference.n_classes, reference.label_map
    )


def minmax_params(ds: Dataset) -> tuple[np.ndarray, np.ndarray]:
    """Per-column (min, max) of the training features."""
    return ds.features.min(axis=0), ds.features.max(axis=0)


def minmax_apply(ds: Dataset, params: tuple[np.ndarray, np.ndarray]) -> Dataset:
    """Rescale columns to [0, 1] using fitted params; constant columns map to 0."""
    lo, hi = params
    span = np.where(hi > lo, hi - lo, 1.0)
    return Dataset((ds.features - lo) / span, ds.labels, ds.n_classes, ds.label_map)


def scale_datasets(mode: str, train: Dataset, *others: Dataset) -> Sequence[Dataset]:
    """Apply the named scaling, fitted on ``train``, to all given datasets."""
    if mode == "none":
        return (train, *others)
    if mode == "minmax":
        params = minmax_params(train)
        return tuple(minmax_apply(ds, params) for ds in (train, *others))
    raise ValueError(f"unknown scale mode {mode!r}")
