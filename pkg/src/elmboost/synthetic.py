"""Synthetic dataset generators.

``gaussian_mixture`` backs the large-scale speedup measurements, where the
content of the data is irrelevant and only its size matters.  ``waveform``
is the classic three-class waveform generator (21 attributes built from
shifted triangular base waves plus unit Gaussian noise); it serves as a
reproducible stand-in whenever the corresponding benchmark file is not on
disk.
"""

import numpy as np

from .dataio import Dataset


def gaussian_mixture(
    n: int, n_features: int, n_classes: int, seed: int, separation: float = 3.0
) -> Dataset:
    """Equal-prior spherical Gaussian blobs with unit noise."""
    if n < 1 or n_features < 1 or n_classes < 2:
        raise ValueError("need n >= 1, n_features >= 1, n_classes >= 2")
    rng = np.random.default_rng(seed)
    means = rng.normal(scale=separation, size=(n_classes, n_features))
    labels = rng.integers(0, n_classes, size=n)
    features = means[labels] + rng.normal(size=(n, n_features))
    return Dataset(features, labels, n_classes, tuple(range(n_classes)))


def waveform(n: int, seed: int) -> Dataset:
    """Three-class waveform data: convex mixes of two of three base waves."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    rng = np.random.default_rng(seed)
    positions = np.arange(1, 22, dtype=np.float64)
    base = [np.maximum(6.0 - np.abs(positions - c), 0.0) for c in (11.0, 7.0, 15.0)]
    pairs = ((base[0], base[1]), (base[0], base[2]), (base[1], base[2]))

    labels = rng.integers(0, 3, size=n)
    mix = rng.uniform(0.0, 1.0, size=n)[:, None]
    features = np.empty((n, 21), dtype=np.float64)
    for cls, (wave_a, wave_b) in enumerate(pairs):
        rows = labels == cls
        features[rows] = mix[rows] * wave_a + (1.0 - mix[rows]) * wave_b
    features += rng.normal(size=(n, 21))
    return Dataset(features, labels, 3, (0, 1, 2))
