"""Multiclass AdaBoost over random-hidden-layer weak learners.

Each round trains a weak classifier under the current sample distribution,
measures its distribution-weighted error, converts that error into an
ensemble weight, and re-weights the samples so mistakes gain mass.  Weak
learners no better than random guessing are rejected: the distribution is
reset to uniform and the slot retried with a fresh seed a bounded number
of times before being skipped.

Two ensemble-weight rules are available: the two-class rule
``0.5 * ln((1-e)/e)`` and the multiclass correction
``ln((1-e)/e) + ln(n_classes - 1)``, which keeps the weight positive for
any error below ``1 - 1/n_classes``.  The multiclass rule is the default;
the two-class rule is only useful when n_classes == 2.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .dataio import Dataset, weighted_resample
from .elm import Activation, DEFAULT_RIDGE, ElmModel, elm_predict, elm_train
from .errors import BoostingFailureError, DegenerateDistributionError, DimensionError
from .seeding import RESAMPLE_STREAM, WEAK_STREAM, derive_seed

# Error clamp applied before logarithms; also bounds the weight magnitude.
EPS_CLAMP = 1e-10
MAX_RETRIES_PER_SLOT = 3


class AlphaVariant(str, enum.Enum):
    BINARY = "binary"
    SAMME = "samme"


class WeightingMode(str, enum.Enum):
    """How the sample distribution reaches the weak learner."""

    WEIGHTED_SOLVE = "weighted_solve"  # exact: row scaling inside the solve
    RESAMPLE = "resample"  # stochastic: redraw the chunk from the distribution


@dataclass(frozen=True)
class WeakHypothesis:
    """A weak classifier together with its ensemble weight."""

    model: ElmModel
    alpha: float

    def __post_init__(self):
        if not math.isfinite(self.alpha) or self.alpha <= 0:
            raise ValueError(f"alpha must be finite and positive, got {self.alpha}")


@dataclass(frozen=True)
class ChunkEnsemble:
    """Ordered weak hypotheses trained on one data chunk."""

    hypotheses: tuple[WeakHypothesis, ...]
    n_classes: int
    chunk_id: int

    def __post_init__(self):
        object.__setattr__(self, "hypotheses", tuple(self.hypotheses))
        if not self.hypotheses:
            raise ValueError("ensemble must contain at least one hypothesis")
        for h in self.hypotheses:
            if h.model.n_classes != self.n_classes:
                raise DimensionError("hypotheses disagree on class count")
            if h.model.n_features != self.hypotheses[0].model.n_features:
                raise DimensionError("hypotheses disagree on input dimension")

    @property
    def n_features(self) -> int:
        return self.hypotheses[0].model.n_features


@dataclass(frozen=True)
class BoostConfig:
    """Knobs for one boosted-chunk training run."""

    n_rounds: int
    n_hidden: int
    activation: Activation = Activation.SIGMOID
    ridge: float = DEFAULT_RIDGE
    weighting: WeightingMode = WeightingMode.WEIGHTED_SOLVE
    alpha_variant: AlphaVariant = AlphaVariant.SAMME
    seed: int = 0

    def __post_init__(self):
        if self.n_rounds < 1:
            raise ValueError(f"n_rounds must be >= 1, got {self.n_rounds}")
        if self.n_hidden < 1:
            raise ValueError(f"n_hidden must be >= 1, got {self.n_hidden}")
        if self.ridge < 0:
            raise ValueError(f"ridge must be non-negative, got {self.ridge}")
        object.__setattr__(self, "activation", Activation(self.activation))
        object.__setattr__(self, "weighting", WeightingMode(self.weighting))
        object.__setattr__(self, "alpha_variant", AlphaVariant(self.alpha_variant))


def weighted_error(predictions: np.ndarray, truth: np.ndarray, weights: np.ndarray) -> float:
    """Distribution-weighted misclassification rate, in [0, 1]."""
    predictions = np.asarray(predictions)
    truth = np.asarray(truth)
    weights = np.asarray(weights, dtype=np.float64)
    if not (predictions.shape == truth.shape == weights.shape):
        raise DimensionError(
            f"length mismatch: predictions {predictions.shape}, truth {truth.shape}, "
            f"weights {weights.shape}"
        )
    if abs(float(weights.sum()) - 1.0) > 1e-9:
        raise DegenerateDistributionError(f"weights sum to {weights.sum()}, expected 1")
    return float(np.clip(weights[predictions != truth].sum(), 0.0, 1.0))


def alpha_from_error(eps: float, n_classes: int, variant: AlphaVariant = AlphaVariant.SAMME) -> float:
    """Ensemble weight for a weak learner with weighted error ``eps``."""
    if not 0.0 <= eps <= 1.0:
        raise ValueError(f"eps must lie in [0, 1], got {eps}")
    e = min(max(eps, EPS_CLAMP), 1.0 - EPS_CLAMP)
    base = math.log((1.0 - e) / e)
    if AlphaVariant(variant) is AlphaVariant.BINARY:
        return 0.5 * base
    return base + math.log(n_classes - 1)


def guess_threshold(n_classes: int, variant: AlphaVariant) -> float:
    """Error at or above which a weak learner is no better than guessing."""
    if AlphaVariant(variant) is AlphaVariant.BINARY:
        return 0.5
    return 1.0 - 1.0 / n_classes


def update_distribution(
    weights: np.ndarray, alpha: float, predictions: np.ndarray, truth: np.ndarray
) -> np.ndarray:
    """Scale mistakes by e^alpha and hits by e^-alpha, then renormalize."""
    weights = np.asarray(weights, dtype=np.float64)
    mistakes = np.asarray(predictions) != np.asarray(truth)
    scaled = weights * np.where(mistakes, math.exp(alpha), math.exp(-alpha))
    z = float(scaled.sum())
    if z <= 0.0:
        raise DegenerateDistributionError("distribution update normalizer is zero")
    return scaled / z


def weak_seed(master_seed: int, chunk_id: int, round_index: int, retry: int) -> int:
    """Seed owned by one weak-learner training attempt."""
    return derive_seed(WEAK_STREAM, master_seed, chunk_id, round_index, retry)


def adaboost_train(ds: Dataset, cfg: BoostConfig, chunk_id: int = 0) -> ChunkEnsemble:
    """Boost weak classifiers on one chunk; raises if no round succeeds."""
    if ds.n_samples < 1:
        raise DimensionError("dataset is empty")
    n = ds.n_samples
    threshold = guess_threshold(ds.n_classes, cfg.alpha_variant)

    dist = np.full(n, 1.0 / n)
    dist_is_uniform = True
    hypotheses: list[WeakHypothesis] = []

    for round_index in range(cfg.n_rounds):
        accepted = None
        for retry in range(MAX_RETRIES_PER_SLOT + 1):
            seed = weak_seed(cfg.seed, chunk_id, round_index, retry)
            if cfg.weighting is WeightingMode.RESAMPLE and not dist_is_uniform:
                sample = weighted_resample(
                    ds, dist, n,
                    derive_seed(RESAMPLE_STREAM, cfg.seed, chunk_id, round_index, retry),
                )
                model = elm_train(
                    sample, cfg.n_hidden, cfg.activation, cfg.ridge, seed=seed
                )
            else:
                # A uniform distribution is exactly the unweighted problem,
                # so skip the weighting path and keep single-round training
                # bit-identical to a plain train call.
                sample_weights = None if dist_is_uniform else dist * n
                model = elm_train(
                    ds, cfg.n_hidden, cfg.activation, cfg.ridge,
                    seed=seed, sample_weights=sample_weights,
                )
            predictions = elm_predict(model, ds.features)
            eps = weighted_error(predictions, ds.labels, dist)
            if eps < threshold:
                accepted = (model, predictions, eps)
                break
            # No better than guessing: restart this slot from a clean slate.
            dist = np.full(n, 1.0 / n)
            dist_is_uniform = True

        if accepted is None:
            continue

        model, predictions, eps = accepted
        alpha = alpha_from_error(eps, ds.n_classes, cfg.alpha_variant)
        hypotheses.append(WeakHypothesis(model=model, alpha=alpha))
        if eps <= 0.0:
            break
        dist = update_distribution(dist, alpha, predictions, ds.labels)
        dist_is_uniform = False

    if not hypotheses:
        raise BoostingFailureError(
            f"chunk {chunk_id}: no weak hypothesis beat the guessing threshold "
            f"{threshold:.3f} in {cfg.n_rounds} rounds"
        )
    return ChunkEnsemble(hypotheses=tuple(hypotheses), n_classes=ds.n_classes, chunk_id=chunk_id)


def chunk_vote_scores(ensemble: ChunkEnsemble, X: np.ndarray) -> np.ndarray:
    """Per-class alpha-weighted vote totals, shape (n, n_classes)."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] != ensemble.n_features:
        raise DimensionError(
            f"X shape {X.shape} incompatible with ensemble of {ensemble.n_features} features"
        )
    scores = np.zeros((X.shape[0], ensemble.n_classes), dtype=np.float64)
    rows = np.arange(X.shape[0])
    for hypothesis in ensemble.hypotheses:
        predicted = elm_predict(hypothesis.model, X)
        scores[rows, predicted] += hypothesis.alpha
    return scores


def chunk_predict(ensemble: ChunkEnsemble, X: np.ndarray) -> np.ndarray:
    """Weighted-vote label for each sample; ties go to the lowest class."""
    return np.argmax(chunk_vote_scores(ensemble, X), axis=1)
