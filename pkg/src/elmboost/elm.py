"""Single-hidden-layer classifiers with random hidden parameters.

Training draws the hidden layer (weights and biases) at random, evaluates
the hidden activation matrix on the inputs, and solves for the output
weights in closed form: a ridge-regularized weighted least-squares fit of
one-hot class targets via the normal equations.  Prediction scores are the
hidden activations times the output weights; the predicted class is the
argmax, ties resolving to the lowest class index.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np
import scipy.linalg
from scipy.special import expit

from .dataio import Dataset
from .errors import DataError, DimensionError, TrainingError

# Floor applied when an unregularized solve meets a singular normal matrix.
FALLBACK_RIDGE = 1e-8
DEFAULT_RIDGE = 1e-8


class Activation(str, enum.Enum):
    """Hidden-node activation family."""

    SIGMOID = "sigmoid"
    RBF = "rbf"
    HARDLIMIT = "hardlimit"


@dataclass(frozen=True)
class ElmModel:
    """A trained classifier: random hidden layer plus solved output weights.

    ``input_weights`` is (n_hidden, n_features), one row per hidden node;
    ``biases`` has length n_hidden; ``output_weights`` is
    (n_hidden, n_classes).  Immutable and safe to share between threads.
    """

    input_weights: np.ndarray
    biases: np.ndarray
    output_weights: np.ndarray
    activation: Activation
    n_classes: int
    n_features: int
    ridge: float
    solver_fallback: bool = False

    def __post_init__(self):
        iw = np.ascontiguousarray(self.input_weights, dtype=np.float64)
        b = np.ascontiguousarray(self.biases, dtype=np.float64)
        ow = np.ascontiguousarray(self.output_weights, dtype=np.float64)
        if iw.ndim != 2 or iw.shape[0] < 1:
            raise DimensionError(f"input_weights must be 2-D with >= 1 row, got {iw.shape}")
        if iw.shape[1] != self.n_features:
            raise DimensionError(
                f"input_weights have {iw.shape[1]} columns, expected {self.n_features}"
            )
        if b.shape != (iw.shape[0],):
            raise DimensionError(f"biases shape {b.shape} does not match {iw.shape[0]} nodes")
        if ow.shape != (iw.shape[0], self.n_classes):
            raise DimensionError(
                f"output_weights shape {ow.shape}, expected ({iw.shape[0]}, {self.n_classes})"
            )
        for name, arr in (("input_weights", iw), ("biases", b), ("output_weights", ow)):
            if not np.isfinite(arr).all():
                raise DataError(f"{name} contains non-finite values")
            arr.setflags(write=False)
        object.__setattr__(self, "input_weights", iw)
        object.__setattr__(self, "biases", b)
        object.__setattr__(self, "output_weights", ow)
        object.__setattr__(self, "activation", Activation(self.activation))

    @property
    def n_hidden(self) -> int:
        return self.input_weights.shape[0]


class SolveResult(NamedTuple):
    output_weights: np.ndarray
    ridge_used: float
    fallback: bool


def random_hidden_layer(
    n_features: int, n_hidden: int, activation: Activation, seed: int
) -> tuple[np.ndarray, np.ndarray]:
    """Draw hidden weights and biases uniformly from [-1, 1].

    RBF nodes get biases from (0, 1] instead, since they act as positive
    width parameters.  Deterministic for a fixed seed.
    """
    if n_features < 1 or n_hidden < 1:
        raise DimensionError(f"need n_features >= 1 and n_hidden >= 1, got {n_features}, {n_hidden}")
    rng = np.random.default_rng(seed)
    weights = rng.uniform(-1.0, 1.0, size=(n_hidden, n_features))
    if Activation(activation) is Activation.RBF:
        biases = 1.0 - rng.uniform(0.0, 1.0, size=n_hidden)
    else:
        biases = rng.uniform(-1.0, 1.0, size=n_hidden)
    return weights, biases


def hidden_matrix(
    X: np.ndarray, input_weights: np.ndarray, biases: np.ndarray, activation: Activation
) -> np.ndarray:
    """Evaluate every hidden node on every sample: H[i, j] = G(a_j, b_j, x_i)."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] != input_weights.shape[1]:
        raise DimensionError(
            f"X shape {X.shape} incompatible with hidden layer of width {input_weights.shape[1]}"
        )
    if X.size and not np.isfinite(X).all():
        raise DataError("input features contain non-finite values")

    kind = Activation(activation)
    if kind is Activation.RBF:
        # squared distances via the expansion |x - a|^2 = |x|^2 - 2 x.a + |a|^2
        sq = (
            np.sum(X * X, axis=1)[:, None]
            - 2.0 * (X @ input_weights.T)
            + np.sum(input_weights * input_weights, axis=1)[None, :]
        )
        np.maximum(sq, 0.0, out=sq)
        return np.exp(-biases[None, :] * sq)

    pre = X @ input_weights.T + biases[None, :]
    if kind is Activation.SIGMOID:
        return expit(pre)
    return (pre >= 0.0).astype(np.float64)


def solve_output_weights(
    H: np.ndarray,
    targets: np.ndarray,
    ridge: float = DEFAULT_RIDGE,
    sample_weights: Optional[np.ndarray] = None,
) -> SolveResult:
    """Least-squares output weights via the normal equations.

    Minimizes ``|W^(1/2) (H B - T)|^2 + ridge |B|^2`` where W is the
    diagonal of ``sample_weights`` (identity when absent), i.e. solves
    ``(H' W H + ridge I) B = H' W T`` with a Cholesky factorization.  A
    singular normal matrix at ridge=0 triggers one retry at
    ``FALLBACK_RIDGE``, reported through the ``fallback`` flag.
    """
    H = np.asarray(H, dtype=np.float64)
    T = np.asarray(targets, dtype=np.float64)
    if H.ndim != 2 or T.ndim != 2 or H.shape[0] != T.shape[0]:
        raise DimensionError(f"incompatible shapes H {H.shape}, targets {T.shape}")
    if H.shape[0] < 1:
        raise DimensionError("need at least one sample")
    if ridge < 0:
        raise ValueError(f"ridge must be non-negative, got {ridge}")

    if sample_weights is not None:
        w = np.asarray(sample_weights, dtype=np.float64)
        if w.shape != (H.shape[0],):
            raise DimensionError(f"sample_weights shape {w.shape} does not match {H.shape[0]} rows")
        if np.any(w < 0) or w.sum() <= 0:
            raise DataError("sample_weights must be non-negative with positive sum")
        root = np.sqrt(w)[:, None]
        H = H * root
        T = T * root

    gram = H.T @ H
    moment = H.T @ T

    for attempt_ridge, is_fallback in ((ridge, False), (FALLBACK_RIDGE, True)):
        A = gram
        if attempt_ridge > 0:
            A = gram + attempt_ridge * np.eye(gram.shape[0])
        try:
            factor = scipy.linalg.cho_factor(A, lower=True, check_finite=False)
            beta = scipy.linalg.cho_solve(factor, moment, check_finite=False)
        except np.linalg.LinAlgError:
            if is_fallback:
                raise TrainingError(
                    f"normal matrix singular even at ridge={FALLBACK_RIDGE}"
                ) from None
            continue
        if not np.isfinite(beta).all():
            if is_fallback:
                raise TrainingError("solver produced non-finite output weights")
            continue
        return SolveResult(beta, attempt_ridge, is_fallback)
    raise TrainingError("unreachable")  # pragma: no cover


def one_hot_targets(labels: np.ndarray, n_classes: int) -> np.ndarray:
    """(n, n_classes) matrix with 1.0 at each sample's true class."""
    T = np.zeros((labels.shape[0], n_classes), dtype=np.float64)
    T[np.arange(labels.shape[0]), labels] = 1.0
    return T


def elm_train(
    ds: Dataset,
    n_hidden: int,
    activation: Activation = Activation.SIGMOID,
    ridge: float = DEFAULT_RIDGE,
    seed: int = 0,
    sample_weights: Optional[np.ndarray] = None,
) -> ElmModel:
    """Train one classifier on a dataset, deterministic for a fixed seed."""
    if ds.n_samples < 1:
        raise DimensionError("dataset is empty")
    weights, biases = random_hidden_layer(ds.n_features, n_hidden, activation, seed)
    H = hidden_matrix(ds.features, weights, biases, activation)
    targets = one_hot_targets(ds.labels, ds.n_classes)
    solved = solve_output_weights(H, targets, ridge=ridge, sample_weights=sample_weights)
    return ElmModel(
        input_weights=weights,
        biases=biases,
        output_weights=solved.output_weights,
        activation=Activation(activation),
        n_classes=ds.n_classes,
        n_features=ds.n_features,
        ridge=solved.ridge_used,
        solver_fallback=solved.fallback,
    )


def elm_predict_scores(model: ElmModel, X: np.ndarray) -> np.ndarray:
    """Per-class scores: hidden activations times output weights."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] != model.n_features:
        raise DimensionError(
            f"X shape {X.shape} incompatible with model of {model.n_features} features"
        )
    H = hidden_matrix(X, model.input_weights, model.biases, model.activation)
    return H @ model.output_weights


def elm_predict(model: ElmModel, X: np.ndarray) -> np.ndarray:
    """Predicted class indices; ties go to the lowest class index."""
    scores = elm_predict_scores(model, X)
    return np.argmax(scores, axis=1)
