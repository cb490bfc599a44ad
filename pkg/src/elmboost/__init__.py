"""Chunk-partitioned AdaBoosted extreme learning machine ensembles.

The pipeline partitions a training set into random chunks, boosts a small
random-hidden-layer classifier ensemble on each chunk in parallel, and
combines the chunk ensembles into one plurality-voting classifier.  The
package also ships the dataset tooling (svmlight parsing, scaling,
synthetic generators), the evaluation metrics and an experiment CLI.
"""

__version__ = "0.1.0"

from .boost import (
    AlphaVariant,
    BoostConfig,
    ChunkEnsemble,
    WeakHypothesis,
    WeightingMode,
    adaboost_train,
    alpha_from_error,
    chunk_predict,
    update_distribution,
    weighted_error,
)
from .dataio import (
    Dataset,
    align_to,
    dump_svmlight,
    load_svmlight,
    minmax_apply,
    minmax_params,
    parse_features,
    parse_svmlight,
    scale_datasets,
    weighted_resample,
)
from .elm import (
    Activation,
    ElmModel,
    elm_predict,
    elm_predict_scores,
    elm_train,
    hidden_matrix,
    random_hidden_layer,
    solve_output_weights,
)
from .engine import (
    ExperimentConfig,
    GlobalEnsemble,
    global_predict,
    map_assign,
    reduce_all,
    speedup_report,
    train_pipeline,
)
from .errors import (
    BoostingFailureError,
    DataError,
    DegenerateDistributionError,
    DimensionError,
    ElmBoostError,
    EmptyDatasetError,
    PipelineError,
    SvmlightParseError,
    TrainingError,
)
from .metrics import (
    ConfusionMatrix,
    MetricsReport,
    confusion,
    evaluate,
    macro_metrics,
    stability_stats,
)
from .synthetic import gaussian_mixture, waveform

__all__ = [name for name in dir() if not name.startswith("_")]
