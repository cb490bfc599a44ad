"""Exception hierarchy.

Two broad families matter to callers: problems with input data
(:class:`DataError`) and problems during model training
(:class:`TrainingError`).  The CLI maps them to distinct exit codes.
"""


class ElmBoostError(Exception):
    """Base class for all library errors."""


class DataError(ElmBoostError):
    """Invalid or unusable input data."""


class SvmlightParseError(DataError):
    """Malformed svmlight/libsvm text. Carries the 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class DimensionError(DataError):
    """Feature index or matrix shape out of bounds."""


class EmptyDatasetError(DataError):
    """Input contained no data rows."""


class DegenerateDistributionError(DataError):
    """A weight vector that cannot be used as a sampling distribution."""


class TrainingError(ElmBoostError):
    """Model training could not produce a usable result."""


class BoostingFailureError(TrainingError):
    """No weak hypothesis survived any boosting slot for a chunk."""


class PipelineError(TrainingError):
    """The partitioned training pipeline produced no usable chunk ensembles."""
