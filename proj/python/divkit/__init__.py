"""Dataset diversity metrics: DCScore and baselines."""

from ._divkit import (
    BatchScore,
    DiversityReport,
    DivkitError,
    FormatError,
    InputError,
    NumericalError,
    ParameterError,
    UndefinedCorrelation,
    correlate,
    dcscore,
    dcscore_batched,
    distinct_n,
    generate_synthetic,
    kmeans_inertia,
    num_threads,
    set_num_threads,
    spearman_rho,
    vendi_score,
)

__all__ = [
    "BatchScore",
    "DiversityReport",
    "DivkitError",
    "FormatError",
    "InputError",
    "NumericalError",
    "ParameterError",
    "UndefinedCorrelation",
    "correlate",
    "dcscore",
    "dcscore_batched",
    "distinct_n",
    "generate_synthetic",
    "kmeans_inertia",
    "num_threads",
    "set_num_threads",
    "spearman_rho",
    "vendi_score",
]
