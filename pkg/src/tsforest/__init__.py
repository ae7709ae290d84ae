"""Time series forest classification on randomized interval features.

Series are summarized over randomly sampled intervals by three statistics
(mean, standard deviation, slope); an ensemble of trees splits on those
features, scored by entropy gain with a threshold-margin tie-break. The
trained forest votes by majority, exposes temporal importance curves that
localize which time regions drove its decisions, and comes with
nearest-neighbor Euclidean and DTW baselines for comparison.
"""
from .base import Dataset, FeatureKind, Interval, TimeSeries, validate_dataset
from .baselines import (
    NO_WINDOW,
    WarpingWindow,
    best_warping_window,
    dtw_distance,
    euclidean_distance,
    nn_classify,
    nn_error_rate,
)
from .datasets import (
    SyntheticSpec,
    scaled_spec,
    generate_noise_dataset,
    generate_shifted_dataset,
    load_ucr,
    save_ucr,
)
from .errors import (
    DistributionMismatch,
    EmptyFile,
    IndexOutOfRange,
    InvalidLabel,
    InvalidSampleSize,
    LengthMismatch,
    NonFiniteValue,
    ParseError,
    RaggedRows,
    TsforestError,
)
from .features import compute_feature, compute_mean, compute_slope, compute_std
from .forest import (
    Forest,
    ForestConfig,
    VoteResult,
    evaluate,
    fit,
    load_model,
    predict,
    predict_dataset,
    save_model,
    majority_vote,
    tree_votes,
)
from .importance import ImportanceCurves, curves_to_csv, importance_curves, interval_count
from .sampling import sample_intervals, sample_without_replacement, tree_rng
from .splitting import (
    ClassDistribution,
    SplitCandidate,
    SplitEvaluation,
    best_split_for_kind,
    candidate_thresholds,
    compare_entrance,
    entropy_gain,
    node_entropy,
    select_best_split,
    split_margin,
)
from .tree import LeafNode, SplitNode, TreeConfig, TreeNode, build_tree, predict_tree

__version__ = "0.1.0"

__all__ = [
    "Dataset",
    "FeatureKind",
    "Interval",
    "TimeSeries",
    "validate_dataset",
    "NO_WINDOW",
    "WarpingWindow",
    "best_warping_window",
    "dtw_distance",
    "euclidean_distance",
    "nn_classify",
    "nn_error_rate",
    "SyntheticSpec",
    "scaled_spec",
    "generate_noise_dataset",
    "generate_shifted_dataset",
    "load_ucr",
    "save_ucr",
    "DistributionMismatch",
    "EmptyFile",
    "IndexOutOfRange",
    "InvalidLabel",
    "InvalidSampleSize",
    "LengthMismatch",
    "NonFiniteValue",
    "ParseError",
    "RaggedRows",
    "TsforestError",
    "compute_feature",
    "compute_mean",
    "compute_slope",
    "compute_std",
    "Forest",
    "ForestConfig",
    "VoteResult",
    "evaluate",
    "fit",
    "load_model",
    "predict",
    "predict_dataset",
    "save_model",
    "majority_vote",
    "tree_votes",
    "ImportanceCurves",
    "curves_to_csv",
    "importance_curves",
    "interval_count",
    "sample_intervals",
    "sample_without_replacement",
    "tree_rng",
    "ClassDistribution",
    "SplitCandidate",
    "SplitEvaluation",
    "best_split_for_kind",
    "candidate_thresholds",
    "compare_entrance",
    "entropy_gain",
    "node_entropy",
    "select_best_split",
    "split_margin",
    "LeafNode",
    "SplitNode",
    "TreeConfig",
    "TreeNode",
    "build_tree",
    "predict_tree",
    "__version__",
]
