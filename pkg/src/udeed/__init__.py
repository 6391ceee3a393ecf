"""Semi-supervised ensembles of logistic classifiers.

Trains an ensemble that stays accurate on the labeled examples while its
members are pushed to disagree on unlabeled ones, then predicts by
weighted voting. The package also ships the full evaluation protocol:
seeded L/U/T splits, a Bagging baseline, paired t-tests, and four ensemble
diversity measures.

The training hot path runs on compiled kernels when the extension built;
udeed.KERNEL_BACKEND names the implementation in use ("cython" or
"numpy").
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .core import (
    EnsembleModel,
    LabeledExample,
    TrainConfig,
    TrainingData,
    Variant,
    augment_bias,
    augment_bias_matrix,
    dot,
)
from .data import (
    RawDataset,
    Split,
    SplitSpec,
    bootstrap_sample,
    load_dataset,
    min_max_scale,
    parse_csv,
    parse_sparse,
    split_lut,
    two_gaussian_dataset,
)
from .diversity import (
    MEASURES,
    OracleMatrix,
    all_measures,
    coincident_failure_diversity,
    disagreement,
    double_fault_complement,
    entropy_diversity,
    oracle_matrix,
)
from .errors import (
    DataFormatError,
    DimensionMismatchError,
    NonFiniteLossError,
    SingleClassWarning,
    UdeedError,
)
from .evaluation import (
    ComparisonVerdict,
    ExperimentReport,
    Outcome,
    RunResult,
    bagging_train,
    paired_t_test,
    render_report,
    report_records,
    run_experiment,
    t_distribution_p,
)
from .logistic import base_output_f, blh, blh_gradient, logistic_g
from .model_io import load_model, save_model
from .training import (
    DescentResult,
    LossBreakdown,
    TrainResult,
    descend,
    diversity_loss,
    empirical_loss,
    init_ensemble,
    loss_gradient,
    pair_diversity,
    total_loss,
    train,
    train_traced,
)
from .voting import Prediction, accuracy, predict, predict_batch, predict_unweighted

__version__ = "0.1.0"

__all__ = [
    "KERNEL_BACKEND",
    "__version__",
    # core
    "EnsembleModel",
    "LabeledExample",
    "TrainConfig",
    "TrainingData",
    "Variant",
    "augment_bias",
    "augment_bias_matrix",
    "dot",
    # data
    "RawDataset",
    "Split",
    "SplitSpec",
    "bootstrap_sample",
    "load_dataset",
    "min_max_scale",
    "parse_csv",
    "parse_sparse",
    "split_lut",
    "two_gaussian_dataset",
    # diversity
    "MEASURES",
    "OracleMatrix",
    "all_measures",
    "coincident_failure_diversity",
    "disagreement",
    "double_fault_complement",
    "entropy_diversity",
    "oracle_matrix",
    # errors
    "DataFormatError",
    "DimensionMismatchError",
    "NonFiniteLossError",
    "SingleClassWarning",
    "UdeedError",
    # evaluation
    "ComparisonVerdict",
    "ExperimentReport",
    "Outcome",
    "RunResult",
    "bagging_train",
    "paired_t_test",
    "render_report",
    "report_records",
    "run_experiment",
    "t_distribution_p",
    # logistic
    "base_output_f",
    "blh",
    "blh_gradient",
    "logistic_g",
    # model io
    "load_model",
    "save_model",
    # training
    "DescentResult",
    "LossBreakdown",
    "TrainResult",
    "descend",
    "diversity_loss",
    "empirical_loss",
    "init_ensemble",
    "loss_gradient",
    "pair_diversity",
    "total_loss",
    "train",
    "train_traced",
    # voting
    "Prediction",
    "accuracy",
    "predict",
    "predict_batch",
    "predict_unweighted",
]
