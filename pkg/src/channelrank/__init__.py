"""Channel ranking and selection for trial-structured multichannel datasets.

The pipeline: load or synthesize a trial tensor, form a flat labeled
dataset (per paired trial, or one global stack), rank channels with one of
three methods, optionally fuse per-trial rankings by positional frequency,
then sweep classifier accuracy over ranking prefixes to find the smallest
channel subset that performs best.
"""

__version__ = "0.1.0"

from .aggregation import (
    AggregatedRanking,
    RankMatrix,
    aggregate_horizontal,
    collect_rank_matrix,
    dedupe_preserve_order,
    positional_mode,
)
from .classifiers import ClassifierModel, ClassifierSpec, accuracy, fit, predict
from .dataset import (
    LabeledMatrix,
    Trial,
    TrialTensor,
    form_horizontal,
    form_vertical,
    project_channels,
    split,
)
from .evaluation import (
    ExperimentReport,
    SweepResult,
    TrialDetail,
    rho,
    run_horizontal_experiment,
    run_vertical_experiment,
    sweep,
)
from .io import DatasetFormatError, load_dataset, save_dataset
from .rankers import (
    LaplacianParams,
    MrmrParams,
    RankingList,
    ReliefParams,
    discretize,
    knn_graph,
    laplacian_rank,
    mrmr_rank,
    mutual_information,
    rank_channels,
    relief_rank,
)
from .synthetic import SynthSpec, generate_synthetic

__all__ = [
    "__version__",
    "Trial",
    "TrialTensor",
    "LabeledMatrix",
    "form_horizontal",
    "form_vertical",
    "split",
    "project_channels",
    "DatasetFormatError",
    "load_dataset",
    "save_dataset",
    "SynthSpec",
    "generate_synthetic",
    "RankingList",
    "ReliefParams",
    "MrmrParams",
    "LaplacianParams",
    "relief_rank",
    "mrmr_rank",
    "laplacian_rank",
    "rank_channels",
    "discretize",
    "mutual_information",
    "knn_graph",
    "RankMatrix",
    "AggregatedRanking",
    "collect_rank_matrix",
    "positional_mode",
    "dedupe_preserve_order",
    "aggregate_horizontal",
    "ClassifierSpec",
    "ClassifierModel",
    "fit",
    "predict",
    "accuracy",
    "SweepResult",
    "TrialDetail",
    "ExperimentReport",
    "sweep",
    "rho",
    "run_vertical_experiment",
    "run_horizontal_experiment",
]
