"""Prefix sweeps, the accuracy-per-feature efficiency measure, and the two
experiment drivers.

A sweep fits one classifier on every prefix of a ranked channel list and
keeps the best accuracy together with the smallest prefix length that
attains it; the baseline is the same classifier on all channels.  The
vertical driver ranks one globally stacked dataset (training partition
only); the horizontal driver fuses per-trial rankings, then sweeps each
trial on its own split and averages the per-trial results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .aggregation import aggregate_horizontal
from .classifiers import ClassifierSpec, accuracy, fit, predict
from .dataset import LabeledMatrix, TrialTensor, form_horizontal, form_vertical, project_channels, split
from .rankers import rank_channels

__all__ = [
    "SweepResult",
    "TrialDetail",
    "ExperimentReport",
    "sweep",
    "rho",
    "run_vertical_experiment",
    "run_horizontal_experiment",
]


@dataclass(frozen=True)
class SweepResult:
    """Accuracy at every ranking prefix, plus the winning prefix and the
    all-channels baseline.  best_n is the smallest n attaining the max."""

    per_n: tuple[tuple[int, float], ...]
    best_n: int
    best_accuracy: float
    baseline_accuracy: float


@dataclass(frozen=True)
class TrialDetail:
    trial_index: int
    sweep: SweepResult


@dataclass(frozen=True)
class ExperimentReport:
    """One table row: selected channel count, accuracy, baseline, and the
    accuracy-per-channel ratio.  Horizontal rows hold per-trial means and
    keep the per-trial sweeps in detail; vertical rows hold a single sweep
    under trial_index -1.  single_feature flags rows whose selected count
    is one, where the ratio is not meaningful on its own."""

    dataset: str
    method: str
    classifier: str
    setting: str
    selected: float
    ca: float
    baseline_ca: float
    rho: float
    single_feature: bool
    detail: tuple[TrialDetail, ...]


def rho(ca_percent: float, n_features: float) -> float:
    """Classification accuracy (percent) divided by the feature count."""
    if n_features <= 0:
        raise ValueError(f"feature count must be positive, got {n_features}")
    return ca_percent / n_features


def sweep(
    ranking,
    train: LabeledMatrix,
    test: LabeledMatrix,
    spec: ClassifierSpec,
) -> SweepResult:
    """Fit/score the classifier on every prefix of a ranked channel list.

    The baseline fits on the train matrix exactly as given (all channels,
    original order).  Accuracy ties between prefixes go to the smaller n.
    """
    ranking = np.asarray(ranking, dtype=np.int64)
    if ranking.size == 0:
        raise ValueError("ranking must be non-empty")
    per_n = []
    for n in range(1, ranking.size + 1):
        head = ranking[:n]
        try:
            model = fit(spec, project_channels(train, head))
            predicted = predict(model, project_channels(test, head))
            per_n.append((n, accuracy(predicted, test.labels)))
        except Exception as e:
            raise type(e)(f"sweep failed at n={n}: {e}") from e
    accs = np.array([a for _, a in per_n])
    best_idx = int(np.argmax(accs))  # first max: smallest n wins ties
    baseline_model = fit(spec, train)
    baseline = accuracy(predict(baseline_model, test), test.labels)
    return SweepResult(
        per_n=tuple(per_n),
        best_n=per_n[best_idx][0],
        best_accuracy=float(accs[best_idx]),
        baseline_accuracy=baseline,
    )


def run_vertical_experiment(
    tensor: TrialTensor,
    method,
    params,
    spec: ClassifierSpec,
    split_fraction: float = 0.7,
    seed: int = 0,
) -> ExperimentReport:
    """Stack all trials, split, rank the training partition, sweep once.

    The ranking never sees the test partition.
    """
    matrix = form_vertical(tensor)
    train, test = split(matrix, split_fraction, seed)
    ranking = rank_channels(train, method, params)
    result = sweep(ranking.order, train, test, spec)
    method_name = method if isinstance(method, str) else getattr(method, "__name__", "custom")
    return ExperimentReport(
        dataset=tensor.name,
        method=method_name,
        classifier=spec.kind,
        setting="vertical",
        selected=float(result.best_n),
        ca=result.best_accuracy,
        baseline_ca=result.baseline_accuracy,
        rho=rho(result.best_accuracy, result.best_n),
        single_feature=result.best_n == 1,
        detail=(TrialDetail(trial_index=-1, sweep=result),),
    )


def run_horizontal_experiment(
    tensor: TrialTensor,
    method,
    params,
    spec: ClassifierSpec,
    split_fraction: float = 0.7,
    seed: int = 0,
    per_trial_rankings: bool = False,
    threads: int = 1,
) -> ExperimentReport:
    """Fuse per-trial rankings, then sweep every trial on its own split.

    Reported values are the arithmetic means of the per-trial best prefix
    sizes, best accuracies and baselines; the ratio is mean accuracy over
    mean prefix size.  The rank matrix is built from full trials before any
    splitting (only the sweep uses train/test partitions), so the fused
    ranking is not leakage-free with respect to the per-trial test rows.
    With per_trial_rankings=True each trial is swept on its own ranking
    column instead of the shared fused list.
    """
    rank_matrix, aggregated = aggregate_horizontal(tensor, method, params, threads=threads)
    details = []
    for pos, trial_index in enumerate(rank_matrix.trial_ids.tolist()):
        ranking = rank_matrix.entries[:, pos] if per_trial_rankings else aggregated.final
        matrix = form_horizontal(tensor, trial_index)
        # one shared seed: identical trials get identical splits and sweeps
        train, test = split(matrix, split_fraction, seed)
        try:
            result = sweep(ranking, train, test, spec)
        except Exception as e:
            raise type(e)(f"trial {trial_index}: {e}") from e
        details.append(TrialDetail(trial_index=trial_index, sweep=result))

    mean_n = float(np.mean([d.sweep.best_n for d in details]))
    mean_ca = float(np.mean([d.sweep.best_accuracy for d in details]))
    mean_baseline = float(np.mean([d.sweep.baseline_accuracy for d in details]))
    method_name = method if isinstance(method, str) else getattr(method, "__name__", "custom")
    return ExperimentReport(
        dataset=tensor.name,
        method=method_name,
        classifier=spec.kind,
        setting="horizontal",
        selected=mean_n,
        ca=mean_ca,
        baseline_ca=mean_baseline,
        rho=rho(mean_ca, mean_n),
        single_feature=math.isclose(mean_n, 1.0),
        detail=tuple(details),
    )
