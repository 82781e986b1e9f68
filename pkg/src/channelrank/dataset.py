"""Trial-structured dataset types and the dataset-formation operations.

A recording session is a collection of trials, each a (samples x channels)
matrix tagged with a class label.  Rankers and classifiers never see trials
directly; they consume flat labeled matrices produced by the two formation
procedures (pairwise per-trial concatenation, or one global stack) plus the
stratified split and channel projection helpers below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Trial",
    "TrialTensor",
    "LabeledMatrix",
    "form_horizontal",
    "form_vertical",
    "split",
    "project_channels",
]


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class Trial:
    """One contiguous recording segment collected under a single class.

    data is (samples x channels); trial_index is unique within its class.
    """

    class_label: int
    data: np.ndarray
    trial_index: int

    def __post_init__(self):
        data = np.asarray(self.data, dtype=np.float64)
        if data.ndim != 2:
            raise ValueError(f"trial data must be 2-D, got shape {data.shape}")
        if not np.isfinite(data).all():
            raise ValueError(
                f"trial (class={self.class_label}, index={self.trial_index}) "
                "contains non-finite values"
            )
        if self.trial_index < 0:
            raise ValueError("trial_index must be non-negative")
        object.__setattr__(self, "data", _readonly(data))

    @property
    def n_samples(self) -> int:
        return self.data.shape[0]

    @property
    def n_channels(self) -> int:
        return self.data.shape[1]


@dataclass(frozen=True)
class TrialTensor:
    """A full dataset: trials x (samples x channels), labeled by class.

    Every trial must have the same (samples x channels) shape.  Class labels
    are arbitrary integers; at least two classes are required.  Equal trial
    counts per class are only demanded at pairing time, not here.
    """

    trials: tuple[Trial, ...]
    channel_count: int
    samples_per_trial: int
    class_labels: frozenset[int] = field(default=frozenset())
    name: str = "dataset"

    def __post_init__(self):
        trials = tuple(self.trials)
        if not trials:
            raise ValueError("a TrialTensor needs at least one trial")
        labels = frozenset(t.class_label for t in trials)
        if self.class_labels and labels != frozenset(self.class_labels):
            raise ValueError(
                f"declared class labels {sorted(self.class_labels)} do not "
                f"match trial labels {sorted(labels)}"
            )
        if len(labels) < 2:
            raise ValueError("at least 2 classes are required")
        for t in trials:
            if t.data.shape != (self.samples_per_trial, self.channel_count):
                raise ValueError(
                    f"trial (class={t.class_label}, index={t.trial_index}) has "
                    f"shape {t.data.shape}, expected "
                    f"({self.samples_per_trial}, {self.channel_count})"
                )
        seen = set()
        for t in trials:
            key = (t.class_label, t.trial_index)
            if key in seen:
                raise ValueError(f"duplicate trial index {key}")
            seen.add(key)
        object.__setattr__(self, "trials", trials)
        object.__setattr__(self, "class_labels", labels)

    @classmethod
    def from_trials(cls, trials, name: str = "dataset") -> "TrialTensor":
        trials = tuple(trials)
        if not trials:
            raise ValueError("a TrialTensor needs at least one trial")
        first = trials[0]
        return cls(
            trials=trials,
            channel_count=first.n_channels,
            samples_per_trial=first.n_samples,
            name=name,
        )

    @property
    def sorted_labels(self) -> list[int]:
        return sorted(self.class_labels)

    @property
    def class_count(self) -> int:
        return len(self.class_labels)

    def trials_of(self, label: int) -> list[Trial]:
        """Trials of one class, in trial-index order."""
        return sorted(
            (t for t in self.trials if t.class_label == label),
            key=lambda t: t.trial_index,
        )

    def trial_counts(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for t in self.trials:
            counts[t.class_label] = counts.get(t.class_label, 0) + 1
        return counts

    def paired_trial_indices(self) -> list[int]:
        """Trial indices shared by all classes, checking the pairing invariant.

        Raises if classes have unequal trial counts or mismatched indices.
        """
        counts = self.trial_counts()
        if len(set(counts.values())) != 1:
            raise ValueError(
                f"horizontal pairing needs equal trials per class, got {counts}"
            )
        per_class = [
            {t.trial_index for t in self.trials_of(label)}
            for label in self.sorted_labels
        ]
        common = set.intersection(*per_class)
        if any(s != common for s in per_class):
            raise ValueError("trial indices differ between classes")
        return sorted(common)


@dataclass(frozen=True)
class LabeledMatrix:
    """A flat (rows x channels) matrix with per-row class labels.

    channel_ids maps columns back to the originating tensor's channel
    indices, so projections can be chained without losing identity.
    """

    features: np.ndarray
    labels: np.ndarray
    channel_ids: np.ndarray

    def __post_init__(self):
        features = np.asarray(self.features, dtype=np.float64)
        labels = np.asarray(self.labels, dtype=np.int64)
        channel_ids = np.asarray(self.channel_ids, dtype=np.int64)
        if features.ndim != 2:
            raise ValueError("features must be 2-D")
        if features.shape[0] < 2:
            raise ValueError("a labeled matrix needs at least 2 rows")
        if labels.shape != (features.shape[0],):
            raise ValueError(
                f"labels length {labels.shape} does not match "
                f"{features.shape[0]} rows"
            )
        if channel_ids.shape != (features.shape[1],):
            raise ValueError(
                f"channel_ids length {channel_ids.shape} does not match "
                f"{features.shape[1]} columns"
            )
        if len(set(channel_ids.tolist())) != channel_ids.size:
            raise ValueError("channel_ids must be distinct")
        object.__setattr__(self, "features", _readonly(features))
        object.__setattr__(self, "labels", _readonly(labels))
        object.__setattr__(self, "channel_ids", _readonly(channel_ids))

    @property
    def n_rows(self) -> int:
        return self.features.shape[0]

    @property
    def n_channels(self) -> int:
        return self.features.shape[1]

    @property
    def present_labels(self) -> list[int]:
        return sorted(set(self.labels.tolist()))


def form_horizontal(tensor: TrialTensor, trial_index: int) -> LabeledMatrix:
    """Stack trial `trial_index` of every class into one labeled matrix.

    Classes are concatenated in ascending label order, so a 2-class tensor
    with 500-sample trials yields 500 rows of the first label followed by
    500 rows of the second.
    """
    indices = tensor.paired_trial_indices()
    if trial_index not in indices:
        raise ValueError(
            f"trial index {trial_index} is not present for every class "
            f"(shared indices: {indices})"
        )
    blocks = []
    labels = []
    for label in tensor.sorted_labels:
        trial = next(
            t for t in tensor.trials_of(label) if t.trial_index == trial_index
        )
        blocks.append(trial.data)
        labels.append(np.full(trial.n_samples, label, dtype=np.int64))
    return LabeledMatrix(
        features=np.vstack(blocks),
        labels=np.concatenate(labels),
        channel_ids=np.arange(tensor.channel_count, dtype=np.int64),
    )


def form_vertical(tensor: TrialTensor) -> LabeledMatrix:
    """Stack every trial into one labeled matrix, grouped by class.

    Trials appear in class-label order, then trial-index order within each
    class; row count is total trials times samples_per_trial.
    """
    blocks = []
    labels = []
    for label in tensor.sorted_labels:
        for trial in tensor.trials_of(label):
            blocks.append(trial.data)
            labels.append(np.full(trial.n_samples, label, dtype=np.int64))
    return LabeledMatrix(
        features=np.vstack(blocks),
        labels=np.concatenate(labels),
        channel_ids=np.arange(tensor.channel_count, dtype=np.int64),
    )


def split(
    matrix: LabeledMatrix, train_fraction: float, seed: int
) -> tuple[LabeledMatrix, LabeledMatrix]:
    """Stratified train/test split of the rows of a labeled matrix.

    Within each class the rows are shuffled with a generator seeded from
    `seed` and the first ceil(train_fraction * n_class) go to train.  Row
    order within each partition follows the input matrix, so the output is
    a pair of complementary row subsequences.
    """
    if not 0.0 < train_fraction < 1.0:
        raise ValueError(f"train_fraction must be in (0, 1), got {train_fraction}")
    rng = np.random.default_rng(seed)
    train_mask = np.zeros(matrix.n_rows, dtype=bool)
    for label in matrix.present_labels:
        idx = np.flatnonzero(matrix.labels == label)
        n = idx.size
        # guard against float noise pushing an exact product past its ceiling
        n_train = math.ceil(train_fraction * n - 1e-9)
        if n_train == 0 or n_train == n:
            raise ValueError(
                f"class {label} would get an empty partition "
                f"({n_train} of {n} rows to train)"
            )
        picked = rng.permutation(n)[:n_train]
        train_mask[idx[picked]] = True

    def take(mask):
        return LabeledMatrix(
            features=matrix.features[mask],
            labels=matrix.labels[mask],
            channel_ids=matrix.channel_ids,
        )

    return take(train_mask), take(~train_mask)


def project_channels(matrix: LabeledMatrix, channels) -> LabeledMatrix:
    """Reorder/subset columns to the given channel-id list; labels unchanged."""
    channels = np.asarray(channels, dtype=np.int64)
    if channels.size == 0:
        raise ValueError("channel list must be non-empty")
    if len(set(channels.tolist())) != channels.size:
        raise ValueError("channel list contains duplicates")
    pos_of = {int(c): p for p, c in enumerate(matrix.channel_ids)}
    try:
        cols = [pos_of[int(c)] for c in channels]
    except KeyError as e:
        raise ValueError(f"unknown channel id {e.args[0]}") from None
    return LabeledMatrix(
        features=matrix.features[:, cols],
        labels=matrix.labels,
        channel_ids=channels,
    )
