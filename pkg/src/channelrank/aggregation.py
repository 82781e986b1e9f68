"""Per-trial rank collection and frequency-based fusion.

Every paired trial is ranked independently; the per-trial orders are
stacked as columns of a rank matrix.  Fusion takes the most frequent
channel at each rank position, then removes repeats keeping first
occurrences, which preserves rank priority.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .dataset import TrialTensor, form_horizontal
from .rankers import rank_channels

__all__ = [
    "RankMatrix",
    "AggregatedRanking",
    "collect_rank_matrix",
    "positional_mode",
    "dedupe_preserve_order",
    "aggregate_horizontal",
]


@dataclass(frozen=True)
class RankMatrix:
    """Channel ids ranked per trial: entries[p, t] is the channel at rank
    position p for trial t.  Every column is a full channel permutation."""

    entries: np.ndarray
    trial_ids: np.ndarray

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=np.int64)
        trial_ids = np.asarray(self.trial_ids, dtype=np.int64)
        if entries.ndim != 2:
            raise ValueError("entries must be 2-D (channels x trials)")
        if trial_ids.shape != (entries.shape[1],):
            raise ValueError("trial_ids must align with columns")
        base = set(entries[:, 0].tolist())
        for t in range(entries.shape[1]):
            col = entries[:, t]
            if len(set(col.tolist())) != col.size or set(col.tolist()) != base:
                raise ValueError(
                    f"column {t} is not a permutation of the channel set"
                )
        entries.flags.writeable = False
        trial_ids.flags.writeable = False
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "trial_ids", trial_ids)


@dataclass(frozen=True)
class AggregatedRanking:
    """positional[p] is the winning channel at rank position p (repeats
    allowed); final is positional with repeats removed, first occurrence
    kept."""

    positional: np.ndarray
    final: np.ndarray

    def __post_init__(self):
        positional = np.asarray(self.positional, dtype=np.int64)
        final = np.asarray(self.final, dtype=np.int64)
        if final.size == 0:
            raise ValueError("final ranking is empty")
        expected = dedupe_preserve_order(positional)
        if not np.array_equal(final, expected):
            raise ValueError("final must be the order-preserving dedupe of positional")
        positional.flags.writeable = False
        final.flags.writeable = False
        object.__setattr__(self, "positional", positional)
        object.__setattr__(self, "final", final)


def collect_rank_matrix(
    tensor: TrialTensor, method, params=None, threads: int = 1
) -> RankMatrix:
    """Rank every paired trial and stack the orders as columns.

    Column t is the ranking of the horizontal dataset formed from trial
    index t; columns follow trial-index order no matter how many worker
    threads evaluate them.
    """
    trial_ids = tensor.paired_trial_indices()

    def rank_one(t):
        try:
            return rank_channels(form_horizontal(tensor, t), method, params).order
        except Exception as e:
            raise type(e)(f"trial {t}: {e}") from e

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            columns = list(pool.map(rank_one, trial_ids))
    else:
        columns = [rank_one(t) for t in trial_ids]
    return RankMatrix(
        entries=np.column_stack(columns),
        trial_ids=np.asarray(trial_ids, dtype=np.int64),
    )


def positional_mode(rank_matrix) -> np.ndarray:
    """Most frequent channel in each row; frequency ties go to the lowest id.

    Accepts a RankMatrix or any (positions x trials) integer array.
    """
    if isinstance(rank_matrix, RankMatrix):
        entries = rank_matrix.entries
    else:
        entries = np.asarray(rank_matrix, dtype=np.int64)
        if entries.ndim != 2 or entries.size == 0:
            raise ValueError("rank matrix must be a non-empty 2-D array")
    out = np.empty(entries.shape[0], dtype=np.int64)
    for p in range(entries.shape[0]):
        values, counts = np.unique(entries[p], return_counts=True)
        out[p] = values[np.argmax(counts)]  # values sorted, first max wins
    return out


def dedupe_preserve_order(values) -> np.ndarray:
    """Distinct values in order of first occurrence."""
    values = np.asarray(values, dtype=np.int64)
    if values.size == 0:
        raise ValueError("input vector is empty")
    return np.asarray(list(dict.fromkeys(values.tolist())), dtype=np.int64)


def aggregate_horizontal(
    tensor: TrialTensor, method, params=None, threads: int = 1
) -> tuple[RankMatrix, AggregatedRanking]:
    """Full fusion pipeline: rank matrix, positional mode, dedupe."""
    rank_matrix = collect_rank_matrix(tensor, method, params, threads=threads)
    positional = positional_mode(rank_matrix)
    return rank_matrix, AggregatedRanking(
        positional=positional, final=dedupe_preserve_order(positional)
    )
