"""Reading and writing the on-disk dataset format.

A dataset is two files: a JSON manifest describing the shape and a
long-format CSV holding the samples.  The CSV header is
``trial,class,sample,ch0,ch1,...``; rows are written sorted by
(class, trial, sample) but may arrive in any order on read.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np
import pandas as pd

from .dataset import Trial, TrialTensor

__all__ = ["DatasetFormatError", "load_dataset", "save_dataset", "manifest_path_for"]

_MANIFEST_FIELDS = ("samples_per_trial", "channels", "trials_per_class", "classes", "name")


class DatasetFormatError(ValueError):
    """A dataset file is missing, malformed, or contradicts its manifest."""


def manifest_path_for(data_path) -> Path:
    """Default manifest location: the data file's path with a .json suffix."""
    return Path(data_path).with_suffix(".json")


def _read_manifest(path: Path) -> dict:
    if not path.exists():
        raise DatasetFormatError(f"manifest not found: {path}")
    try:
        manifest = json.loads(path.read_text())
    except json.JSONDecodeError as e:
        raise DatasetFormatError(f"manifest {path} is not valid JSON: {e}") from e
    for key in _MANIFEST_FIELDS:
        if key not in manifest:
            raise DatasetFormatError(f"manifest {path} lacks required field '{key}'")
    for key in ("samples_per_trial", "channels", "trials_per_class", "classes"):
        v = manifest[key]
        if not isinstance(v, int) or v < 1:
            raise DatasetFormatError(f"manifest field '{key}' must be a positive integer")
    return manifest


def load_dataset(data_path, manifest_path=None) -> TrialTensor:
    """Load a CSV + manifest pair into a TrialTensor.

    If manifest_path is omitted it is derived from the data path by swapping
    the suffix for .json.  The loaded tensor is validated against every
    manifest dimension; any disagreement raises DatasetFormatError.
    """
    data_path = Path(data_path)
    manifest_path = Path(manifest_path) if manifest_path else manifest_path_for(data_path)
    manifest = _read_manifest(manifest_path)
    if not data_path.exists():
        raise DatasetFormatError(f"data file not found: {data_path}")

    n_channels = manifest["channels"]
    expected_cols = ["trial", "class", "sample"] + [f"ch{i}" for i in range(n_channels)]
    try:
        frame = pd.read_csv(data_path, comment="#", float_precision="round_trip")
    except Exception as e:
        raise DatasetFormatError(f"could not parse {data_path}: {e}") from e
    if list(frame.columns) != expected_cols:
        raise DatasetFormatError(
            f"{data_path}: header {list(frame.columns)[:6]}... does not match the "
            f"manifest's {n_channels} channels"
        )

    for col in ("trial", "class", "sample"):
        if not np.issubdtype(frame[col].dtype, np.integer):
            raise DatasetFormatError(f"{data_path}: column '{col}' must be integer")
    values = frame[expected_cols[3:]].to_numpy(dtype=np.float64)
    if not np.isfinite(values).all():
        bad = int(np.flatnonzero(~np.isfinite(values).all(axis=1))[0])
        raise DatasetFormatError(f"{data_path}: non-finite value in data row {bad}")

    labels = sorted(frame["class"].unique().tolist())
    if len(labels) != manifest["classes"]:
        raise DatasetFormatError(
            f"{data_path}: found {len(labels)} class labels {labels}, "
            f"manifest declares {manifest['classes']}"
        )

    trials = []
    grouped = frame.sort_values("sample", kind="stable").groupby(["class", "trial"], sort=True)
    for (label, trial_index), chunk in grouped:
        if len(chunk) != manifest["samples_per_trial"]:
            raise DatasetFormatError(
                f"trial (class={label}, index={trial_index}) has {len(chunk)} "
                f"samples, manifest declares {manifest['samples_per_trial']}"
            )
        if sorted(chunk["sample"].tolist()) != list(range(len(chunk))):
            raise DatasetFormatError(
                f"trial (class={label}, index={trial_index}) sample indices are "
                f"not 0..{len(chunk) - 1}"
            )
        trials.append(
            Trial(
                class_label=int(label),
                data=chunk[expected_cols[3:]].to_numpy(dtype=np.float64),
                trial_index=int(trial_index),
            )
        )

    per_class: dict[int, int] = {}
    for t in trials:
        per_class[t.class_label] = per_class.get(t.class_label, 0) + 1
    if set(per_class.values()) != {manifest["trials_per_class"]}:
        raise DatasetFormatError(
            f"{data_path}: trials per class {per_class} do not match manifest "
            f"trials_per_class={manifest['trials_per_class']}"
        )

    return TrialTensor(
        trials=tuple(trials),
        channel_count=n_channels,
        samples_per_trial=manifest["samples_per_trial"],
        name=str(manifest["name"]),
    )


def save_dataset(tensor: TrialTensor, data_path, manifest_path=None, precision="6") -> None:
    """Write a TrialTensor as a CSV + manifest pair.

    precision "6" emits floats at 6 significant digits (stable golden
    files); "full" emits shortest round-trip representations.
    """
    data_path = Path(data_path)
    manifest_path = Path(manifest_path) if manifest_path else manifest_path_for(data_path)
    counts = tensor.trial_counts()
    if len(set(counts.values())) != 1:
        raise ValueError(f"cannot save unequal trials per class: {counts}")
    trials_per_class = next(iter(counts.values()))

    rows = []
    for label in tensor.sorted_labels:
        for trial in tensor.trials_of(label):
            block = pd.DataFrame(
                trial.data, columns=[f"ch{i}" for i in range(tensor.channel_count)]
            )
            block.insert(0, "trial", trial.trial_index)
            block.insert(1, "class", label)
            block.insert(2, "sample", np.arange(trial.n_samples, dtype=np.int64))
            rows.append(block)
    frame = pd.concat(rows, ignore_index=True)
    float_format = None if precision == "full" else "%.6g"
    data_path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(data_path, index=False, float_format=float_format)

    manifest = {
        "samples_per_trial": tensor.samples_per_trial,
        "channels": tensor.channel_count,
        "trials_per_class": trials_per_class,
        "classes": tensor.class_count,
        "name": tensor.name,
    }
    manifest_path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
