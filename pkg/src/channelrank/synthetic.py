"""Synthetic trial-tensor generator with planted structure.

Serves as the oracle test-bed: informative channels get a known per-class
mean offset, redundant channels are near-exact copies of a source, and
everything else is Gaussian noise.  Generation is deterministic per seed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dataset import Trial, TrialTensor

__all__ = ["SynthSpec", "generate_synthetic"]


@dataclass(frozen=True)
class SynthSpec:
    """Shape and planted structure of a synthetic dataset.

    effect_size is the class-mean separation on informative channels in
    units of noise_sigma: the extreme classes sit effect_size * sigma apart.
    redundant_pairs lists (source, copy) channel indices; the copy equals
    the source plus sigma/100 jitter.
    """

    samples_per_trial: int
    channel_count: int
    trials_per_class: int
    class_count: int = 2
    informative_channels: tuple[int, ...] = ()
    effect_size: float = 0.0
    redundant_pairs: tuple[tuple[int, int], ...] = ()
    noise_sigma: float = 1.0
    name: str = "synthetic"

    def __post_init__(self):
        for name in ("samples_per_trial", "channel_count", "trials_per_class", "class_count"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.class_count < 2:
            raise ValueError("class_count must be at least 2")
        if self.noise_sigma <= 0:
            raise ValueError("noise_sigma must be positive")
        informative = tuple(int(c) for c in self.informative_channels)
        pairs = tuple((int(a), int(b)) for a, b in self.redundant_pairs)
        for c in informative:
            if not 0 <= c < self.channel_count:
                raise ValueError(f"informative channel {c} out of range")
        copies = set()
        for src, copy in pairs:
            for c in (src, copy):
                if not 0 <= c < self.channel_count:
                    raise ValueError(f"redundant pair channel {c} out of range")
            if src == copy:
                raise ValueError("a channel cannot copy itself")
            if copy in informative:
                raise ValueError(
                    f"channel {copy} cannot be both a redundant copy and an "
                    "informative source"
                )
            if copy in copies:
                raise ValueError(f"channel {copy} is the copy of two sources")
            copies.add(copy)
        object.__setattr__(self, "informative_channels", informative)
        object.__setattr__(self, "redundant_pairs", pairs)


def _class_offsets(spec: SynthSpec) -> np.ndarray:
    """Per-class mean offsets, evenly spaced over +-effect_size*sigma/2."""
    k = spec.class_count
    centered = np.arange(k, dtype=np.float64) / (k - 1) - 0.5
    return centered * spec.effect_size * spec.noise_sigma


def generate_synthetic(spec: SynthSpec, seed: int) -> TrialTensor:
    """Generate a TrialTensor from a SynthSpec, bit-reproducible per seed.

    Class labels are 1..class_count.  Draw order is fixed: for each class
    and trial, the full noise block first, then jitter for each redundant
    pair in listed order.
    """
    rng = np.random.default_rng(seed)
    offsets = _class_offsets(spec)
    informative = list(spec.informative_channels)
    trials = []
    for class_idx in range(spec.class_count):
        for trial_index in range(spec.trials_per_class):
            data = rng.normal(
                0.0, spec.noise_sigma, size=(spec.samples_per_trial, spec.channel_count)
            )
            if informative:
                data[:, informative] += offsets[class_idx]
            for src, copy in spec.redundant_pairs:
                jitter = rng.normal(
                    0.0, spec.noise_sigma / 100.0, size=spec.samples_per_trial
                )
                data[:, copy] = data[:, src] + jitter
            trials.append(
                Trial(class_label=class_idx + 1, data=data, trial_index=trial_index)
            )
    return TrialTensor(
        trials=tuple(trials),
        channel_count=spec.channel_count,
        samples_per_trial=spec.samples_per_trial,
        name=spec.name,
    )
