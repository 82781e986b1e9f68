import numpy as np
import pytest

from channelrank import LabeledMatrix, SynthSpec, Trial, TrialTensor, generate_synthetic


def make_matrix(features, labels, channel_ids=None) -> LabeledMatrix:
    features = np.asarray(features, dtype=np.float64)
    if channel_ids is None:
        channel_ids = np.arange(features.shape[1])
    return LabeledMatrix(features=features, labels=np.asarray(labels), channel_ids=channel_ids)


def make_tensor(samples=50, channels=4, trials_per_class=2, classes=2, seed=0) -> TrialTensor:
    """Plain noise tensor with labels 1..classes."""
    rng = np.random.default_rng(seed)
    trials = []
    for c in range(1, classes + 1):
        for t in range(trials_per_class):
            trials.append(Trial(class_label=c, data=rng.normal(size=(samples, channels)), trial_index=t))
    return TrialTensor.from_trials(trials)


@pytest.fixture
def planted_tensor() -> TrialTensor:
    """16 channels, one strongly informative (channel 3), 3 trials per class."""
    spec = SynthSpec(
        samples_per_trial=120,
        channel_count=16,
        trials_per_class=3,
        informative_channels=(3,),
        effect_size=2.0,
    )
    return generate_synthetic(spec, seed=42)
