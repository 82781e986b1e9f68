import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from channelrank import (
    ClassifierSpec,
    SynthSpec,
    Trial,
    TrialTensor,
    accuracy,
    fit,
    form_vertical,
    generate_synthetic,
    predict,
    project_channels,
    rho,
    run_horizontal_experiment,
    run_vertical_experiment,
    split,
    sweep,
)

from conftest import make_matrix, make_tensor


class TestRho:
    def test_published_triples(self):
        # printed table rows: (accuracy, selected count) -> ratio
        assert rho(70.50, 3.22) == pytest.approx(21.89, abs=0.01)
        assert rho(59.62, 33.96) == pytest.approx(1.76, abs=0.01)
        assert rho(56.88, 1) == pytest.approx(56.88, abs=0.01)

    @given(
        st.floats(0.01, 100.0, allow_nan=False),
        st.floats(0.5, 64.0, allow_nan=False),
    )
    @settings(max_examples=100, deadline=None)
    def test_positively_homogeneous(self, ca, n):
        assert rho(2.0 * ca, 2.0 * n) == rho(ca, n)

    def test_nonpositive_count_rejected(self):
        with pytest.raises(ValueError, match="positive"):
            rho(50.0, 0)
        with pytest.raises(ValueError, match="positive"):
            rho(50.0, -2)


def planted_split(seed, n_channels=8, informative=(2,), rows_per_class=150, effect=2.5):
    rng = np.random.default_rng(seed)
    n = 2 * rows_per_class
    labels = np.array([1] * rows_per_class + [2] * rows_per_class)
    features = rng.normal(size=(n, n_channels))
    for ch in informative:
        features[:, ch] += effect * (labels - 1.5)
    m = make_matrix(features, labels)
    return split(m, 0.7, seed)


class TestSweep:
    def test_length_one_ranking(self):
        train, test = planted_split(0)
        result = sweep([2], train, test, ClassifierSpec("lda"))
        assert len(result.per_n) == 1
        assert result.best_n == 1
        assert result.per_n[0][0] == 1

    def test_planted_channel_makes_small_prefix_best(self):
        train, test = planted_split(1, rows_per_class=300, effect=3.0)
        ranking = [2, 0, 1, 3, 4, 5, 6, 7]  # informative channel first, noise after
        result = sweep(ranking, train, test, ClassifierSpec("knn"))
        assert result.best_n <= 3
        assert result.best_accuracy - result.per_n[0][1] <= 2.0
        # the winner really is the max of the exhaustive prefix evaluation
        assert result.best_accuracy == max(a for _, a in result.per_n)

    def test_per_n_matches_direct_recomputation(self):
        train, test = planted_split(2)
        ranking = [2, 5, 1, 7]
        spec = ClassifierSpec("knn")
        result = sweep(ranking, train, test, spec)
        for n, acc in result.per_n:
            model = fit(spec, project_channels(train, ranking[:n]))
            direct = accuracy(
                predict(model, project_channels(test, ranking[:n])), test.labels
            )
            assert acc == direct

    def test_full_ranking_last_point_equals_baseline(self):
        train, test = planted_split(3)
        ranking = train.channel_ids.tolist()  # all channels, original order
        result = sweep(ranking, train, test, ClassifierSpec("lda"))
        assert result.per_n[-1][1] == result.baseline_accuracy

    def test_best_accuracy_dominates_last_point(self):
        train, test = planted_split(4)
        result = sweep([0, 3, 1, 6], train, test, ClassifierSpec("tree"))
        assert result.best_accuracy >= result.per_n[-1][1]

    def test_accuracy_tie_takes_smallest_n(self):
        # every channel is the same column: every prefix predicts identically
        rng = np.random.default_rng(5)
        col = rng.normal(size=80) + 2.0 * np.array([0, 1] * 40)
        features = np.column_stack([col, col, col])
        m = make_matrix(features, [1, 2] * 40)
        train, test = split(m, 0.7, seed=0)
        result = sweep([0, 1, 2], train, test, ClassifierSpec("knn"))
        accs = [a for _, a in result.per_n]
        assert len(set(accs)) == 1
        assert result.best_n == 1

    def test_empty_ranking_rejected(self):
        train, test = planted_split(6)
        with pytest.raises(ValueError, match="non-empty"):
            sweep([], train, test, ClassifierSpec("knn"))

    def test_classifier_error_tagged_with_n(self):
        train, test = planted_split(7)
        bad = make_matrix(test.features[:, :2], test.labels, channel_ids=[90, 91])
        with pytest.raises(ValueError, match="sweep failed at n=1"):
            sweep([2, 0], train, bad, ClassifierSpec("knn"))


class TestVerticalExperiment:
    def test_planted_channel_beats_full_set(self):
        spec = SynthSpec(
            samples_per_trial=300,
            channel_count=16,
            trials_per_class=5,
            informative_channels=(4,),
            effect_size=2.0,
        )
        tensor = generate_synthetic(spec, seed=13)
        report = run_vertical_experiment(
            tensor, "relief", None, ClassifierSpec("knn"), 0.7, 13
        )
        assert report.setting == "vertical"
        assert report.selected <= 4
        assert report.ca > report.baseline_ca
        assert report.rho == rho(report.ca, report.selected)

    def test_zero_effect_is_chance_level(self):
        spec = SynthSpec(
            samples_per_trial=300,
            channel_count=8,
            trials_per_class=5,
            informative_channels=(1,),
            effect_size=0.0,
        )
        tensor = generate_synthetic(spec, seed=3)
        report = run_vertical_experiment(
            tensor, "mrmr", None, ClassifierSpec("knn"), 0.7, 3
        )
        assert 38.0 < report.baseline_ca < 62.0
        # best-of-8 prefixes cherry-picks upward, so allow a wider band
        assert 38.0 < report.ca < 68.0

    def test_single_feature_flag(self):
        spec = SynthSpec(
            samples_per_trial=200,
            channel_count=3,
            trials_per_class=3,
            informative_channels=(0,),
            effect_size=3.0,
        )
        tensor = generate_synthetic(spec, seed=21)
        report = run_vertical_experiment(
            tensor, "relief", None, ClassifierSpec("lda"), 0.7, 21
        )
        assert report.single_feature == (report.selected == 1.0)

    def test_deterministic(self):
        tensor = make_tensor(samples=60, channels=5, trials_per_class=3, seed=9)
        a = run_vertical_experiment(tensor, "mrmr", None, ClassifierSpec("tree"), 0.7, 4)
        b = run_vertical_experiment(tensor, "mrmr", None, ClassifierSpec("tree"), 0.7, 4)
        assert a == b


class TestHorizontalExperiment:
    def test_identical_trials_degenerate_averaging(self):
        rng = np.random.default_rng(8)
        block_1 = rng.normal(size=(60, 4))
        block_2 = rng.normal(size=(60, 4))
        block_2[:, 1] += 2.0
        trials = []
        for t in range(4):
            trials.append(Trial(1, block_1, t))
            trials.append(Trial(2, block_2, t))
        tensor = TrialTensor.from_trials(trials)
        report = run_horizontal_experiment(
            tensor, "relief", None, ClassifierSpec("knn"), 0.7, 5
        )
        bests = [d.sweep.best_n for d in report.detail]
        cas = [d.sweep.best_accuracy for d in report.detail]
        assert len(set(bests)) == 1
        assert len(set(cas)) == 1
        assert report.selected == bests[0]
        assert report.ca == cas[0]

    def test_means_are_exact_arithmetic_means(self, planted_tensor):
        report = run_horizontal_experiment(
            planted_tensor, "mrmr", None, ClassifierSpec("lda"), 0.7, 2
        )
        bests = [d.sweep.best_n for d in report.detail]
        cas = [d.sweep.best_accuracy for d in report.detail]
        baselines = [d.sweep.baseline_accuracy for d in report.detail]
        assert report.selected == float(np.mean(bests))
        assert report.ca == float(np.mean(cas))
        assert report.baseline_ca == float(np.mean(baselines))
        assert report.rho == rho(report.ca, report.selected)
        assert len(report.detail) == 3

    def test_per_trial_rankings_variant(self, planted_tensor):
        shared = run_horizontal_experiment(
            planted_tensor, "relief", None, ClassifierSpec("lda"), 0.7, 2
        )
        own = run_horizontal_experiment(
            planted_tensor,
            "relief",
            None,
            ClassifierSpec("lda"),
            0.7,
            2,
            per_trial_rankings=True,
        )
        # per-trial sweeps run over full per-trial permutations
        assert all(len(d.sweep.per_n) == 16 for d in own.detail)
        assert all(
            len(d.sweep.per_n) == shared.detail[0].sweep.per_n[-1][0]
            for d in shared.detail
        )

    def test_planted_channels_head_fused_ranking(self):
        # most seeds must put both planted channels at the head of the list
        from channelrank import aggregate_horizontal

        hits = 0
        n_seeds = 100
        for seed in range(n_seeds):
            spec = SynthSpec(
                samples_per_trial=100,
                channel_count=8,
                trials_per_class=5,
                informative_channels=(1, 6),
                effect_size=2.0,
            )
            tensor = generate_synthetic(spec, seed=seed)
            _, agg = aggregate_horizontal(tensor, "relief")
            if set(agg.final[:2].tolist()) == {1, 6}:
                hits += 1
        assert hits >= 95
