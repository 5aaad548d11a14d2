import numpy as np
import pytest

from conftest import random_step_function
from stablerank import (
    INF,
    ConfusionMatrix,
    LabeledInvariantSet,
    StepFunction,
    build_classifier,
    classify,
    cross_validate,
    lp_distance,
    mean_accuracy,
)
from stablerank.classify import _L1Scorer


def indicator(hi):
    return StepFunction([hi], [1.0, 0.0])


def jittered(rng, center, n):
    """n indicator functions with supports jittered around `center`."""
    return [indicator(center + float(rng.uniform(-0.1, 0.1))) for _ in range(n)]


class TestBuild:
    def test_single_sample(self):
        cls = LabeledInvariantSet("a", {0: [indicator(2)]})
        assert build_classifier(cls) == {0: indicator(2)}

    def test_two_indicators(self):
        cls = LabeledInvariantSet("a", {0: [indicator(2), indicator(4)]})
        mean = build_classifier(cls)[0]
        assert mean == StepFunction([2, 4], [1.0, 0.5, 0.0])

    def test_identical_samples(self):
        f = StepFunction([1, 2], [3, 1, 0])
        cls = LabeledInvariantSet("a", {0: [f, f, f]})
        assert build_classifier(cls)[0] == f

    def test_set_validation(self):
        with pytest.raises(ValueError):
            LabeledInvariantSet("a", {})
        with pytest.raises(ValueError):
            LabeledInvariantSet("a", {0: [indicator(1)], 1: []})


class TestClassify:
    def classifiers(self):
        return {
            "a": {0: indicator(2)},
            "b": {0: indicator(5)},
        }

    def test_exact_match_wins(self):
        assert classify(self.classifiers(), {0: indicator(2)}) == "a"
        assert classify(self.classifiers(), {0: indicator(5)}) == "b"

    def test_disjoint_supports(self):
        cl = {"a": {0: indicator(1)}, "b": {0: indicator(9)}}
        assert classify(cl, {0: indicator(1.2)}) == "a"

    def test_sum_combination_across_degrees(self):
        # degree 0 favors a by 0.4, degree 1 favors b by 0.1: a wins the sum
        cl = {
            "a": {0: indicator(1.0), 1: indicator(3.1)},
            "b": {0: indicator(1.4), 1: indicator(3.0)},
        }
        test = {0: indicator(1.0), 1: indicator(3.0)}
        assert classify(cl, test) == "a"

    def test_infinite_score_loses_to_finite(self):
        cl = {
            "a": {0: StepFunction.constant(1.0)},  # limit 1: infinitely far
            "b": {0: indicator(9.0)},
        }
        assert classify(cl, {0: indicator(1.0)}) == "b"

    def test_all_infinite_falls_back_to_first(self):
        cl = {
            "a": {0: StepFunction.constant(1.0)},
            "b": {0: StepFunction.constant(2.0)},
        }
        assert classify(cl, {0: indicator(1.0)}) == "a"

    def test_tie_breaks_by_label_order(self):
        cl = {
            "z": {0: indicator(2.0)},
            "a": {0: indicator(4.0)},
        }
        assert classify(cl, {0: indicator(3.0)}) == "z"

    def test_relabeling_permutation(self):
        cl = self.classifiers()
        swapped = {"b": cl["b"], "a": cl["a"]}
        for probe in (indicator(2), indicator(5)):
            assert classify(cl, {0: probe}) == classify(swapped, {0: probe})

    def test_duplicate_winner_copy_keeps_decision(self):
        cl = self.classifiers()
        test = {0: indicator(2.3)}
        winner = classify(cl, test)
        cl2 = dict(cl)
        cl2["copy"] = cl[winner]
        assert classify(cl2, test) == winner

    def test_missing_degree_rejected(self):
        with pytest.raises(ValueError):
            classify(self.classifiers(), {1: indicator(2)})

    def test_empty_classifiers_rejected(self):
        with pytest.raises(ValueError):
            classify({}, {0: indicator(1)})


class TestCrossValidate:
    def separated_data(self, rng, n=12):
        return [
            LabeledInvariantSet("a", {0: jittered(rng, 1.0, n)}),
            LabeledInvariantSet("b", {0: jittered(rng, 5.0, n)}),
            LabeledInvariantSet("c", {0: jittered(rng, 9.0, n)}),
        ]

    def test_perfect_separation_gives_identity(self, rng):
        cm = cross_validate(self.separated_data(rng), train_size=6, folds=4, seed=0)
        assert np.allclose(cm.counts, np.eye(3))
        assert mean_accuracy(cm) == 1.0

    def test_rows_sum_to_one(self, rng):
        cm = cross_validate(self.separated_data(rng), train_size=6, folds=3, seed=5)
        assert np.allclose(cm.counts.sum(axis=1), 1.0, atol=1e-12)

    def test_single_fold_leave_group_out(self, rng):
        data = self.separated_data(rng, n=5)
        cm = cross_validate(data, train_size=4, folds=1, seed=1)
        assert cm.counts.shape == (3, 3)
        assert np.allclose(cm.counts.sum(axis=1), 1.0)

    def test_reproducible(self, rng):
        data = self.separated_data(rng)
        a = cross_validate(data, train_size=6, folds=4, seed=9)
        b = cross_validate(data, train_size=6, folds=4, seed=9)
        assert np.array_equal(a.counts, b.counts)
        assert a.fold_accuracies == b.fold_accuracies

    def test_train_size_validation(self, rng):
        with pytest.raises(ValueError):
            cross_validate(self.separated_data(rng), train_size=12, folds=2, seed=0)

    def test_duplicate_labels_rejected(self, rng):
        data = [
            LabeledInvariantSet("a", {0: jittered(rng, 1.0, 4)}),
            LabeledInvariantSet("a", {0: jittered(rng, 2.0, 4)}),
        ]
        with pytest.raises(ValueError):
            cross_validate(data, train_size=2, folds=1, seed=0)


class TestL1Scorer:
    def test_matches_lp_distance_on_random_pairs(self, rng):
        for _ in range(300):
            limit = float(rng.uniform(0, 2)) if rng.random() < 0.8 else 0.0
            f = random_step_function(rng, limit=limit)
            g = random_step_function(rng, limit=limit if rng.random() < 0.8 else limit + 1)
            expected = lp_distance(f, g, 1.0)
            got = _L1Scorer(f).distance(g)
            if expected == INF:
                assert got == INF
            else:
                assert got == pytest.approx(expected, abs=1e-9)

    def test_constant_functions(self):
        f = StepFunction.constant(2.0)
        assert _L1Scorer(f).distance(f) == 0.0
        assert _L1Scorer(f).distance(StepFunction.constant(1.0)) == INF

    def test_mean_against_probe(self, rng):
        # the intended shape: a dense mean scored against sparse probes
        fs = [random_step_function(rng, limit=1.0) for _ in range(50)]
        from stablerank import pointwise_mean

        mean = pointwise_mean(fs)
        scorer = _L1Scorer(mean)
        for _ in range(30):
            probe = random_step_function(rng, limit=1.0)
            assert scorer.distance(probe) == pytest.approx(
                lp_distance(mean, probe, 1.0), abs=1e-9
            )


class TestMeanAccuracy:
    def test_identity(self):
        cm = ConfusionMatrix(("a", "b"), np.eye(2))
        assert mean_accuracy(cm) == 1.0

    def test_uniform(self):
        k = 4
        cm = ConfusionMatrix(tuple("abcd"), np.full((k, k), 1.0 / k))
        assert mean_accuracy(cm) == pytest.approx(1.0 / k)

    def test_shape_validation(self):
        with pytest.raises(ValueError):
            ConfusionMatrix(("a",), np.zeros((2, 2)))
