"""Tests for bipartite local models and neighbour-based inferring."""

from __future__ import annotations

import math

import numpy as np
import pytest

from tether._errors import ConfigError
from tether.classifiers import ClassifierConfig
from tether.datasets import DtiDataset
from tether.predictors import (
    BlmParams,
    BlmScorer,
    LocalLearner,
    PredictorConfig,
    blm_predict_pair,
    blmn_predict_all,
    infer_profile,
    predict_all,
    rescale_unit,
    weighted_profile,
)
from tether.predictors.blm import blm_sweep
from tether.similarity import SimilaritySource


def _neighbour_ds() -> DtiDataset:
    """Drug 0 has no interactions; its neighbours are drugs 1 (0.8) and 2 (0.1)."""
    return DtiDataset(
        drug_ids=("D1", "D2", "D3"),
        target_ids=("T1", "T2", "T3"),
        interactions=np.array([[0, 0, 0], [1, 1, 0], [0, 1, 1]]),
        drug_similarity=np.array([[1.0, 0.8, 0.1], [0.8, 1.0, 0.3], [0.1, 0.3, 1.0]]),
        target_similarity=np.eye(3),
    )


def _masked(ds: DtiDataset, i: int, j: int) -> np.ndarray:
    a = ds.interactions.copy()
    a[i, j] = 0
    return a


class TestInferring:
    """rescale_unit, weighted_profile and infer_profile."""

    def test_rescale(self) -> None:
        np.testing.assert_allclose(rescale_unit([2.0, 4.0, 3.0]), [0.0, 1.0, 0.5])

    def test_rescale_constant_is_zero(self) -> None:
        np.testing.assert_array_equal(rescale_unit([0.7, 0.7]), [0.0, 0.0])
        assert rescale_unit([]).size == 0

    def test_linear_weights(self) -> None:
        out = weighted_profile([0.5, 0.2], np.eye(2))
        np.testing.assert_allclose(out, [0.5, 0.2])

    def test_threshold_zeroes_weak_neighbours(self) -> None:
        out = weighted_profile([0.5, 0.2], np.eye(2), threshold=0.3)
        np.testing.assert_allclose(out, [0.5, 0.0])

    def test_exponential_weights(self) -> None:
        out = weighted_profile([0.5, 0.2], np.eye(2), mode="exponential", beta=0.5)
        np.testing.assert_allclose(out, [math.exp(1.0), math.exp(0.4)])

    def test_infer_drug_profile(self) -> None:
        # 0.8 * [1, 1, 0] + 0.1 * [0, 1, 1] = [0.8, 0.9, 0.1]
        out = infer_profile(_neighbour_ds(), 0)
        np.testing.assert_allclose(out, [0.875, 1.0, 0.0])

    def test_infer_with_threshold(self) -> None:
        out = infer_profile(_neighbour_ds(), 0, threshold=0.2)
        np.testing.assert_allclose(out, [1.0, 1.0, 0.0])

    def test_own_similarity_excluded(self) -> None:
        ds = _neighbour_ds()
        a = ds.interactions.copy()
        a[0, 2] = 1
        # drug 0's own profile must not leak into its inferred labels
        np.testing.assert_allclose(infer_profile(ds, 0, interactions=a), [0.875, 1.0, 0.0])

    def test_infer_target_profile(self) -> None:
        ds = _neighbour_ds()
        # identity target similarity: no neighbour contributes
        np.testing.assert_array_equal(infer_profile(ds, 0, side="targets"), [0.0, 0.0, 0.0])


class TestLocalLearner:
    """Local models over one side's similarity."""

    def test_rls_identity_kernel(self) -> None:
        learner = LocalLearner(np.eye(3), ClassifierConfig(algorithm="rls", delta=1.0))
        assert learner.score(np.array([1.0, 0.0, 1.0]), 0) == pytest.approx(0.5)
        assert learner.score(np.array([1.0, 0.0, 1.0]), 1) == pytest.approx(0.0, abs=1e-9)

    def test_svm_all_positive(self, toy_ds: DtiDataset) -> None:
        learner = LocalLearner(toy_ds.target_similarity, ClassifierConfig(algorithm="svm"))
        assert learner.score(np.ones(4), 2) == 1.0

    def test_svm_decision_value(self, toy_ds: DtiDataset) -> None:
        learner = LocalLearner(toy_ds.target_similarity, ClassifierConfig(algorithm="svm", C=10.0))
        labels = np.array([1.0, 1.0, 0.0, 0.0])
        assert learner.score(labels, 0) > learner.score(labels, 3)

    def test_table_classifier(self, toy_ds: DtiDataset) -> None:
        learner = LocalLearner(toy_ds.drug_similarity, ClassifierConfig(algorithm="knn", k=1))
        labels = np.array([1.0, 0.0, 1.0, 0.0, 0.0])
        assert learner.score(labels, 0) == 1.0
        assert learner.score(labels, 1) == 0.0


class TestBlmScoring:
    """Pair scores, combination and diagnostics."""

    def test_isolated_pair_has_no_training_data(self, toy_ds: DtiDataset) -> None:
        pair = blm_predict_pair(toy_ds, 4, 3, BlmParams(), interactions=_masked(toy_ds, 4, 3))
        assert pair.score == 0.0
        assert pair.drug_no_training_data
        assert pair.target_no_training_data
        assert not pair.inferred

    def test_neighbour_inferring_fills_empty_profiles(self, toy_ds: DtiDataset) -> None:
        params = BlmParams(neighbor_inferring=True)
        pair = blm_predict_pair(toy_ds, 4, 3, params, interactions=_masked(toy_ds, 4, 3))
        assert pair.drug_inferred
        assert pair.target_inferred

    def test_combine_rules(self, toy_ds: DtiDataset) -> None:
        a = _masked(toy_ds, 0, 0)
        high = blm_predict_pair(toy_ds, 0, 0, BlmParams(combine="max"), interactions=a)
        mean = blm_predict_pair(toy_ds, 0, 0, BlmParams(combine="mean"), interactions=a)
        assert high.score == max(high.drug_score, high.target_score)
        assert mean.score == pytest.approx(0.5 * (mean.drug_score + mean.target_score))

    def test_rls_direction_hand_value(self, toy_ds: DtiDataset) -> None:
        a = _masked(toy_ds, 0, 0)
        pair = blm_predict_pair(toy_ds, 0, 0, BlmParams(), interactions=a)
        learner = LocalLearner(toy_ds.target_similarity, ClassifierConfig(algorithm="rls"))
        assert pair.drug_score == pytest.approx(learner.score(a[0].astype(float), 0))

    @pytest.mark.parametrize(
        "kwargs",
        [{"combine": "min"}, {"inferring_mode": "cubic"}, {"beta": 0.0}, {"neighbor_threshold": 1.0}],
    )
    def test_invalid_params(self, kwargs: dict[str, object]) -> None:
        with pytest.raises(ConfigError):
            BlmParams(**kwargs)  # type: ignore[arg-type]


class TestBlmSweeps:
    """Whole-matrix BLM and BLMN."""

    def test_blmn_equals_blm_without_empty_profiles(self, dense_ds: DtiDataset) -> None:
        blm = blm_sweep(dense_ds, PredictorConfig(method="blm"), mask=True)
        blmn = blm_sweep(dense_ds, PredictorConfig(method="blmn"), mask=True)
        np.testing.assert_array_equal(blm.values, blmn.values)
        assert blmn.n_inferred == 0

    def test_blmn_infers_on_toy(self, toy_ds: DtiDataset) -> None:
        scores = blmn_predict_all(toy_ds)
        assert scores.method == "blmn"
        assert scores.n_inferred >= 1

    def test_worker_count_does_not_change_scores(self, toy_ds: DtiDataset) -> None:
        serial = blm_sweep(toy_ds, PredictorConfig(workers=1), mask=True)
        threaded = blm_sweep(toy_ds, PredictorConfig(workers=3), mask=True)
        np.testing.assert_array_equal(serial.values, threaded.values)

    def test_predict_all_is_unmasked(self, toy_ds: DtiDataset) -> None:
        scores = predict_all(toy_ds, PredictorConfig(method="blm"))
        scorer = BlmScorer(toy_ds, BlmParams(), SimilaritySource())
        assert scores.values[0, 0] == scorer.score_pair(toy_ds.interactions, 0, 0).score

    def test_network_similarity_per_mask(self, toy_ds: DtiDataset) -> None:
        config = PredictorConfig(similarity=SimilaritySource(kind="network_based"))
        scores = blm_sweep(toy_ds, config, mask=True)
        assert np.all(np.isfinite(scores.values))
        assert scores.params["similarity"] == "network_based"
