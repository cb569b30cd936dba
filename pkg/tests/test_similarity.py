"""Tests for tether.similarity — network kernels, hybrids, resolution."""

from __future__ import annotations

import math
from collections.abc import Callable

import numpy as np
import pytest

from tether._errors import ConfigError, InputError
from tether.datasets import DtiDataset
from tether.linalg import is_psd
from tether.similarity import SimilaritySource, as_kernel, combine, network_similarity, resolve

_A = np.array([[1, 0], [0, 1], [1, 1]], dtype=np.int8)


class TestSimilaritySource:
    """SimilaritySource validation and flags."""

    def test_defaults(self) -> None:
        source = SimilaritySource()
        assert source.kind == "chem_seq"
        assert not source.uses_network
        assert not source.varies_with_mask

    def test_network_varies_with_mask(self) -> None:
        assert SimilaritySource(kind="network_based").varies_with_mask
        assert SimilaritySource(kind="hybrid").varies_with_mask
        assert not SimilaritySource(kind="hybrid", per_mask=False).varies_with_mask

    @pytest.mark.parametrize(
        "kwargs",
        [{"kind": "docking"}, {"hybrid_weight": 1.5}, {"gip_bandwidth_scale": 0.0}],
    )
    def test_rejects_invalid(self, kwargs: dict[str, object]) -> None:
        with pytest.raises(ConfigError):
            SimilaritySource(**kwargs)  # type: ignore[arg-type]


class TestNetworkSimilarity:
    """Gaussian interaction-profile kernels."""

    def test_drug_side_hand_values(self) -> None:
        s = network_similarity(_A, "drugs")
        # gamma = 3 / (1 + 1 + 2)
        assert s[0, 1] == pytest.approx(math.exp(-0.75 * 2))
        assert s[0, 2] == pytest.approx(math.exp(-0.75 * 1))
        np.testing.assert_array_equal(np.diag(s), [1.0, 1.0, 1.0])

    def test_target_side_hand_values(self) -> None:
        s = network_similarity(_A, "targets")
        assert s.shape == (2, 2)
        assert s[0, 1] == pytest.approx(math.exp(-0.5 * 2))

    def test_bandwidth_scale(self) -> None:
        s = network_similarity(_A, "targets", gamma0=2.0)
        assert s[0, 1] == pytest.approx(math.exp(-1.0 * 2))

    def test_symmetric_and_psd(self) -> None:
        a = np.random.default_rng(0).integers(0, 2, size=(12, 7))
        s = network_similarity(a, "drugs")
        np.testing.assert_array_equal(s, s.T)
        assert is_psd(s)

    def test_single_node(self) -> None:
        assert network_similarity(np.array([[1, 0, 1]]), "drugs").tolist() == [[1.0]]

    def test_empty_matrix(self) -> None:
        with pytest.raises(ConfigError, match="no interactions"):
            network_similarity(np.zeros((3, 2)), "drugs")

    def test_unknown_side(self) -> None:
        with pytest.raises(ConfigError):
            network_similarity(_A, "proteins")  # type: ignore[arg-type]


class TestCombine:
    """Weighted combination of similarity matrices."""

    def test_endpoints(self) -> None:
        bio = np.array([[1.0, 0.2], [0.2, 1.0]])
        net = np.array([[1.0, 0.8], [0.8, 1.0]])
        np.testing.assert_allclose(combine(bio, net, 1.0), bio)
        np.testing.assert_allclose(combine(bio, net, 0.0), net)
        np.testing.assert_allclose(combine(bio, net, 0.5)[0, 1], 0.5)

    def test_shape_mismatch(self) -> None:
        with pytest.raises(InputError):
            combine(np.eye(2), np.eye(3))

    def test_weight_range(self) -> None:
        with pytest.raises(ConfigError):
            combine(np.eye(2), np.eye(2), -0.1)

    def test_as_kernel_repairs(self) -> None:
        k = as_kernel(np.array([[1.0, 0.9, 0.0], [0.9, 1.0, 0.9], [0.0, 0.9, 1.0]]))
        assert is_psd(k)


class TestResolve:
    """resolve — the similarities a predictor sees."""

    def test_chem_seq_is_dataset(self, toy_ds: DtiDataset) -> None:
        s_d, s_t = resolve(toy_ds, SimilaritySource())
        assert s_d is toy_ds.drug_similarity
        assert s_t is toy_ds.target_similarity

    def test_network_follows_masked_matrix(self, toy_ds: DtiDataset) -> None:
        masked = toy_ds.interactions.copy()
        masked[0, 0] = 0
        s_d, _ = resolve(toy_ds, SimilaritySource(kind="network_based"), masked)
        np.testing.assert_allclose(s_d, network_similarity(masked, "drugs"))

    def test_per_mask_off_uses_full_matrix(self, toy_ds: DtiDataset) -> None:
        masked = toy_ds.interactions.copy()
        masked[0, 0] = 0
        source = SimilaritySource(kind="network_based", per_mask=False)
        s_d, _ = resolve(toy_ds, source, masked)
        np.testing.assert_allclose(s_d, network_similarity(toy_ds.interactions, "drugs"))

    def test_hybrid(self, make_ds: Callable[..., DtiDataset]) -> None:
        ds = make_ds(_A)
        s_d, s_t = resolve(ds, SimilaritySource(kind="hybrid", hybrid_weight=0.25))
        expected = 0.25 * ds.drug_similarity + 0.75 * network_similarity(_A, "drugs")
        np.testing.assert_allclose(s_d, expected)
        assert s_t.shape == (2, 2)
