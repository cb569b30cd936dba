"""Tests for tether.linalg — kernels, eigendecomposition, PSD repair, regularized solves."""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tether._errors import ConfigError, InputError, NumericError
from tether.linalg import (
    KernelSpec,
    RlsSolver,
    Tolerances,
    is_psd,
    kernel_eval,
    kernel_matrix,
    psd_repair,
    reconstruct,
    regularized_solve,
    sym_eigen,
)


def _random_symmetric(n: int, seed: int) -> np.ndarray:
    m = np.random.default_rng(seed).normal(size=(n, n))
    return 0.5 * (m + m.T)


def _random_psd(n: int, seed: int) -> np.ndarray:
    x = np.random.default_rng(seed).normal(size=(n, n))
    return x.T @ x


# ---------------------------------------------------------------------------
# Kernels
# ---------------------------------------------------------------------------


class TestKernelEval:
    """kernel_eval — the three kernel functions."""

    def test_gaussian_equal_inputs_is_one(self) -> None:
        spec = KernelSpec(kind="gaussian", bandwidth=0.3)
        assert kernel_eval(spec, [0.4, -2.0, 7.0], [0.4, -2.0, 7.0]) == 1.0

    def test_polynomial_orthogonal_vectors(self) -> None:
        assert kernel_eval(KernelSpec(kind="polynomial", degree=1), [1, 0], [0, 1]) == 1.0

    def test_gaussian_hand_value(self) -> None:
        spec = KernelSpec(kind="gaussian", bandwidth=2.0)
        assert kernel_eval(spec, [0, 0], [1, 1]) == pytest.approx(math.exp(-1.0), abs=1e-15)

    def test_polynomial_degree(self) -> None:
        spec = KernelSpec(kind="polynomial", degree=3)
        assert kernel_eval(spec, [1, 2], [3, 1]) == pytest.approx((5 + 1) ** 3)

    def test_tanh(self) -> None:
        spec = KernelSpec(kind="tanh", scale=0.5, offset=-1.0)
        assert kernel_eval(spec, [2, 0], [1, 4]) == pytest.approx(math.tanh(0.5 * 2 - 1.0))

    def test_dimension_mismatch(self) -> None:
        with pytest.raises(InputError, match="dimension"):
            kernel_eval(KernelSpec(), [1, 2], [1, 2, 3])

    def test_precomputed_cannot_be_evaluated(self) -> None:
        with pytest.raises(ConfigError):
            kernel_eval(KernelSpec(kind="precomputed"), [1.0], [1.0])

    def test_invalid_parameters(self) -> None:
        with pytest.raises(ConfigError):
            KernelSpec(kind="gaussian", bandwidth=0.0)
        with pytest.raises(ConfigError):
            KernelSpec(kind="polynomial", degree=0)

    @given(
        st.lists(st.floats(-10, 10), min_size=3, max_size=3),
        st.lists(st.floats(-10, 10), min_size=3, max_size=3),
        st.sampled_from(["polynomial", "gaussian", "tanh"]),
    )
    def test_symmetric_in_arguments(self, x: list[float], y: list[float], kind: str) -> None:
        spec = KernelSpec(kind=kind, degree=2, bandwidth=3.0, scale=0.1)  # type: ignore[arg-type]
        assert kernel_eval(spec, x, y) == pytest.approx(kernel_eval(spec, y, x), rel=1e-12, abs=1e-12)


class TestKernelMatrix:
    """kernel_matrix — vectorised Gram matrices."""

    def test_matches_pointwise(self) -> None:
        rng = np.random.default_rng(0)
        x = rng.normal(size=(5, 3))
        y = rng.normal(size=(4, 3))
        spec = KernelSpec(kind="gaussian", bandwidth=1.5)
        k = kernel_matrix(spec, x, y)
        assert k.shape == (5, 4)
        for i in range(5):
            for j in range(4):
                assert k[i, j] == pytest.approx(kernel_eval(spec, x[i], y[j]), rel=1e-12)

    def test_gaussian_diagonal_exactly_one(self) -> None:
        x = np.random.default_rng(1).normal(size=(6, 4)) * 100
        k = kernel_matrix(KernelSpec(kind="gaussian"), x)
        assert np.all(np.diag(k) == 1.0)


# ---------------------------------------------------------------------------
# Eigendecomposition and PSD repair
# ---------------------------------------------------------------------------


class TestSymEigen:
    """sym_eigen — descending eigenvalues, orthonormal vectors."""

    def test_identity(self) -> None:
        w, _ = sym_eigen(np.eye(2))
        np.testing.assert_allclose(w, [1.0, 1.0])

    def test_two_by_two(self) -> None:
        w, _ = sym_eigen(np.array([[2.0, 1.0], [1.0, 2.0]]))
        np.testing.assert_allclose(w, [3.0, 1.0], atol=1e-12)

    @pytest.mark.parametrize("n", [1, 10, 60, 200])
    def test_reconstruction(self, n: int) -> None:
        m = _random_symmetric(n, seed=n)
        w, v = sym_eigen(m)
        assert np.all(np.diff(w) <= 0)
        err = np.linalg.norm(m - reconstruct(w, v)) / np.linalg.norm(m)
        assert err <= 1e-7
        np.testing.assert_allclose(v.T @ v, np.eye(n), atol=1e-7)

    def test_non_square(self) -> None:
        with pytest.raises(InputError, match="square"):
            sym_eigen(np.zeros((2, 3)))

    def test_asymmetric(self) -> None:
        with pytest.raises(InputError, match="symmetric"):
            sym_eigen(np.array([[1.0, 0.5], [0.0, 1.0]]))

    def test_non_finite(self) -> None:
        with pytest.raises(NumericError):
            sym_eigen(np.array([[np.nan, 0.0], [0.0, 1.0]]))

    def test_tolerance_override(self) -> None:
        m = np.array([[1.0, 1e-6], [0.0, 1.0]])
        with pytest.raises(InputError):
            sym_eigen(m)
        w, _ = sym_eigen(m, tol=Tolerances(symmetry=1e-5))
        assert w.shape == (2,)


class TestPsdRepair:
    """psd_repair — eigenvalue clipping."""

    def test_identity_unchanged(self) -> None:
        np.testing.assert_allclose(psd_repair(np.eye(3)), np.eye(3), atol=1e-12)

    def test_clips_negative_eigenvalue(self) -> None:
        out = psd_repair(np.array([[1.0, 2.0], [2.0, 1.0]]))
        w, _ = sym_eigen(out)
        np.testing.assert_allclose(w, [3.0, 0.0], atol=1e-12)
        assert is_psd(out)

    def test_gram_matrix_unchanged(self) -> None:
        g = _random_psd(8, seed=4)
        out = psd_repair(g)
        assert np.linalg.norm(out - g) <= 1e-7 * np.linalg.norm(g)

    def test_idempotent(self) -> None:
        once = psd_repair(_random_symmetric(12, seed=5))
        twice = psd_repair(once)
        np.testing.assert_allclose(twice, once, atol=1e-9)

    def test_is_psd_detects_indefinite(self) -> None:
        assert not is_psd(np.array([[1.0, 2.0], [2.0, 1.0]]))


# ---------------------------------------------------------------------------
# Regularized solves
# ---------------------------------------------------------------------------


class TestRegularizedSolve:
    """regularized_solve and RlsSolver — (K + δI)c = y."""

    def test_identity_kernel(self) -> None:
        np.testing.assert_allclose(regularized_solve(np.eye(2), [2.0, 4.0], 1.0), [1.0, 2.0])

    def test_zero_kernel_returns_labels(self) -> None:
        y = np.array([0.3, -1.0, 5.0])
        np.testing.assert_allclose(regularized_solve(np.zeros((3, 3)), y, 1.0), y)

    def test_non_positive_delta(self) -> None:
        with pytest.raises(InputError):
            regularized_solve(np.eye(2), [1.0, 1.0], 0.0)
        with pytest.raises(InputError):
            RlsSolver(np.eye(2), -1.0)

    def test_label_length_mismatch(self) -> None:
        with pytest.raises(InputError):
            RlsSolver(np.eye(3), 1.0).solve([1.0, 2.0])

    def test_matches_explicit_inverse(self) -> None:
        for seed in range(100):
            n = 2 + seed % 19
            k = _random_psd(n, seed)
            y = np.random.default_rng(seed + 1000).normal(size=n)
            delta = 0.1 + seed % 5
            c = regularized_solve(k, y, delta)
            expected = np.linalg.inv(k + delta * np.eye(n)) @ y
            assert np.linalg.norm(c - expected) <= 1e-8 * max(1.0, np.linalg.norm(expected))

    def test_residual_bound(self) -> None:
        k = _random_psd(30, seed=9)
        y = np.random.default_rng(10).normal(size=30)
        c = regularized_solve(k, y, 0.5)
        assert np.linalg.norm((k + 0.5 * np.eye(30)) @ c - y) <= 1e-8 * np.linalg.norm(y)

    def test_norm_non_increasing_in_delta(self) -> None:
        k = _random_psd(10, seed=2)
        y = np.random.default_rng(3).normal(size=10)
        norms = [np.linalg.norm(regularized_solve(k, y, 10.0**e)) for e in range(-2, 4)]
        assert all(b <= a + 1e-12 for a, b in zip(norms, norms[1:], strict=False))

    def test_continuous_in_delta(self) -> None:
        k = _random_psd(8, seed=6) + np.eye(8)
        y = np.random.default_rng(7).normal(size=8)
        c = regularized_solve(k, y, 1.0)
        c2 = regularized_solve(k, y, 1.0 + 1e-6)
        assert np.linalg.norm(c2 - c) <= 1e-4 * np.linalg.norm(c)

    def test_indefinite_kernel_uses_fallback(self) -> None:
        k = np.array([[0.0, 3.0], [3.0, 0.0]])
        solver = RlsSolver(k, 1.0)
        assert solver.used_fallback
        c = solver.solve([1.0, 2.0])
        np.testing.assert_allclose((k + np.eye(2)) @ c, [1.0, 2.0], atol=1e-10)

    def test_singular_system(self) -> None:
        k = np.diag([-2.0, 1.0])
        with pytest.raises(NumericError, match="singular"):
            RlsSolver(k, 2.0)

    def test_hat_row(self) -> None:
        k = _random_psd(6, seed=11)
        y = np.random.default_rng(12).normal(size=6)
        solver = RlsSolver(k, 0.7)
        for j in range(6):
            assert solver.hat_row(j) @ y == pytest.approx(solver.predict(y, k[j]), rel=1e-8, abs=1e-10)
        with pytest.raises(InputError):
            solver.hat_row(6)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(1, 15), st.integers(0, 10_000), st.floats(0.01, 100.0))
    def test_solution_satisfies_system(self, n: int, seed: int, delta: float) -> None:
        k = _random_psd(n, seed)
        y = np.random.default_rng(seed).normal(size=n)
        c = RlsSolver(k, delta).solve(y)
        residual = (k + delta * np.eye(n)) @ c - y
        assert np.linalg.norm(residual) <= 1e-8 * max(1.0, float(np.linalg.norm(y)))
