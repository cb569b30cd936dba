"""Soft-margin kernel SVM trained by sequential minimal optimization.

Solves the dual

    min_α  ½ αᵀQα - Σα_i   s.t.  0 ≤ α_i ≤ C,  Σ α_i y_i = 0

with Q_ij = y_i y_j K_ij.  Each iteration picks the maximal violating
pair, solves the two-variable subproblem analytically and updates the
gradient.  The decision function is Σ α_i y_i κ(x_i, x) - b.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from tether._errors import ConfigError, ConvergenceError, InputError
from tether._types import ClassLabel, DenseMatrix, RealVector, Row
from tether.classifiers._base import (
    ClassifierConfig,
    Prediction,
    make_prediction,
    require_binary,
    require_rows,
)
from tether.classifiers._encode import NumericEncoder
from tether.datasets.table import LabeledTable
from tether.linalg import KernelSpec, kernel_matrix

# Floor for the curvature of a two-variable subproblem
_TAU = 1e-12


@dataclass(frozen=True, slots=True)
class SvmSolution:
    """Dual coefficients α, bias b and the iterations used."""

    alpha: RealVector
    b: float
    iterations: int

    def support(self) -> np.ndarray:
        return np.flatnonzero(self.alpha > 0.0)


def dual_objective(alpha: RealVector, y: RealVector, k: DenseMatrix) -> float:
    """Σα_i - ½ Σ_ij α_i α_j y_i y_j K_ij (the quantity SMO maximizes)."""
    ay = np.asarray(alpha) * np.asarray(y)
    return float(np.sum(alpha) - 0.5 * ay @ np.asarray(k) @ ay)


def _check_problem(k: DenseMatrix, y: RealVector, c: float) -> tuple[DenseMatrix, RealVector]:
    k = np.asarray(k, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if k.ndim != 2 or k.shape != (y.shape[0], y.shape[0]):
        msg = f"kernel matrix is {k.shape}, labels have length {y.shape[0]}"
        raise InputError(msg)
    if not np.all((y == 1.0) | (y == -1.0)):
        msg = "svm labels must be -1 or +1"
        raise InputError(msg)
    if not (np.any(y > 0) and np.any(y < 0)):
        msg = "svm needs both classes present"
        raise ConfigError(msg)
    if not c > 0:
        msg = f"svm penalty C must be > 0, got {c}"
        raise ConfigError(msg)
    return k, y


def _bias(alpha: RealVector, y: RealVector, grad: RealVector, c: float) -> float:
    """Average y_t G_t over free α; midpoint of the feasible interval otherwise."""
    yg = y * grad
    at_upper = alpha >= c
    at_lower = alpha <= 0.0
    free = ~(at_upper | at_lower)
    if np.any(free):
        return float(np.mean(yg[free]))
    upper_set = (at_upper & (y < 0)) | (at_lower & (y > 0))
    lower_set = (at_upper & (y > 0)) | (at_lower & (y < 0))
    ub = float(np.min(yg[upper_set])) if np.any(upper_set) else np.inf
    lb = float(np.max(yg[lower_set])) if np.any(lower_set) else -np.inf
    return (ub + lb) / 2.0


def svm_fit(
    k: DenseMatrix,
    y: RealVector,
    c: float,
    *,
    tol: float = 1e-3,
    max_iter: int = 100_000,
) -> SvmSolution:
    """Solve the SVM dual for a precomputed kernel matrix *k* and ±1 labels *y*.

    Raises:
        ConfigError: A single class, or C <= 0.
        ConvergenceError: KKT violation above *tol* after *max_iter*
            iterations; ``last_iterate`` holds α.

    """
    k, y = _check_problem(k, y, c)
    n = y.shape[0]
    alpha = np.zeros(n)
    grad = -np.ones(n)
    diag = np.diag(k)

    for iteration in range(max_iter):
        score = -y * grad
        up = ((y > 0) & (alpha < c)) | ((y < 0) & (alpha > 0))
        low = ((y > 0) & (alpha > 0)) | ((y < 0) & (alpha < c))
        i = int(np.flatnonzero(up)[np.argmax(score[up])])
        j = int(np.flatnonzero(low)[np.argmin(score[low])])
        if score[i] - score[j] < tol:
            return SvmSolution(alpha, _bias(alpha, y, grad, c), iteration)

        old_i, old_j = alpha[i], alpha[j]
        quad = max(diag[i] + diag[j] - 2.0 * k[i, j], _TAU)
        if y[i] != y[j]:
            delta = (-grad[i] - grad[j]) / quad
            diff = old_i - old_j
            ai, aj = old_i + delta, old_j + delta
            if diff > 0:
                if aj < 0:
                    aj, ai = 0.0, diff
            elif ai < 0:
                ai, aj = 0.0, -diff
            if diff > 0:
                if ai > c:
                    ai, aj = c, c - diff
            elif aj > c:
                aj, ai = c, c + diff
        else:
            delta = (grad[i] - grad[j]) / quad
            total = old_i + old_j
            ai, aj = old_i - delta, old_j + delta
            if total > c:
                if ai > c:
                    ai, aj = c, total - c
            elif aj < 0:
                aj, ai = 0.0, total
            if total > c:
                if aj > c:
                    aj, ai = c, total - c
            elif ai < 0:
                ai, aj = 0.0, total

        alpha[i], alpha[j] = ai, aj
        # ∇ += Q[:, i] Δα_i + Q[:, j] Δα_j
        grad += y * (k[:, i] * (y[i] * (ai - old_i)) + k[:, j] * (y[j] * (aj - old_j)))

    msg = f"SMO did not reach KKT tolerance {tol} in {max_iter} iterations"
    raise ConvergenceError(msg, last_iterate=alpha.copy(), iterations=max_iter)


def svm_decision(solution: SvmSolution, y: RealVector, k_rows: DenseMatrix) -> RealVector:
    """Decision values Σ α_i y_i K[i, q] - b for each query column q of *k_rows*."""
    ay = solution.alpha * np.asarray(y, dtype=np.float64)
    return ay @ np.atleast_2d(k_rows) - solution.b


def svm_fit_features(
    x: DenseMatrix,
    y: RealVector,
    c: float,
    kernel: KernelSpec,
    *,
    tol: float = 1e-3,
    max_iter: int = 100_000,
) -> SvmSolution:
    """``svm_fit`` on feature vectors, building K with *kernel*."""
    return svm_fit(kernel_matrix(kernel, x), y, c, tol=tol, max_iter=max_iter)


@dataclass(frozen=True, slots=True)
class SvmModel:
    """SVM on encoded table rows; the positive-class score is clip((m + 1)/2, 0, 1)."""

    schema: LabeledTable
    classes: tuple[ClassLabel, ...]
    encoder: NumericEncoder
    kernel: KernelSpec
    support: DenseMatrix
    y: RealVector
    solution: SvmSolution

    @property
    def algorithm(self) -> str:
        return "svm"

    def margin(self, row: Row) -> float:
        x = self.encoder.encode_row(row)
        k_rows = kernel_matrix(self.kernel, self.support, x[None, :])
        return float(svm_decision(self.solution, self.y, k_rows)[0])

    def predict_row(self, row: Row) -> Prediction:
        s = float(np.clip((self.margin(row) + 1.0) / 2.0, 0.0, 1.0))
        return make_prediction(self.classes, np.asarray([1.0 - s, s]))


def fit_svm(config: ClassifierConfig, data: LabeledTable) -> SvmModel:
    require_rows(data, "svm")
    negative, positive = require_binary(data, "svm")
    encoder = NumericEncoder.fit(data, "svm")
    x = encoder.encode(data)
    y = np.asarray([1.0 if label == positive else -1.0 for label in data.labels])
    solution = svm_fit_features(
        x, y, config.C, config.kernel, tol=config.svm_tol, max_iter=config.svm_max_iter
    )
    return SvmModel(
        schema=data.schema(),
        classes=(negative, positive),
        encoder=encoder,
        kernel=config.kernel,
        support=x,
        y=y,
        solution=solution,
    )
