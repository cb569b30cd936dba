"""Logistic regression fitted by Newton's method.

Maximizes the ridge-stabilized log-likelihood

    J(β) = Σ [y_i t_i - log(1 + e^{t_i})] - λ/2 ‖β‖²,   t_i = β₀ + x_iᵀβ

with the intercept β₀ included in the penalty.  Each Newton step is
halved until J does not decrease.  Iteration stops when the gradient's
infinity norm drops below ``tol``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg
from scipy.special import expit

from tether._errors import ConvergenceError, InputError
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

# Coefficients beyond this magnitude indicate perfectly separated classes
SEPARATION_BOUND = 10.0
_MAX_HALVINGS = 40


@dataclass(frozen=True, slots=True)
class LogisticFit:
    """Result of ``logistic_fit``.

    Attributes:
        beta: Intercept first, then one coefficient per feature column.
        iterations: Newton steps taken.
        gradient_norm: Infinity norm of ∇J at ``beta``.
        separated: Coefficients exceed ``SEPARATION_BOUND``; the classes
            are (near) perfectly separated and ``beta`` is the
            regularized solution.

    """

    beta: RealVector
    iterations: int
    gradient_norm: float
    separated: bool


def _design(x: DenseMatrix) -> DenseMatrix:
    x = np.atleast_2d(np.asarray(x, dtype=np.float64))
    return np.hstack([np.ones((x.shape[0], 1)), x])


def _objective(z: DenseMatrix, y: RealVector, beta: RealVector, ridge: float) -> float:
    t = z @ beta
    return float(np.sum(y * t - np.logaddexp(0.0, t)) - 0.5 * ridge * beta @ beta)


def logistic_fit(
    x: DenseMatrix,
    y: RealVector,
    *,
    ridge: float = 1e-6,
    max_iter: int = 100,
    tol: float = 1e-8,
) -> LogisticFit:
    """Fit β for 0/1 labels *y* on feature matrix *x* (intercept added).

    Raises:
        InputError: Shape mismatch or labels outside {0, 1}.
        ConvergenceError: The iteration cap was reached on data that is
            not separated.

    """
    z = _design(x)
    y = np.asarray(y, dtype=np.float64)
    if z.shape[0] != y.shape[0]:
        msg = f"{z.shape[0]} rows but {y.shape[0]} labels"
        raise InputError(msg)
    if not np.all((y == 0) | (y == 1)):
        msg = "logistic labels must be 0 or 1"
        raise InputError(msg)

    beta = np.zeros(z.shape[1])
    current = _objective(z, y, beta, ridge)
    penalty = ridge * np.eye(z.shape[1])
    for iteration in range(max_iter + 1):
        p = expit(z @ beta)
        grad = z.T @ (y - p) - ridge * beta
        grad_norm = float(np.max(np.abs(grad)))
        if grad_norm < tol:
            return LogisticFit(beta, iteration, grad_norm, _separated(beta))
        if iteration == max_iter:
            break
        hess = (z.T * (p * (1.0 - p))) @ z + penalty
        try:
            step = scipy.linalg.solve(hess, grad, assume_a="pos")
        except (scipy.linalg.LinAlgError, ValueError):
            step = scipy.linalg.lstsq(hess, grad)[0]
        scale = 1.0
        for _ in range(_MAX_HALVINGS):
            candidate = beta + scale * step
            value = _objective(z, y, candidate, ridge)
            if value >= current:
                beta, current = candidate, value
                break
            scale *= 0.5
        else:
            # No ascent possible at float precision: at the optimum
            return LogisticFit(beta, iteration, grad_norm, _separated(beta))

    if _separated(beta):
        return LogisticFit(beta, max_iter, grad_norm, True)
    msg = f"logistic regression did not converge in {max_iter} Newton steps (|grad| = {grad_norm:.3g})"
    raise ConvergenceError(msg, last_iterate=beta, iterations=max_iter)


def _separated(beta: RealVector) -> bool:
    return bool(np.max(np.abs(beta)) > SEPARATION_BOUND)


def logistic_predict(beta: RealVector, x: RealVector) -> float:
    """Return f(β₀ + xᵀβ) with f the logistic function."""
    beta = np.asarray(beta, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64).ravel()
    if x.shape[0] + 1 != beta.shape[0]:
        msg = f"feature vector has length {x.shape[0]}, model expects {beta.shape[0] - 1}"
        raise InputError(msg)
    return float(expit(beta[0] + x @ beta[1:]))


@dataclass(frozen=True, slots=True)
class LogisticModel:
    schema: LabeledTable
    classes: tuple[ClassLabel, ...]
    encoder: NumericEncoder
    beta: RealVector
    iterations: int
    separated: bool

    @property
    def algorithm(self) -> str:
        return "logistic_regression"

    def predict_row(self, row: Row) -> Prediction:
        p = logistic_predict(self.beta, self.encoder.encode_row(row))
        return make_prediction(self.classes, np.asarray([1.0 - p, p]))


def fit_logistic(config: ClassifierConfig, data: LabeledTable) -> LogisticModel:
    require_rows(data, "logistic_regression")
    negative, positive = require_binary(data, "logistic_regression")
    encoder = NumericEncoder.fit(data, "logistic_regression")
    y = np.asarray([1.0 if label == positive else 0.0 for label in data.labels])
    result = logistic_fit(encoder.encode(data), y, ridge=config.ridge, max_iter=config.max_iter)
    return LogisticModel(
        schema=data.schema(),
        classes=(negative, positive),
        encoder=encoder,
        beta=result.beta,
        iterations=result.iterations,
        separated=result.separated,
    )
