"""Kernel regularized least squares.

Training solves (K + δI) c = y; a prediction is k̂ᵀc where k̂ holds the
kernel values between the query and every training example.  As a
table classifier the labels are 0/1 and the score of the positive class
is the prediction clipped to [0, 1].
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

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
from tether.linalg import KernelSpec, RlsSolver, is_psd, kernel_matrix, psd_repair


def rls_fit(k: DenseMatrix, y: RealVector, delta: float) -> RealVector:
    """Return c = (K + δI)⁻¹ y."""
    return RlsSolver(k, delta).solve(y)


def rls_predict(c: RealVector, k_hat: RealVector) -> float:
    """Return k̂ · c."""
    return float(np.dot(np.asarray(k_hat, dtype=np.float64), np.asarray(c, dtype=np.float64)))


@dataclass(frozen=True, slots=True)
class RlsModel:
    schema: LabeledTable
    classes: tuple[ClassLabel, ...]
    encoder: NumericEncoder
    kernel: KernelSpec
    support: DenseMatrix
    coefficients: RealVector

    @property
    def algorithm(self) -> str:
        return "rls"

    def raw_score(self, row: Row) -> float:
        x = self.encoder.encode_row(row)
        k_hat = kernel_matrix(self.kernel, self.support, x[None, :])[:, 0]
        return rls_predict(self.coefficients, k_hat)

    def predict_row(self, row: Row) -> Prediction:
        s = float(np.clip(self.raw_score(row), 0.0, 1.0))
        return make_prediction(self.classes, np.asarray([1.0 - s, s]))


def fit_rls(config: ClassifierConfig, data: LabeledTable) -> RlsModel:
    require_rows(data, "rls")
    negative, positive = require_binary(data, "rls")
    encoder = NumericEncoder.fit(data, "rls")
    x = encoder.encode(data)
    k = kernel_matrix(config.kernel, x)
    if not is_psd(k):
        k = psd_repair(k)
    y = np.asarray([1.0 if label == positive else 0.0 for label in data.labels])
    return RlsModel(
        schema=data.schema(),
        classes=(negative, positive),
        encoder=encoder,
        kernel=config.kernel,
        support=x,
        coefficients=rls_fit(k, y, config.delta),
    )
