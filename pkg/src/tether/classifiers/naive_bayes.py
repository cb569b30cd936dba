"""Naive Bayes with categorical counts and Gaussian numeric likelihoods.

Posteriors are computed in log space and normalized with ``logsumexp``,
so scores always sum to one.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from tether._types import ClassLabel, Row
from tether.classifiers._base import ClassifierConfig, Prediction, make_prediction, require_rows
from tether.datasets.table import LabeledTable

# Smallest per-class variance for numeric features
VARIANCE_FLOOR = 1e-9


@dataclass(frozen=True, slots=True)
class NaiveBayesModel:
    """Class priors plus per-feature class-conditional statistics.

    Attributes:
        log_prior: log P(c) per class.
        category_counts: Per categorical feature, value -> per-class counts.
        means: Per numeric feature, per-class mean (NaN for other features).
        variances: Per numeric feature, per-class variance.
        class_counts: Training rows per class.
        laplace: Whether categorical estimates use pseudo-count 1.

    """

    schema: LabeledTable
    classes: tuple[ClassLabel, ...]
    log_prior: np.ndarray
    category_counts: tuple[dict[str, np.ndarray], ...]
    means: np.ndarray
    variances: np.ndarray
    class_counts: np.ndarray
    laplace: bool

    @property
    def algorithm(self) -> str:
        return "naive_bayes"

    def log_likelihoods(self, row: Row) -> np.ndarray:
        """Unnormalized log P(c) + Σ log P(x_j | c) per class."""
        total = self.log_prior.copy()
        n_c = self.class_counts.astype(np.float64)
        for j, kind in enumerate(self.schema.feature_kinds):
            if kind == "numeric":
                mu, var = self.means[j], self.variances[j]
                x = float(row[j])
                total += -0.5 * np.log(2.0 * np.pi * var) - (x - mu) ** 2 / (2.0 * var)
                continue
            counts = self.category_counts[j]
            seen = counts.get(str(row[j]), np.zeros_like(n_c))
            if self.laplace:
                total += np.log((seen + 1.0) / (n_c + len(counts)))
            else:
                with np.errstate(divide="ignore"):
                    total += np.log(seen / n_c)
        return total

    def predict_row(self, row: Row) -> Prediction:
        log_joint = self.log_likelihoods(row)
        if not np.any(np.isfinite(log_joint)):
            # Every class ruled out by a zero raw count
            return make_prediction(self.classes, np.full(len(self.classes), 1.0 / len(self.classes)))
        posterior = np.exp(log_joint - logsumexp(log_joint))
        return make_prediction(self.classes, posterior)


def fit_naive_bayes(config: ClassifierConfig, data: LabeledTable) -> NaiveBayesModel:
    require_rows(data, "naive_bayes")
    classes = data.classes
    position = {c: i for i, c in enumerate(classes)}
    y = np.asarray([position[label] for label in data.labels], dtype=np.intp)
    n_classes = len(classes)
    class_counts = np.bincount(y, minlength=n_classes)

    p = data.n_features
    means = np.full((p, n_classes), np.nan)
    variances = np.full((p, n_classes), np.nan)
    category_counts: list[dict[str, np.ndarray]] = []
    for j, kind in enumerate(data.feature_kinds):
        column = data.column(j)
        if kind == "numeric":
            x = np.asarray(column, dtype=np.float64)
            for c in range(n_classes):
                xc = x[y == c]
                means[j, c] = xc.mean()
                variances[j, c] = max(float(xc.var()), VARIANCE_FLOOR)
            category_counts.append({})
            continue
        counts: dict[str, np.ndarray] = {}
        for value, c in zip(column, y, strict=True):
            counts.setdefault(str(value), np.zeros(n_classes))[c] += 1.0
        category_counts.append(counts)

    return NaiveBayesModel(
        schema=data.schema(),
        classes=classes,
        log_prior=np.log(class_counts / class_counts.sum()),
        category_counts=tuple(category_counts),
        means=means,
        variances=variances,
        class_counts=class_counts,
        laplace=config.laplace,
    )
