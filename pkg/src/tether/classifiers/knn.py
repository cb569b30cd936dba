"""k-nearest-neighbour classifier.

Distance is Euclidean over numeric features plus a 0/1 mismatch term per
categorical feature.  Neighbours at equal distance are taken in training
row order, so results never depend on sort stability.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from tether._types import ClassLabel, Row
from tether.classifiers._base import ClassifierConfig, Prediction, make_prediction, require_rows
from tether.datasets.table import LabeledTable

# Added to distances before inverting for distance-weighted votes
WEIGHT_EPSILON = 1e-12


@dataclass(frozen=True, slots=True)
class KnnModel:
    """Stored training rows split into numeric and categorical blocks."""

    schema: LabeledTable
    classes: tuple[ClassLabel, ...]
    numeric: np.ndarray
    categorical: np.ndarray
    label_index: np.ndarray
    k: int
    distance_weighted: bool

    @property
    def algorithm(self) -> str:
        return "knn"

    @property
    def n_stored(self) -> int:
        return int(self.label_index.shape[0])

    def distances(self, row: Row) -> np.ndarray:
        """Distance from *row* to every stored training row."""
        num_idx, cat_idx = _split_kinds(self.schema)
        q_num = np.asarray([row[i] for i in num_idx], dtype=np.float64)
        q_cat = np.asarray([row[i] for i in cat_idx], dtype=object)
        sq = np.sum((self.numeric - q_num) ** 2, axis=1) if num_idx else np.zeros(self.n_stored)
        if cat_idx:
            sq = sq + np.sum(self.categorical != q_cat, axis=1)
        return np.sqrt(sq)

    def predict_row(self, row: Row) -> Prediction:
        d = self.distances(row)
        k = min(self.k, self.n_stored)
        nearest = np.argsort(d, kind="stable")[:k]
        weights = 1.0 / (d[nearest] + WEIGHT_EPSILON) if self.distance_weighted else np.ones(k)
        votes = np.bincount(self.label_index[nearest], weights=weights, minlength=len(self.classes))
        return make_prediction(self.classes, votes / votes.sum())


def _split_kinds(schema: LabeledTable) -> tuple[list[int], list[int]]:
    num = [i for i, kind in enumerate(schema.feature_kinds) if kind == "numeric"]
    cat = [i for i, kind in enumerate(schema.feature_kinds) if kind == "categorical"]
    return num, cat


def fit_knn(config: ClassifierConfig, data: LabeledTable) -> KnnModel:
    """Store the training table; k-NN has no training step beyond that."""
    require_rows(data, "knn")
    num_idx, cat_idx = _split_kinds(data)
    classes = data.classes
    position = {c: i for i, c in enumerate(classes)}
    numeric = np.asarray([[r[i] for i in num_idx] for r in data.rows], dtype=np.float64)
    categorical = np.asarray([[r[i] for i in cat_idx] for r in data.rows], dtype=object)
    return KnnModel(
        schema=data.schema(),
        classes=classes,
        numeric=numeric.reshape(data.n_rows, len(num_idx)),
        categorical=categorical.reshape(data.n_rows, len(cat_idx)),
        label_index=np.asarray([position[y] for y in data.labels], dtype=np.intp),
        k=config.k,
        distance_weighted=config.distance_weighted,
    )
