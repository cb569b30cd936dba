"""Numeric encoding of table rows for logistic regression, RLS and SVM."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from tether._errors import ConfigError
from tether._types import DenseMatrix, RealVector, Row
from tether.datasets.table import LabeledTable


@dataclass(frozen=True, slots=True)
class NumericEncoder:
    """Numeric features pass through; categorical ones become one-hot blocks.

    Categories are those seen in training, in order of first appearance.
    An unseen category encodes as an all-zero block.

    """

    kinds: tuple[str, ...]
    categories: tuple[tuple[str, ...], ...]

    @classmethod
    def fit(cls, data: LabeledTable, algorithm: str) -> NumericEncoder:
        if "numeric" not in data.feature_kinds:
            msg = f"{algorithm} needs at least one numeric feature; table is categorical-only"
            raise ConfigError(msg)
        categories = tuple(
            tuple(dict.fromkeys(str(v) for v in data.column(i))) if kind == "categorical" else ()
            for i, kind in enumerate(data.feature_kinds)
        )
        return cls(kinds=data.feature_kinds, categories=categories)

    @property
    def width(self) -> int:
        return sum(1 if k == "numeric" else len(c) for k, c in zip(self.kinds, self.categories, strict=True))

    def encode_row(self, row: Row) -> RealVector:
        out: list[float] = []
        for value, kind, cats in zip(row, self.kinds, self.categories, strict=True):
            if kind == "numeric":
                out.append(float(value))
            else:
                out.extend(1.0 if value == c else 0.0 for c in cats)
        return np.asarray(out, dtype=np.float64)

    def encode(self, data: LabeledTable) -> DenseMatrix:
        if data.n_rows == 0:
            return np.zeros((0, self.width))
        return np.vstack([self.encode_row(r) for r in data.rows])
