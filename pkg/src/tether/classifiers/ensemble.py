"""Bagging, AdaBoost.M1 boosting and random forests.

Each ensemble member draws from its own generator, spawned from the
config seed with ``numpy.random.SeedSequence``.  Members are independent
of one another (boosting aside, which is sequential by nature), so they
may be fitted on a thread pool and the result does not depend on the
worker count.
"""

from __future__ import annotations

import math
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from tether._types import ClassLabel, Row
from tether.classifiers._base import (
    NUMERIC_BINARY,
    ClassifierConfig,
    FittedModel,
    Prediction,
    make_prediction,
    require_rows,
)
from tether.datasets.table import LabeledTable
from tether.observability import get_collector

# Weighted error substituted for a perfect boosting round
PERFECT_ROUND_ERROR = 1e-10

type Fitter = Callable[[ClassifierConfig, LabeledTable], FittedModel]


def member_rng(seed: int, member: int, size: int) -> np.random.Generator:
    """Generator for ensemble member *member* of *size*, derived from *seed*."""
    return np.random.default_rng(np.random.SeedSequence(seed).spawn(size)[member])


def auto_feature_subset(n_features: int) -> int:
    return max(1, math.ceil(math.sqrt(n_features)))


@dataclass(frozen=True, slots=True)
class EnsembleModel:
    """Base models with vote weights.

    Attributes:
        kind: ``bagging``, ``boosting`` or ``random_forest``.
        members: Fitted base models.
        weights: Vote weight per member (1.0 except for boosting).
        feature_subsets: Per-member feature positions (random forest only).
        class_prior: Training class frequencies, used when no boosting
            round was accepted.
        round_errors: Weighted training error of each boosting round.

    """

    kind: str
    schema: LabeledTable
    classes: tuple[ClassLabel, ...]
    members: tuple[FittedModel, ...]
    weights: tuple[float, ...]
    feature_subsets: tuple[tuple[int, ...], ...] | None = None
    class_prior: tuple[float, ...] = ()
    round_errors: tuple[float, ...] = ()

    @property
    def algorithm(self) -> str:
        return self.kind

    def _member_row(self, m: int, row: Row) -> Row:
        if self.feature_subsets is None:
            return row
        return tuple(row[f] for f in self.feature_subsets[m])

    def predict_row(self, row: Row) -> Prediction:
        """Weighted vote; scores are the normalized vote mass per class."""
        if not self.members:
            return make_prediction(self.classes, np.asarray(self.class_prior))
        position = {c: i for i, c in enumerate(self.classes)}
        votes = np.zeros(len(self.classes))
        for m, (member, weight) in enumerate(zip(self.members, self.weights, strict=True)):
            label = member.predict_row(self._member_row(m, row)).label
            votes[position[label]] += weight
        return make_prediction(self.classes, votes / votes.sum())


@dataclass(frozen=True, slots=True)
class ConstantModel:
    """Predicts the one class its training draw held."""

    schema: LabeledTable
    classes: tuple[ClassLabel, ...]
    label: ClassLabel

    @property
    def algorithm(self) -> str:
        return "constant"

    def predict_row(self, row: Row) -> Prediction:
        scores = np.asarray([float(c == self.label) for c in self.classes])
        return make_prediction(self.classes, scores)


def _fit_member(
    fit: Fitter, base: ClassifierConfig, data: LabeledTable, draw: LabeledTable
) -> FittedModel:
    # Binary-only learners cannot fit a draw that lost a class
    if base.algorithm in NUMERIC_BINARY and len(draw.classes) < 2 <= len(data.classes):
        return ConstantModel(schema=draw.schema(), classes=data.classes, label=draw.labels[0])
    return fit(base, draw)


def _map_members(workers: int, fit_one: Callable[[int], FittedModel], size: int) -> list[FittedModel]:
    if workers <= 1 or size <= 1:
        return [fit_one(m) for m in range(size)]
    with ThreadPoolExecutor(max_workers=min(workers, size)) as pool:
        return list(pool.map(fit_one, range(size)))


def _class_prior(data: LabeledTable) -> tuple[float, ...]:
    return tuple(data.labels.count(c) / data.n_rows for c in data.classes)


def fit_bagging(config: ClassifierConfig, data: LabeledTable, fit: Fitter) -> EnsembleModel:
    """Each member fits an n-row bootstrap draw of *data*.

    With ``svm``, ``rls`` or ``logistic_regression`` as base learner, a
    draw holding a single class gives a ``ConstantModel`` member.
    """
    require_rows(data, "bagging")
    base = replace(config, algorithm=config.base_algorithm)
    n, size = data.n_rows, config.ensemble_size

    def fit_one(m: int) -> FittedModel:
        idx = member_rng(config.seed, m, size).integers(0, n, size=n)
        return _fit_member(fit, base, data, data.subset(idx.tolist()))

    members = _map_members(config.workers, fit_one, size)
    return EnsembleModel(
        kind="bagging",
        schema=data.schema(),
        classes=data.classes,
        members=tuple(members),
        weights=(1.0,) * size,
        class_prior=_class_prior(data),
    )


def fit_random_forest(config: ClassifierConfig, data: LabeledTable, fit: Fitter) -> EnsembleModel:
    """Bootstrap rows plus a random feature subset per decision tree."""
    require_rows(data, "random_forest")
    base = replace(config, algorithm="decision_tree")
    n, p, size = data.n_rows, data.n_features, config.ensemble_size
    m_features = min(p, config.feature_subset_size or auto_feature_subset(p))

    def draw(m: int) -> tuple[np.ndarray, tuple[int, ...]]:
        rng = member_rng(config.seed, m, size)
        idx = rng.integers(0, n, size=n)
        features = tuple(sorted(int(f) for f in rng.choice(p, size=m_features, replace=False)))
        return idx, features

    draws = [draw(m) for m in range(size)]

    def fit_one(m: int) -> FittedModel:
        idx, features = draws[m]
        return fit(base, data.subset(idx.tolist()).project(features))

    members = _map_members(config.workers, fit_one, size)
    return EnsembleModel(
        kind="random_forest",
        schema=data.schema(),
        classes=data.classes,
        members=tuple(members),
        weights=(1.0,) * size,
        feature_subsets=tuple(f for _, f in draws),
        class_prior=_class_prior(data),
    )


def fit_boosting(config: ClassifierConfig, data: LabeledTable, fit: Fitter) -> EnsembleModel:
    """AdaBoost.M1 by weighted resampling.

    A round whose weighted error reaches 0.5 is discarded and training
    stops with the rounds accepted so far.  A perfect round is accepted
    with error ``PERFECT_ROUND_ERROR`` and ends training.
    Single-class resamples are handled as in ``fit_bagging``.

    """
    require_rows(data, "boosting")
    base = replace(config, algorithm=config.base_algorithm)
    n, size = data.n_rows, config.ensemble_size
    w = np.full(n, 1.0 / n)
    members: list[FittedModel] = []
    weights: list[float] = []
    errors: list[float] = []

    for m in range(size):
        rng = member_rng(config.seed, m, size)
        idx = rng.choice(n, size=n, replace=True, p=w)
        model = _fit_member(fit, base, data, data.subset(idx.tolist()))
        wrong = np.asarray(
            [model.predict_row(r).label != y for r, y in zip(data.rows, data.labels, strict=True)]
        )
        err = float(np.sum(w[wrong]))
        if err >= 0.5:
            get_collector().warn(
                "classifiers.boosting",
                f"round {m + 1}: weighted error {err:.3f} >= 0.5; stopping with {len(members)} model(s)",
            )
            break
        perfect = err <= 0.0
        err = max(err, PERFECT_ROUND_ERROR)
        members.append(model)
        weights.append(math.log((1.0 - err) / err))
        errors.append(err)
        if perfect:
            break
        w = np.where(wrong, w, w * err / (1.0 - err))
        w /= w.sum()

    return EnsembleModel(
        kind="boosting",
        schema=data.schema(),
        classes=data.classes,
        members=tuple(members),
        weights=tuple(weights),
        class_prior=_class_prior(data),
        round_errors=tuple(errors),
    )


ENSEMBLE_FITTERS: dict[str, Callable[[ClassifierConfig, LabeledTable, Fitter], EnsembleModel]] = {
    "bagging": fit_bagging,
    "boosting": fit_boosting,
    "random_forest": fit_random_forest,
}
