"""Shared classifier types: configuration, predictions, the model protocol."""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
from typing import Literal, Protocol, runtime_checkable

import numpy as np

from tether._errors import ConfigError, InputError
from tether._types import ClassLabel, Row
from tether.datasets.table import LabeledTable
from tether.linalg import KernelSpec

type Algorithm = Literal[
    "knn",
    "naive_bayes",
    "decision_tree",
    "logistic_regression",
    "rls",
    "svm",
    "bagging",
    "boosting",
    "random_forest",
]

ALGORITHMS: tuple[str, ...] = (
    "knn",
    "naive_bayes",
    "decision_tree",
    "logistic_regression",
    "rls",
    "svm",
    "bagging",
    "boosting",
    "random_forest",
)
ENSEMBLES = frozenset({"bagging", "boosting", "random_forest"})
# Binary discriminative models that need numeric inputs
NUMERIC_BINARY = frozenset({"logistic_regression", "rls", "svm"})


@dataclass(frozen=True, slots=True)
class ClassifierConfig:
    """Parameters for every algorithm; each algorithm reads only its own.

    Attributes:
        algorithm: Which classifier to fit.
        k: Neighbour count for knn.
        distance_weighted: knn votes weighted by 1/(d + 1e-12).
        laplace: naive Bayes categorical smoothing with pseudo-count 1;
            False uses the raw n_jc / n_c estimate.
        split_criterion: ``entropy`` (information gain) or ``gini``.
        pruning: ``none`` or ``reduced_error`` post-pruning.
        prune_fraction: Held-out share used by reduced-error pruning.
        max_depth: Depth cap for trees (None = grow until pure).
        delta: RLS regularization weight δ.
        C: SVM penalty weight.
        kernel: Kernel for rls and svm on feature vectors.
        svm_tol: KKT violation tolerance for the SMO solver.
        svm_max_iter: Iteration cap for the SMO solver.
        ridge: L2 weight λ for logistic regression.
        max_iter: Newton iteration cap for logistic regression.
        ensemble_size: Number of base models.
        base_algorithm: Base learner for bagging and boosting.
        feature_subset_size: Per-tree feature count for random_forest
            (None = ceil(sqrt(p))).
        seed: Single source of randomness.
        workers: Threads for fitting independent ensemble members.

    """

    algorithm: Algorithm = "decision_tree"
    k: int = 3
    distance_weighted: bool = False
    laplace: bool = True
    split_criterion: Literal["entropy", "gini"] = "entropy"
    pruning: Literal["none", "reduced_error"] = "none"
    prune_fraction: float = 0.2
    max_depth: int | None = None
    delta: float = 1.0
    C: float = 1.0
    kernel: KernelSpec = field(default_factory=KernelSpec)
    svm_tol: float = 1e-3
    svm_max_iter: int = 100_000
    ridge: float = 1e-6
    max_iter: int = 100
    ensemble_size: int = 10
    base_algorithm: Algorithm = "decision_tree"
    feature_subset_size: int | None = None
    seed: int = 0
    workers: int = 1

    def __post_init__(self) -> None:
        checks: tuple[tuple[bool, str], ...] = (
            (self.algorithm in ALGORITHMS, f"unknown algorithm {self.algorithm!r}"),
            (self.k >= 1, f"k must be >= 1, got {self.k}"),
            (self.split_criterion in ("entropy", "gini"), "split_criterion must be entropy or gini"),
            (self.pruning in ("none", "reduced_error"), "pruning must be none or reduced_error"),
            (0.0 < self.prune_fraction < 1.0, "prune_fraction must be in (0, 1)"),
            (self.max_depth is None or self.max_depth >= 1, "max_depth must be >= 1"),
            (self.delta > 0, f"delta must be > 0, got {self.delta}"),
            (self.C > 0, f"C must be > 0, got {self.C}"),
            (self.ridge >= 0, f"ridge must be >= 0, got {self.ridge}"),
            (self.max_iter >= 1, "max_iter must be >= 1"),
            (self.svm_max_iter >= 1, "svm_max_iter must be >= 1"),
            (self.ensemble_size >= 1, f"ensemble_size must be >= 1, got {self.ensemble_size}"),
            (
                self.base_algorithm in ALGORITHMS and self.base_algorithm not in ENSEMBLES,
                f"base_algorithm must be a non-ensemble algorithm, got {self.base_algorithm!r}",
            ),
            (
                self.feature_subset_size is None or self.feature_subset_size >= 1,
                "feature_subset_size must be >= 1",
            ),
            (self.workers >= 1, "workers must be >= 1"),
        )
        for ok, msg in checks:
            if not ok:
                raise ConfigError(msg)


@dataclass(frozen=True, slots=True)
class Prediction:
    """A predicted label with a score per class.

    Attributes:
        label: Predicted class (argmax of scores, lowest class index on ties).
        score_per_class: Class -> score in [0, 1].

    """

    label: ClassLabel
    score_per_class: Mapping[ClassLabel, float]


@runtime_checkable
class FittedModel(Protocol):
    """What every fitted classifier provides.  Immutable after fit."""

    @property
    def algorithm(self) -> str: ...

    @property
    def classes(self) -> tuple[ClassLabel, ...]: ...

    @property
    def schema(self) -> LabeledTable: ...

    def predict_row(self, row: Row) -> Prediction: ...


def make_prediction(classes: tuple[ClassLabel, ...], scores: np.ndarray) -> Prediction:
    """Build a Prediction; ``np.argmax`` picks the lowest index among ties."""
    scores = np.asarray(scores, dtype=np.float64)
    best = int(np.argmax(scores))
    return Prediction(
        label=classes[best],
        score_per_class={c: float(s) for c, s in zip(classes, scores, strict=True)},
    )


def require_rows(data: LabeledTable, algorithm: str) -> None:
    if data.n_rows == 0:
        msg = f"{algorithm}: training table has no rows"
        raise InputError(msg)


def require_binary(data: LabeledTable, algorithm: str) -> tuple[ClassLabel, ClassLabel]:
    """Return (negative, positive) classes in declaration order."""
    classes = data.classes
    if len(classes) != 2:
        msg = f"{algorithm} needs exactly two classes, found {len(classes)}"
        raise ConfigError(msg)
    return classes[0], classes[1]
