"""Classifiers — one fit/predict contract over the supervised learners.

Every learner takes a ``ClassifierConfig`` and a ``LabeledTable`` and
returns an immutable model; ``predict`` validates the query row against
the training schema and returns a ``Prediction``.  The same models serve
standalone classification (``tether classify``) and the local models of
the bipartite local model predictor.

Example:
    >>> from tether.classifiers import ClassifierConfig, fit, predict
    >>> from tether.datasets import weather_fixture
    >>> model = fit(ClassifierConfig(algorithm="decision_tree"), weather_fixture())
    >>> model.root_attribute
    'Outlook'

"""

from __future__ import annotations

import time
from collections.abc import Callable, Sequence

from tether._errors import ConfigError
from tether._types import RowValue
from tether.classifiers._base import (
    ALGORITHMS,
    Algorithm,
    ENSEMBLES,
    ClassifierConfig,
    FittedModel,
    Prediction,
)
from tether.classifiers.ensemble import ENSEMBLE_FITTERS, EnsembleModel, member_rng
from tether.classifiers.knn import KnnModel, fit_knn
from tether.classifiers.logistic import LogisticFit, LogisticModel, logistic_fit, logistic_predict
from tether.classifiers.logistic import fit_logistic as _fit_logistic
from tether.classifiers.naive_bayes import NaiveBayesModel, fit_naive_bayes
from tether.classifiers.rls import RlsModel, rls_fit, rls_predict
from tether.classifiers.rls import fit_rls as _fit_rls
from tether.classifiers.svm import SvmModel, SvmSolution, dual_objective, svm_decision, svm_fit
from tether.classifiers.svm import fit_svm as _fit_svm
from tether.classifiers.tree import (
    DecisionTreeModel,
    entropy,
    fit_tree,
    gini,
    gini_gain,
    information_gain,
)
from tether.datasets.table import LabeledTable
from tether.observability import get_collector

_FITTERS: dict[str, Callable[[ClassifierConfig, LabeledTable], FittedModel]] = {
    "knn": fit_knn,
    "naive_bayes": fit_naive_bayes,
    "decision_tree": fit_tree,
    "logistic_regression": _fit_logistic,
    "rls": _fit_rls,
    "svm": _fit_svm,
}


def _iterations(model: FittedModel) -> int:
    if isinstance(model, LogisticModel):
        return model.iterations
    if isinstance(model, SvmModel):
        return model.solution.iterations
    if isinstance(model, EnsembleModel):
        return len(model.members)
    return 0


def fit(config: ClassifierConfig, data: LabeledTable) -> FittedModel:
    """Fit the algorithm named by ``config.algorithm`` on *data*.

    Raises:
        InputError: *data* has no rows.
        ConfigError: A discriminative algorithm on a table with other
            than two classes, or with no numeric feature.
        ConvergenceError: An iterative solver hit its cap.

    """
    t0 = time.perf_counter()
    if config.algorithm in ENSEMBLES:
        model: FittedModel = ENSEMBLE_FITTERS[config.algorithm](config, data, fit)
    else:
        model = _FITTERS[config.algorithm](config, data)
    get_collector().record_fit(
        config.algorithm,
        n_rows=data.n_rows,
        iterations=_iterations(model),
        duration_ms=(time.perf_counter() - t0) * 1000,
    )
    return model


def predict(model: FittedModel, row: Sequence[RowValue]) -> Prediction:
    """Predict one row; raises InputError when it does not match the training schema."""
    return model.predict_row(model.schema.check_row(row))


def ensemble_fit(config: ClassifierConfig, data: LabeledTable) -> EnsembleModel:
    if config.algorithm not in ENSEMBLES:
        msg = f"ensemble_fit needs bagging, boosting or random_forest, got {config.algorithm!r}"
        raise ConfigError(msg)
    model = fit(config, data)
    assert isinstance(model, EnsembleModel)
    return model


def ensemble_predict(model: EnsembleModel, row: Sequence[RowValue]) -> Prediction:
    return predict(model, row)


def accuracy(model: FittedModel, data: LabeledTable) -> float:
    """Fraction of rows in *data* whose predicted label matches."""
    if data.n_rows == 0:
        return 0.0
    hits = sum(
        predict(model, row).label == label for row, label in zip(data.rows, data.labels, strict=True)
    )
    return hits / data.n_rows


__all__ = [
    "ALGORITHMS",
    "Algorithm",
    "ClassifierConfig",
    "DecisionTreeModel",
    "EnsembleModel",
    "FittedModel",
    "KnnModel",
    "LogisticFit",
    "LogisticModel",
    "NaiveBayesModel",
    "Prediction",
    "RlsModel",
    "SvmModel",
    "SvmSolution",
    "accuracy",
    "dual_objective",
    "ensemble_fit",
    "ensemble_predict",
    "entropy",
    "fit",
    "gini",
    "gini_gain",
    "information_gain",
    "logistic_fit",
    "logistic_predict",
    "member_rng",
    "predict",
    "rls_fit",
    "rls_predict",
    "svm_decision",
    "svm_fit",
]
