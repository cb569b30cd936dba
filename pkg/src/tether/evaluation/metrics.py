"""Confusion counts, ROC and precision-recall curves, AUC and AUPR.

Curves are swept over the distinct score values, highest first, with a
pair predicted positive when its score is >= the threshold.  The first
point (threshold +inf) predicts nothing: TPR = FPR = 0 and precision 1
by convention.  Tied scores enter the curve together, so the trapezoidal
AUC equals the Mann-Whitney statistic with ties counted as one half.

AUPR is average precision by default: the sum over threshold steps of
(recall gain) x (precision at that step).  Trapezoidal integration of
the PR curve is available for comparison.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from tether._errors import InputError, MetricError
from tether._types import DenseMatrix, InteractionMatrix

type AuprMethod = Literal["average_precision", "trapezoid"]


@dataclass(frozen=True, slots=True)
class CurvePoint:
    """One operating point; ``recall`` is the same number as ``tpr``."""

    threshold: float
    tpr: float
    fpr: float
    precision: float

    @property
    def recall(self) -> float:
        return self.tpr


@dataclass(frozen=True, slots=True)
class Confusion:
    tp: int
    fp: int
    tn: int
    fn: int
    tpr: float
    fpr: float
    precision: float


@dataclass(frozen=True, slots=True)
class EvalReport:
    """Ranking quality of a score matrix against the true interactions.

    Attributes:
        auc: Area under the ROC curve, in [0, 1].
        aupr: Area under the PR curve, in [0, 1].
        points: Curve points by descending threshold; the ROC and PR
            curves are two projections of the same points.
        n_positives: Known interactions.
        n_pairs: Scored pairs.
        method: Predictor tag.
        params: Parameter echo.
        n_inferred: Pairs for which neighbour inferring fired.
        aupr_method: How ``aupr`` was integrated.

    """

    auc: float
    aupr: float
    points: tuple[CurvePoint, ...]
    n_positives: int
    n_pairs: int
    method: str = ""
    params: Mapping[str, str] = field(default_factory=dict)
    n_inferred: int = 0
    aupr_method: AuprMethod = "average_precision"

    @property
    def roc_points(self) -> tuple[CurvePoint, ...]:
        return self.points

    @property
    def pr_points(self) -> tuple[CurvePoint, ...]:
        return self.points


def _flatten(scores: DenseMatrix, truth: InteractionMatrix) -> tuple[np.ndarray, np.ndarray]:
    s = np.asarray(scores, dtype=np.float64)
    t = np.asarray(truth)
    if s.shape != t.shape:
        msg = f"scores are {s.shape}, truth is {t.shape}"
        raise InputError(msg)
    if not np.all(np.isfinite(s)):
        msg = "scores contain NaN or Inf"
        raise InputError(msg)
    if not np.all((t == 0) | (t == 1)):
        msg = "truth entries must be 0 or 1"
        raise InputError(msg)
    return s.ravel(), t.ravel().astype(bool)


def _rates(tp: np.ndarray, fp: np.ndarray, pos: int, neg: int) -> tuple[np.ndarray, ...]:
    tpr = tp / pos if pos else np.zeros_like(tp, dtype=np.float64)
    fpr = fp / neg if neg else np.zeros_like(fp, dtype=np.float64)
    predicted = tp + fp
    with np.errstate(invalid="ignore", divide="ignore"):
        precision = np.where(predicted > 0, tp / np.maximum(predicted, 1), 1.0)
    return tpr, fpr, precision


def confusion_at(scores: DenseMatrix, truth: InteractionMatrix, threshold: float) -> Confusion:
    """Counts and rates with ``score >= threshold`` predicted positive."""
    s, t = _flatten(scores, truth)
    predicted = s >= threshold
    tp = int(np.sum(predicted & t))
    fp = int(np.sum(predicted & ~t))
    fn = int(np.sum(~predicted & t))
    tn = int(np.sum(~predicted & ~t))
    tpr, fpr, precision = _rates(np.asarray([tp]), np.asarray([fp]), tp + fn, fp + tn)
    return Confusion(tp, fp, tn, fn, float(tpr[0]), float(fpr[0]), float(precision[0]))


def curve(scores: DenseMatrix, truth: InteractionMatrix) -> tuple[CurvePoint, ...]:
    """Curve points over every distinct threshold, highest first."""
    s, t = _flatten(scores, truth)
    pos = int(t.sum())
    neg = t.size - pos
    order = np.argsort(-s, kind="stable")
    s_sorted, t_sorted = s[order], t[order]
    tp_cum = np.cumsum(t_sorted)
    fp_cum = np.cumsum(~t_sorted)
    # Last index of each run of tied scores
    ends = np.flatnonzero(np.r_[s_sorted[1:] != s_sorted[:-1], True])
    tp = np.r_[0, tp_cum[ends]]
    fp = np.r_[0, fp_cum[ends]]
    thresholds = np.r_[np.inf, s_sorted[ends]]
    tpr, fpr, precision = _rates(tp, fp, pos, neg)
    return tuple(
        CurvePoint(float(th), float(a), float(b), float(c))
        for th, a, b, c in zip(thresholds, tpr, fpr, precision, strict=True)
    )


def _check_both_classes(truth: InteractionMatrix) -> tuple[int, int]:
    t = np.asarray(truth).astype(bool)
    pos = int(t.sum())
    neg = t.size - pos
    if pos == 0 or neg == 0:
        kind = "no positives" if pos == 0 else "no negatives"
        msg = f"ROC/PR metrics need both classes in the truth; found {kind}"
        raise MetricError(msg)
    return pos, neg


def roc_pr(
    scores: DenseMatrix,
    truth: InteractionMatrix,
    *,
    aupr_method: AuprMethod = "average_precision",
    method: str = "",
    params: Mapping[str, str] | None = None,
    n_inferred: int = 0,
) -> EvalReport:
    """AUC, AUPR and the curve points of *scores* against *truth*.

    Raises:
        MetricError: *truth* has only one class.

    """
    s, t = _flatten(scores, truth)
    pos, _ = _check_both_classes(t)
    points = curve(s, t)
    tpr = np.asarray([p.tpr for p in points])
    fpr = np.asarray([p.fpr for p in points])
    precision = np.asarray([p.precision for p in points])
    auc = float(np.trapezoid(tpr, fpr))
    if aupr_method == "average_precision":
        aupr = float(np.sum(np.diff(tpr) * precision[1:]))
    else:
        aupr = float(np.trapezoid(precision, tpr))
    return EvalReport(
        auc=min(max(auc, 0.0), 1.0),
        aupr=min(max(aupr, 0.0), 1.0),
        points=points,
        n_positives=pos,
        n_pairs=int(t.size),
        method=method,
        params=dict(params or {}),
        n_inferred=n_inferred,
        aupr_method=aupr_method,
    )
