"""Evaluation — LOOCV over drug-target pairs, ROC/PR metrics, report files."""

from tether.evaluation.loocv import SWEEP, CvRun, evaluate, loocv
from tether.evaluation.metrics import (
    Confusion,
    CurvePoint,
    EvalReport,
    confusion_at,
    curve,
    roc_pr,
)
from tether.evaluation.report import (
    SUMMARY_COLUMNS,
    comparison_table,
    summary_row,
    write_curve,
    write_summary,
)

__all__ = [
    "SUMMARY_COLUMNS",
    "SWEEP",
    "Confusion",
    "CurvePoint",
    "CvRun",
    "EvalReport",
    "comparison_table",
    "confusion_at",
    "curve",
    "evaluate",
    "loocv",
    "roc_pr",
    "summary_row",
    "write_curve",
    "write_summary",
]
