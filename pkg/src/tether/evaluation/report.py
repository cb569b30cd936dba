"""Report writers: summary TSV, curve-point TSVs, and the comparison table.

Files carry the comment header from ``header_lines``.  Bodies contain
nothing run-dependent beyond the results, so two runs with the same
parameters produce identical bodies whatever the worker count.
"""

from __future__ import annotations

from collections.abc import Sequence
from pathlib import Path
from typing import Literal

from tether.datasets.tsv import format_cell
from tether.evaluation.loocv import SWEEP, CvRun
from tether.evaluation.metrics import EvalReport

SUMMARY_COLUMNS = (
    "method",
    "dataset",
    "similarity",
    "sweep",
    "auc",
    "aupr",
    "n_pairs",
    "n_positives",
    "n_inferred",
)
# Curve files are two projections of the same threshold sweep
CURVE_COLUMNS: dict[str, tuple[str, ...]] = {
    "roc": ("threshold", "fpr", "tpr"),
    "pr": ("threshold", "recall", "precision"),
}


def _write(path: Path | str, header: Sequence[str] | None, body: list[str]) -> Path:
    path = Path(path)
    lines = [f"# {line}" for line in header or []]
    path.write_text("\n".join([*lines, *body]) + "\n", encoding="utf-8")
    return path


def summary_row(run: CvRun) -> dict[str, str]:
    r = run.report
    return {
        "method": r.method,
        "dataset": run.dataset,
        "similarity": r.params.get("similarity", ""),
        "sweep": r.params.get("sweep", SWEEP),
        "auc": format_cell(r.auc),
        "aupr": format_cell(r.aupr),
        "n_pairs": str(r.n_pairs),
        "n_positives": str(r.n_positives),
        "n_inferred": str(r.n_inferred),
    }


def write_summary(path: Path | str, runs: Sequence[CvRun], *, header: Sequence[str] | None = None) -> Path:
    """One line per run; AUC and AUPR as fractions at full precision."""
    body = ["\t".join(SUMMARY_COLUMNS)]
    for run in runs:
        row = summary_row(run)
        body.append("\t".join(row[c] for c in SUMMARY_COLUMNS))
    return _write(path, header, body)


def write_curve(
    path: Path | str,
    report: EvalReport,
    kind: Literal["roc", "pr"],
    *,
    header: Sequence[str] | None = None,
) -> Path:
    """One line per threshold, highest first; the first line is the +inf point."""
    columns = CURVE_COLUMNS[kind]
    body = ["\t".join(columns)]
    for p in report.points:
        body.append("\t".join(format_cell(getattr(p, c)) for c in columns))
    return _write(path, header, body)


def comparison_table(runs: Sequence[CvRun]) -> str:
    """Results as a text table in percent, one row per dataset and similarity.

    Columns are ``<METHOD> AUC`` and ``<METHOD> AUPR`` for every method
    present, in order of first appearance.

    """
    methods = list(dict.fromkeys(run.report.method for run in runs))
    keys = list(dict.fromkeys((run.dataset, run.report.params.get("similarity", "")) for run in runs))
    cells: dict[tuple[str, str, str], EvalReport] = {
        (run.dataset, run.report.params.get("similarity", ""), run.report.method): run.report
        for run in runs
    }
    head = ["dataset", "similarity"]
    for m in methods:
        head += [f"{m.upper()} AUC", f"{m.upper()} AUPR"]
    rows = [head]
    for dataset, similarity in keys:
        row = [dataset, similarity]
        for m in methods:
            report = cells.get((dataset, similarity, m))
            if report is None:
                row += ["-", "-"]
            else:
                row += [f"{100 * report.auc:.1f}", f"{100 * report.aupr:.1f}"]
        rows.append(row)
    widths = [max(len(r[c]) for r in rows) for c in range(len(head))]
    return "\n".join("  ".join(cell.ljust(w) for cell, w in zip(r, widths, strict=True)).rstrip() for r in rows)
