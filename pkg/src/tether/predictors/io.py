"""Score matrix writers and the shared output header."""

from __future__ import annotations

from collections.abc import Mapping
from datetime import UTC, datetime
from pathlib import Path

import numpy as np

from tether._errors import InputError
from tether._types import InteractionMatrix
from tether.datasets.tsv import format_cell, write_matrix_tsv
from tether.predictors._params import ScoreMatrix

# Header keys whose values change between otherwise identical runs
VOLATILE_KEYS = ("generated", "wall_time_s")


def header_lines(
    params: Mapping[str, str],
    *,
    command: str,
    dataset: str = "",
    wall_time_s: float | None = None,
) -> list[str]:
    """Comment header echoing the run parameters (without the ``# `` prefix)."""
    from tether import __version__

    lines = [f"tether {__version__}", f"command: {command}"]
    if dataset:
        lines.append(f"dataset: {dataset}")
    lines += [f"{key}: {value}" for key, value in params.items()]
    lines.append(f"generated: {datetime.now(UTC).isoformat(timespec='seconds')}")
    if wall_time_s is not None:
        lines.append(f"wall_time_s: {wall_time_s:.3f}")
    return lines


def write_scores_wide(path: Path | str, scores: ScoreMatrix, *, header: list[str] | None = None) -> Path:
    """Drugs as rows, targets as columns, scores at full precision."""
    return write_matrix_tsv(path, scores.drug_ids, scores.target_ids, scores.values, header=header)


def write_scores_long(
    path: Path | str,
    scores: ScoreMatrix,
    truth: InteractionMatrix,
    *,
    header: list[str] | None = None,
) -> Path:
    """One line per pair: drug, target, score, known_label."""
    truth = np.asarray(truth)
    if truth.shape != scores.shape:
        msg = f"truth is {truth.shape}, scores are {scores.shape}"
        raise InputError(msg)
    path = Path(path)
    lines = [f"# {line}" for line in header or []]
    lines.append("drug\ttarget\tscore\tknown_label")
    for i, drug in enumerate(scores.drug_ids):
        for j, target in enumerate(scores.target_ids):
            lines.append(f"{drug}\t{target}\t{format_cell(scores.values[i, j])}\t{int(truth[i, j])}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path
