"""TSV matrix codec.

Format: the first non-comment line is a tab-separated header of column
ids (optionally preceded by an empty corner cell); every following line
is a row id followed by one numeric cell per column.  Lines starting
with ``#`` are comments.  UTF-8, LF or CRLF.

The writer emits floats with ``repr`` (shortest round-trip form), so a
matrix written and read back is bit-identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from tether._errors import FormatError, ParseError
from tether._types import DenseMatrix


@dataclass(frozen=True, slots=True)
class LabeledMatrix:
    """A matrix with row and column ids, as read from a TSV file.

    ``row_lines`` holds the 1-based source line of each row.
    """

    row_ids: tuple[str, ...]
    col_ids: tuple[str, ...]
    values: DenseMatrix
    row_lines: tuple[int, ...] = ()


def _split_lines(text: str, delimiter: str) -> list[tuple[int, list[str]]]:
    rows: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\r")
        if not line.strip() or line.startswith("#"):
            continue
        rows.append((lineno, [cell.strip() for cell in line.split(delimiter)]))
    return rows


def read_matrix_tsv(path: Path | str, *, delimiter: str = "\t") -> LabeledMatrix:
    """Read a labeled numeric matrix.

    Raises:
        FormatError: Empty file, ragged rows, or duplicate ids.
        ParseError: A cell that is not a finite number.

    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8-sig")
    except OSError as exc:
        msg = f"cannot read {path}: {exc}"
        raise FormatError(msg) from exc

    lines = _split_lines(text, delimiter)
    if not lines:
        msg = f"{path.name}: no header line"
        raise FormatError(msg)

    _, header = lines[0]
    body = lines[1:]
    # Published files carry an empty corner cell before the column ids
    if (header and header[0] == "") or (body and len(header) == len(body[0][1])):
        header = header[1:]
    col_ids = tuple(header)
    if len(set(col_ids)) != len(col_ids):
        msg = f"{path.name}: duplicate column ids in header"
        raise FormatError(msg)

    row_ids: list[str] = []
    values = np.empty((len(body), len(col_ids)), dtype=np.float64)
    for r, (lineno, cells) in enumerate(body):
        if len(cells) != len(col_ids) + 1:
            msg = (
                f"{path.name}: line {lineno} has {len(cells) - 1} cells, "
                f"header declares {len(col_ids)}"
            )
            raise FormatError(msg)
        row_ids.append(cells[0])
        for c, cell in enumerate(cells[1:]):
            try:
                value = float(cell)
            except ValueError:
                msg = f"{path.name}: non-numeric cell {cell!r}"
                raise ParseError(msg, row=lineno, column=col_ids[c]) from None
            if not math.isfinite(value):
                msg = f"{path.name}: non-finite cell {cell!r}"
                raise ParseError(msg, row=lineno, column=col_ids[c])
            values[r, c] = value

    if len(set(row_ids)) != len(row_ids):
        msg = f"{path.name}: duplicate row ids"
        raise FormatError(msg)
    return LabeledMatrix(
        row_ids=tuple(row_ids),
        col_ids=col_ids,
        values=values,
        row_lines=tuple(lineno for lineno, _ in body),
    )


def format_cell(value: float, *, integral: bool = False) -> str:
    """Format one cell; integral matrices are written without a decimal point."""
    if integral:
        return str(int(value))
    return repr(float(value))


def write_matrix_tsv(
    path: Path | str,
    row_ids: tuple[str, ...] | list[str],
    col_ids: tuple[str, ...] | list[str],
    values: DenseMatrix,
    *,
    header: list[str] | None = None,
    integral: bool = False,
) -> Path:
    """Write a labeled matrix; *header* lines are emitted as ``# `` comments."""
    path = Path(path)
    values = np.asarray(values)
    lines = [f"# {line}" for line in header or []]
    lines.append("\t".join(["", *col_ids]))
    for rid, row in zip(row_ids, values, strict=True):
        lines.append("\t".join([rid, *(format_cell(v, integral=integral) for v in row)]))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def convert_csv(src: Path | str, dst: Path | str) -> Path:
    """Convert a comma-separated matrix file into the TSV format."""
    matrix = read_matrix_tsv(src, delimiter=",")
    integral = bool(np.all(matrix.values == np.round(matrix.values)))
    return write_matrix_tsv(dst, matrix.row_ids, matrix.col_ids, matrix.values, integral=integral)
