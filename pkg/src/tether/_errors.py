"""Tether error hierarchy.

All tether-specific errors inherit from TetherError for easy catching.
Each class carries the CLI exit code for its failure class.
"""

from __future__ import annotations

from typing import Any


class TetherError(Exception):
    """Base error for all tether operations."""

    exit_code: int = 1
    # (drug index, target index) when raised inside a LOOCV sweep
    pair: tuple[int, int] | None = None


class ConfigError(TetherError):
    """Invalid parameter or parameter combination."""

    exit_code = 2


class InputError(TetherError):
    """Shape, dimension or schema violation in an argument."""

    exit_code = 3


class FormatError(TetherError):
    """Structurally invalid data file (missing ids, ragged rows, id mismatch)."""

    exit_code = 3


class ParseError(FormatError):
    """A cell that is not a number, or a number outside its domain.

    Attributes:
        row: 1-based line number in the source file (None if unknown).
        column: Column id of the offending cell (None if unknown).

    """

    def __init__(self, message: str, *, row: int | None = None, column: str | None = None) -> None:
        location = ""
        if row is not None:
            location = f" (line {row}" + (f", column {column!r})" if column is not None else ")")
        super().__init__(f"{message}{location}")
        self.row = row
        self.column = column


class NumericError(TetherError):
    """Non-finite values or an unsolvable linear system."""

    exit_code = 4


class ConvergenceError(NumericError):
    """An iterative solver hit its iteration cap.

    Attributes:
        last_iterate: The solver state when it stopped.
        iterations: Number of iterations performed.

    """

    def __init__(self, message: str, *, last_iterate: Any = None, iterations: int = 0) -> None:
        super().__init__(message)
        self.last_iterate = last_iterate
        self.iterations = iterations


class MetricError(TetherError):
    """ROC/PR metrics requested on truth with a single class."""

    exit_code = 4
