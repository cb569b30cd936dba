"""Unified event model for run observability.

Defines event types for dataset ingestion, model fitting, LOOCV sweeps
and library notices (warnings that must not stop a run).

All events are frozen dataclasses with:
- ``timestamp_ns``: Monotonic nanosecond timestamp
- Descriptive fields for the specific event type

Thread Safety:
    All events are frozen (immutable) and safe to share across threads.

"""

import time
from dataclasses import dataclass
from typing import Literal

# ---------------------------------------------------------------------------
# Ingestion events
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class DatasetLoaded:
    """A DTI dataset was read and validated.

    Attributes:
        source: Path of the interaction file.
        n_drugs: Number of drugs (rows of A).
        n_targets: Number of targets (columns of A).
        n_interactions: Number of known interactions E.
        transposed: True if the interaction file was target-major.
        load_ms: Time spent reading and validating in milliseconds.
        timestamp_ns: Monotonic nanosecond timestamp.

    """

    source: str
    n_drugs: int
    n_targets: int
    n_interactions: int
    transposed: bool
    load_ms: float
    timestamp_ns: int


# ---------------------------------------------------------------------------
# Model events
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class ModelFitted:
    """A classifier finished fitting.

    Attributes:
        algorithm: Algorithm tag (``"svm"``, ``"logistic_regression"``, ...).
        n_rows: Number of training rows.
        iterations: Solver iterations (0 for closed-form fits).
        duration_ms: Fit time in milliseconds.
        timestamp_ns: Monotonic nanosecond timestamp.

    """

    algorithm: str
    n_rows: int
    iterations: int
    duration_ms: float
    timestamp_ns: int


# ---------------------------------------------------------------------------
# Notices
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Notice:
    """A non-fatal condition worth surfacing to the user.

    Attributes:
        source: Dotted name of the emitting component (e.g. ``"datasets.dti"``).
        level: Severity.
        message: Human-readable one-line description.
        timestamp_ns: Monotonic nanosecond timestamp.

    """

    source: str
    level: Literal["info", "warning"]
    message: str
    timestamp_ns: int


# ---------------------------------------------------------------------------
# Sweep profiling events
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class SweepProfile:
    """End-to-end timing breakdown for one LOOCV sweep.

    Attributes:
        label: Run label, usually ``"<dataset>/<method>/<similarity>"``.
        n_pairs: Number of masked pair evaluations.
        workers: Worker threads used.
        similarity_ms: Time spent preparing similarities and kernels.
        predict_ms: Time spent scoring masked pairs.
        metrics_ms: Time spent computing ROC/PR.
        write_ms: Time spent writing report files.
        total_ms: End-to-end wall time.
        timestamp_ns: Monotonic nanosecond timestamp.

    """

    label: str
    n_pairs: int
    workers: int
    similarity_ms: float
    predict_ms: float
    metrics_ms: float
    write_ms: float
    total_ms: float
    timestamp_ns: int


# ---------------------------------------------------------------------------
# Union type
# ---------------------------------------------------------------------------

type TetherEvent = DatasetLoaded | ModelFitted | Notice | SweepProfile


def now_ns() -> int:
    """Return the current monotonic clock value in nanoseconds."""
    return time.monotonic_ns()
