"""Run collector — the single place library code reports to.

Library modules never print.  They record events on the active collector,
which stores them in an ``EventLog``; the CLI decides what to show.

A process-wide default collector exists so that deep call sites (a
boosting round, a similarity file with a skewed diagonal) can report
without threading a collector through every signature.  Tests and
embedding applications swap it with ``use_collector``.

Thread Safety:
    The collector delegates to ``EventLog`` which is internally locked.
    Swapping the default collector is guarded by a module lock.

"""

from __future__ import annotations

import threading
from collections.abc import Iterator
from contextlib import contextmanager

from tether.observability.events import (
    DatasetLoaded,
    ModelFitted,
    Notice,
    now_ns,
)
from tether.observability.log import EventLog


class RunCollector:
    """Event collector for one tether process or run.

    Args:
        log: The EventLog to store events in.

    """

    __slots__ = ("_log",)

    def __init__(self, log: EventLog | None = None) -> None:
        self._log = log if log is not None else EventLog()

    @property
    def log(self) -> EventLog:
        """The underlying event log."""
        return self._log

    # ----- Ingestion -----

    def record_dataset(
        self,
        source: str,
        *,
        n_drugs: int,
        n_targets: int,
        n_interactions: int,
        transposed: bool = False,
        load_ms: float = 0.0,
    ) -> None:
        """Record a dataset load."""
        self._log.append(
            DatasetLoaded(
                source=source,
                n_drugs=n_drugs,
                n_targets=n_targets,
                n_interactions=n_interactions,
                transposed=transposed,
                load_ms=load_ms,
                timestamp_ns=now_ns(),
            )
        )

    # ----- Models -----

    def record_fit(
        self,
        algorithm: str,
        *,
        n_rows: int,
        iterations: int = 0,
        duration_ms: float = 0.0,
    ) -> None:
        """Record a finished classifier fit."""
        self._log.append(
            ModelFitted(
                algorithm=algorithm,
                n_rows=n_rows,
                iterations=iterations,
                duration_ms=duration_ms,
                timestamp_ns=now_ns(),
            )
        )

    # ----- Notices -----

    def warn(self, source: str, message: str) -> None:
        """Record a warning-level notice."""
        self._log.append(
            Notice(source=source, level="warning", message=message, timestamp_ns=now_ns())
        )

    def info(self, source: str, message: str) -> None:
        """Record an info-level notice."""
        self._log.append(
            Notice(source=source, level="info", message=message, timestamp_ns=now_ns())
        )

    def notices(self, *, level: str | None = None) -> list[Notice]:
        """Return recorded notices, oldest first."""
        return [n for n in self._log.events(Notice) if level is None or n.level == level]


# ---------------------------------------------------------------------------
# Process-wide default
# ---------------------------------------------------------------------------

_default_lock = threading.Lock()
_default: RunCollector = RunCollector()


def get_collector() -> RunCollector:
    """Return the active collector."""
    return _default


@contextmanager
def use_collector(collector: RunCollector) -> Iterator[RunCollector]:
    """Make *collector* the active collector for the duration of the block."""
    global _default  # noqa: PLW0603
    with _default_lock:
        previous = _default
        _default = collector
    try:
        yield collector
    finally:
        with _default_lock:
            _default = previous
