"""Sweep profiler — measures where a LOOCV run spends its time.

Records per-stage timing for one sweep and emits a ``SweepProfile``
event to the ``EventLog``.

Thread Safety:
    A profiler instance belongs to the thread driving the sweep
    (single-writer).  Aggregate queries are protected by the
    underlying ``EventLog`` lock.

"""

from __future__ import annotations

import sys
import time
from dataclasses import dataclass
from typing import TYPE_CHECKING

from tether.observability.events import SweepProfile, now_ns

if TYPE_CHECKING:
    from tether.observability.log import EventLog

STAGES = ("similarity", "predict", "metrics", "write")


@dataclass(slots=True)
class _Timer:
    """Accumulates timing for a named stage."""

    name: str
    _start: float = 0.0
    elapsed_ms: float = 0.0

    def start(self) -> None:
        self._start = time.perf_counter()

    def stop(self) -> None:
        if self._start > 0:
            self.elapsed_ms += (time.perf_counter() - self._start) * 1000
            self._start = 0.0


class SweepProfiler:
    """Records per-stage timing for a single sweep.

    Usage::

        profiler = SweepProfiler(event_log)

        profiler.begin("nr/blmn/chem_seq", n_pairs=1404, workers=4)
        with profiler.stage("predict"):
            ...
        profiler.finish()

    After ``finish()``, a ``SweepProfile`` event is appended to the log
    and, when verbose, a one-line summary is printed to stderr.

    """

    __slots__ = ("_label", "_log", "_n_pairs", "_t0", "_timers", "_verbose", "_workers")

    def __init__(self, log: EventLog, *, verbose: bool = False) -> None:
        self._log = log
        self._verbose = verbose
        self._label = ""
        self._n_pairs = 0
        self._workers = 1
        self._t0 = 0.0
        self._timers: dict[str, _Timer] = {name: _Timer(name=name) for name in STAGES}

    def begin(self, label: str, *, n_pairs: int = 0, workers: int = 1) -> None:
        """Start profiling a new sweep."""
        self._label = label
        self._n_pairs = n_pairs
        self._workers = workers
        self._t0 = time.perf_counter()
        for timer in self._timers.values():
            timer.elapsed_ms = 0.0

    def start(self, stage: str) -> None:
        """Start timing a named stage."""
        timer = self._timers.get(stage)
        if timer is not None:
            timer.start()

    def stop(self, stage: str) -> None:
        """Stop timing a named stage."""
        timer = self._timers.get(stage)
        if timer is not None:
            timer.stop()

    def stage(self, name: str) -> _StageContext:
        """Context manager form of ``start``/``stop``."""
        return _StageContext(self, name)

    def finish(self) -> SweepProfile:
        """Finish profiling and emit the ``SweepProfile`` event.

        Returns the profile for testing / inspection.

        """
        total_ms = (time.perf_counter() - self._t0) * 1000 if self._t0 > 0 else 0.0

        profile = SweepProfile(
            label=self._label,
            n_pairs=self._n_pairs,
            workers=self._workers,
            similarity_ms=self._timers["similarity"].elapsed_ms,
            predict_ms=self._timers["predict"].elapsed_ms,
            metrics_ms=self._timers["metrics"].elapsed_ms,
            write_ms=self._timers["write"].elapsed_ms,
            total_ms=total_ms,
            timestamp_ns=now_ns(),
        )

        self._log.append(profile)

        if self._verbose:
            self._print_summary(profile)

        return profile

    def _print_summary(self, p: SweepProfile) -> None:
        """Print a one-line timing summary to stderr."""
        pairs = "pair" if p.n_pairs == 1 else "pairs"
        stages = (
            f"similarity: {p.similarity_ms:.0f}ms, "
            f"predict: {p.predict_ms:.0f}ms, "
            f"metrics: {p.metrics_ms:.0f}ms, "
            f"write: {p.write_ms:.0f}ms"
        )
        print(
            f"  [{p.total_ms:.0f}ms] {p.label} -> {p.n_pairs} {pairs} "
            f"on {p.workers} worker(s) ({stages})",
            file=sys.stderr,
        )


class _StageContext:
    __slots__ = ("_name", "_profiler")

    def __init__(self, profiler: SweepProfiler, name: str) -> None:
        self._profiler = profiler
        self._name = name

    def __enter__(self) -> None:
        self._profiler.start(self._name)

    def __exit__(self, *exc: object) -> None:
        self._profiler.stop(self._name)


@dataclass(frozen=True, slots=True)
class SweepStats:
    """Latency summary over recorded ``SweepProfile`` events.

    Percentiles take the sorted totals at index ``int(count * pct / 100)``.
    """

    count: int
    pairs: int
    p50_ms: float
    p95_ms: float
    min_ms: float
    max_ms: float
    avg_stage_ms: dict[str, float]


def compute_aggregate_stats(log: EventLog, *, limit: int = 100) -> SweepStats | None:
    """Summarize the last *limit* sweeps in *log*; None when there are none."""
    profiles = log.events(SweepProfile)[-limit:]
    if not profiles:
        return None
    totals = sorted(p.total_ms for p in profiles)
    count = len(totals)

    def percentile(pct: float) -> float:
        return round(totals[min(int(count * pct / 100), count - 1)], 1)

    return SweepStats(
        count=count,
        pairs=sum(p.n_pairs for p in profiles),
        p50_ms=percentile(50),
        p95_ms=percentile(95),
        min_ms=round(totals[0], 1),
        max_ms=round(totals[-1], 1),
        avg_stage_ms={
            name: round(sum(getattr(p, f"{name}_ms") for p in profiles) / count, 1) for name in STAGES
        },
    )
