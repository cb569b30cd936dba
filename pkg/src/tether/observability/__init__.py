"""Run observability — structured events instead of free-text logs.

Aggregates events from:
- **datasets**: ingestion (sizes, orientation, load time)
- **classifiers**: fits (algorithm, iterations, duration)
- **evaluation**: LOOCV sweep profiles (per-stage timing)
- **everywhere**: notices (warnings that do not stop a run)

All events are frozen dataclasses with nanosecond timestamps, safe for
concurrent production from multiple worker threads.

Quick Start:
    >>> from tether.observability import RunCollector, use_collector
    >>> collector = RunCollector()
    >>> with use_collector(collector):
    ...     pass  # library calls record notices here
    >>> collector.notices()
    []

"""

from tether.observability.collector import RunCollector, get_collector, use_collector
from tether.observability.events import (
    DatasetLoaded,
    ModelFitted,
    Notice,
    SweepProfile,
    TetherEvent,
    now_ns,
)
from tether.observability.log import EventLog
from tether.observability.profiler import SweepProfiler, SweepStats, compute_aggregate_stats

__all__ = [
    "DatasetLoaded",
    "EventLog",
    "ModelFitted",
    "Notice",
    "RunCollector",
    "SweepProfile",
    "SweepProfiler",
    "SweepStats",
    "TetherEvent",
    "compute_aggregate_stats",
    "get_collector",
    "now_ns",
    "use_collector",
]
