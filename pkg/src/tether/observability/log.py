"""Bounded store for the events of one tether run.

LOOCV workers, ensemble fits and dataset loads append concurrently, so
every access goes through one lock.  Reads come back oldest first and
typed by event class.
"""

from __future__ import annotations

import threading
from collections import Counter, deque

from tether.observability.events import TetherEvent


class EventLog:
    """Ring buffer of ``TetherEvent`` objects; the oldest drop out when full.

    Args:
        max_events: Events retained.

    """

    __slots__ = ("_events", "_lock")

    def __init__(self, max_events: int = 10_000) -> None:
        self._events: deque[TetherEvent] = deque(maxlen=max_events)
        self._lock = threading.Lock()

    def append(self, event: TetherEvent) -> None:
        with self._lock:
            self._events.append(event)

    def events[E](self, kind: type[E], *, since_ns: int = 0) -> list[E]:
        """Events of class *kind* stamped at or after *since_ns*, oldest first."""
        with self._lock:
            snapshot = list(self._events)
        return [e for e in snapshot if e.timestamp_ns >= since_ns and isinstance(e, kind)]

    def counts(self) -> Counter[str]:
        """Retained events per event class name."""
        with self._lock:
            return Counter(type(e).__name__ for e in self._events)

    def clear(self) -> int:
        """Drop every event; returns how many there were."""
        with self._lock:
            dropped = len(self._events)
            self._events.clear()
        return dropped

    def __len__(self) -> int:
        with self._lock:
            return len(self._events)
