from __future__ import annotations

import time
from collections import Counter, defaultdict
from collections.abc import Iterator
from contextlib import contextmanager
from dataclasses import dataclass
from threading import Lock
from typing import Any

from config import METRICS_ENABLED


def _metric_name(name: str) -> str:
    return str(name or "").strip().lower()


@dataclass
class TimerStats:
    count: int = 0
    sum_ms: float = 0.0
    min_ms: float = 0.0
    max_ms: float = 0.0

    def add(self, duration_ms: float) -> None:
        duration = max(0.0, float(duration_ms))
        self.min_ms = duration if self.count == 0 else min(self.min_ms, duration)
        self.max_ms = max(self.max_ms, duration)
        self.sum_ms += duration
        self.count += 1

    def as_dict(self) -> dict[str, Any]:
        return {
            "count": self.count,
            "avg_ms": round(self.sum_ms / self.count, 2) if self.count else 0.0,
            "min_ms": round(self.min_ms, 2),
            "max_ms": round(self.max_ms, 2),
            "sum_ms": round(self.sum_ms, 2),
        }


class RuntimeMetrics:
    """In-process counters and timers for searches, twirls and CLI runs."""

    def __init__(self) -> None:
        self._lock = Lock()
        self._started_at = int(time.time())
        self._counters: Counter[str] = Counter()
        self._timers: defaultdict[str, TimerStats] = defaultdict(TimerStats)

    def record_counter(self, *, name: str, value: int = 1) -> None:
        metric = _metric_name(name)
        if metric:
            with self._lock:
                self._counters[metric] += int(value)

    def record_timing(self, *, name: str, duration_ms: int | float) -> None:
        metric = _metric_name(name)
        if metric:
            with self._lock:
                self._timers[metric].add(duration_ms)

    def counter(self, name: str) -> int:
        with self._lock:
            return int(self._counters.get(_metric_name(name), 0))

    def snapshot(self) -> dict[str, Any]:
        with self._lock:
            return {
                "started_at": self._started_at,
                "uptime_seconds": max(0, int(time.time()) - self._started_at),
                "counters": dict(sorted(self._counters.items())),
                "timers": {key: self._timers[key].as_dict() for key in sorted(self._timers)},
            }

    def reset(self) -> None:
        with self._lock:
            self._counters.clear()
            self._timers.clear()


_RUNTIME_METRICS = RuntimeMetrics()


def get_runtime_metrics_snapshot() -> dict[str, Any]:
    return _RUNTIME_METRICS.snapshot()


def reset_runtime_metrics() -> None:
    _RUNTIME_METRICS.reset()


def record_counter_metric(*, name: str, value: int = 1) -> None:
    if METRICS_ENABLED:
        _RUNTIME_METRICS.record_counter(name=name, value=value)


def record_timing_metric(*, name: str, duration_ms: int | float) -> None:
    if METRICS_ENABLED:
        _RUNTIME_METRICS.record_timing(name=name, duration_ms=duration_ms)


@contextmanager
def timed(name: str) -> Iterator[None]:
    """Record the wall time of the block under ``name``, also when it raises."""
    started = time.perf_counter()
    try:
        yield
    finally:
        record_timing_metric(name=name, duration_ms=(time.perf_counter() - started) * 1000.0)
