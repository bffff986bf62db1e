"""Logical time: integer epochs advanced only by the scenario harness."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True, order=True)
class LogicalTime:
    epoch: int

    def __post_init__(self):
        if self.epoch < 0:
            raise ValueError("epoch must be non-negative")

    def next(self) -> "LogicalTime":
        return LogicalTime(self.epoch + 1)

    def gap(self, earlier: "LogicalTime") -> int:
        return self.epoch - earlier.epoch


class LogicalClock:
    """Monotone counter owned by the harness; everything else reads it."""

    def __init__(self, start: int = 0):
        self._now = LogicalTime(start)

    @property
    def now(self) -> LogicalTime:
        return self._now

    def tick(self) -> LogicalTime:
        self._now = self._now.next()
        return self._now
