"""Equal-width partition of the change-extent range and crisp fuzzification.

The range [d_min, d_max] is split into n intervals, labelled 1..n. Interval i
covers [lo_i, hi_i) except the last one, which is closed at d_max so the top
boundary maps somewhere. Values outside the range are clamped to the nearest
edge interval and counted, never rejected.
"""
from __future__ import annotations

import bisect
import datetime as dt
from dataclasses import dataclass
from functools import cached_property

from .series import ReturnSeries

__all__ = [
    "UniversePartition",
    "FuzzySymbol",
    "FuzzySeries",
    "make_partition",
    "interval_of",
    "fuzzify",
    "MIN_INTERVALS",
    "MAX_INTERVALS",
]

MIN_INTERVALS = 2
MAX_INTERVALS = 35


@dataclass(frozen=True)
class UniversePartition:
    """n equal-width intervals over [d_min, d_max].

    Defaults cover daily percent moves on an exchange with a +/-7% limit,
    but any finite range works (the absolute-price baseline reuses this
    type with price bounds).
    """

    d_min: float = -7.0
    d_max: float = 7.0
    n: int = 7

    def __post_init__(self) -> None:
        object.__setattr__(self, "d_min", float(self.d_min))
        object.__setattr__(self, "d_max", float(self.d_max))
        if not self.d_min < self.d_max:
            raise ValueError(f"d_min must be below d_max, got [{self.d_min}, {self.d_max}]")
        if not MIN_INTERVALS <= self.n <= MAX_INTERVALS:
            raise ValueError(
                f"interval count must be in [{MIN_INTERVALS}, {MAX_INTERVALS}], got {self.n}"
            )

    @property
    def width(self) -> float:
        return (self.d_max - self.d_min) / self.n

    @cached_property
    def bounds(self) -> tuple[float, ...]:
        """n+1 boundary values; the last one is pinned to d_max exactly."""
        span = self.d_max - self.d_min
        inner = [self.d_min + (k / self.n) * span for k in range(self.n)]
        return tuple(inner) + (self.d_max,)

    @cached_property
    def midpoints(self) -> tuple[float, ...]:
        span = self.d_max - self.d_min
        return tuple(self.d_min + ((i - 0.5) / self.n) * span for i in range(1, self.n + 1))

    def interval_bounds(self, i: int) -> tuple[float, float]:
        self._check_index(i)
        return self.bounds[i - 1], self.bounds[i]

    def midpoint(self, i: int) -> float:
        self._check_index(i)
        return self.midpoints[i - 1]

    def interval_index(self, change: float) -> int:
        """1-based index of the interval containing ``change`` after clamping
        into [d_min, d_max]."""
        if change <= self.d_min:
            return 1
        if change >= self.d_max:
            return self.n
        return bisect.bisect_right(self.bounds, change)

    def is_clamped(self, change: float) -> bool:
        return change < self.d_min or change > self.d_max

    def _check_index(self, i: int) -> None:
        if not 1 <= i <= self.n:
            raise ValueError(f"interval index {i} out of range 1..{self.n}")


@dataclass(frozen=True)
class FuzzySymbol:
    """Label of one partition interval (the i of A_i)."""

    index: int


@dataclass(frozen=True)
class FuzzySeries:
    """Interval labels for a return series, in order, plus how many inputs
    had to be clamped into range."""

    partition: UniversePartition
    dates: tuple[dt.date, ...]
    symbols: tuple[int, ...]
    clamp_count: int

    def __len__(self) -> int:
        return len(self.symbols)


def make_partition(d_min: float, d_max: float, n: int) -> UniversePartition:
    return UniversePartition(d_min, d_max, n)


def interval_of(partition: UniversePartition, change: float) -> FuzzySymbol:
    return FuzzySymbol(partition.interval_index(change))


def fuzzify(partition: UniversePartition, returns: ReturnSeries) -> FuzzySeries:
    """Element-wise interval assignment, preserving order and dates."""
    symbols = []
    clamped = 0
    for entry in returns.entries:
        symbols.append(partition.interval_index(entry.change))
        if partition.is_clamped(entry.change):
            clamped += 1
    return FuzzySeries(partition, returns.dates, tuple(symbols), clamped)
