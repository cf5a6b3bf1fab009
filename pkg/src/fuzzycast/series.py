"""Price series primitives: daily closes, percent changes, synthetic fixtures.

Everything here is an immutable value type; operations are pure functions.
Change extents are kept at full float precision, in units of percent
(5.58 means +5.58%). Display rounding is left to callers.
"""
from __future__ import annotations

import datetime as dt
import itertools
import math
import random
from dataclasses import dataclass

__all__ = [
    "PricePoint",
    "PriceSeries",
    "ReturnPoint",
    "ReturnSeries",
    "Finding",
    "ValidationReport",
    "percent_changes",
    "validate_series",
    "synth_scenario",
    "random_walk",
    "SCENARIO_VARIANTS",
]


@dataclass(frozen=True)
class PricePoint:
    """One trading day: calendar date and closing price."""

    date: dt.date
    close: float


@dataclass(frozen=True)
class PriceSeries:
    """Ordered daily observations. Container is permissive; operations that
    need strictly increasing dates or positive closes enforce it themselves,
    so that :func:`validate_series` can still report on dirty data."""

    points: tuple[PricePoint, ...]

    def __len__(self) -> int:
        return len(self.points)

    @property
    def dates(self) -> tuple[dt.date, ...]:
        return tuple(p.date for p in self.points)

    @property
    def closes(self) -> tuple[float, ...]:
        return tuple(p.close for p in self.points)

    def truncated(self, n_points: int) -> "PriceSeries":
        """First ``n_points`` observations (used for lookahead checks)."""
        return PriceSeries(self.points[:n_points])

    @classmethod
    def from_closes(
        cls, closes, start: dt.date = dt.date(2014, 7, 1)
    ) -> "PriceSeries":
        """Build a series from raw closes on consecutive calendar days."""
        points = tuple(
            PricePoint(start + dt.timedelta(days=i), float(c))
            for i, c in enumerate(closes)
        )
        return cls(points)


@dataclass(frozen=True)
class ReturnPoint:
    """Day-over-day change extent in percent, dated by the later day."""

    date: dt.date
    change: float


@dataclass(frozen=True)
class ReturnSeries:
    """Change extents aligned to the price series: entry i describes the move
    into price point i+1, so the series is one element shorter."""

    entries: tuple[ReturnPoint, ...]

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def dates(self) -> tuple[dt.date, ...]:
        return tuple(e.date for e in self.entries)

    @property
    def changes(self) -> tuple[float, ...]:
        return tuple(e.change for e in self.entries)


def percent_changes(series: PriceSeries) -> ReturnSeries:
    """Change extent per day: (today / yesterday - 1) * 100.

    Raises ValueError if the series has fewer than two points or any
    non-positive close.
    """
    if len(series) < 2:
        raise ValueError("need at least two price points to compute changes")
    for p in series.points:
        if not (p.close > 0):
            raise ValueError(f"non-positive close {p.close!r} on {p.date}")
    entries = tuple(
        ReturnPoint(b.date, (b.close / a.close - 1.0) * 100.0)
        for a, b in itertools.pairwise(series.points)
    )
    return ReturnSeries(entries)


@dataclass(frozen=True)
class Finding:
    kind: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    """Report-only data quality summary; never raises."""

    findings: tuple[Finding, ...]
    out_of_range_changes: int

    @property
    def ok(self) -> bool:
        return not self.findings


def validate_series(
    series: PriceSeries, d_min: float = -7.0, d_max: float = 7.0
) -> ValidationReport:
    """Report duplicate or non-monotone dates, non-positive closes, and how
    many change extents fall outside [d_min, d_max] (those get clamped when
    fuzzified)."""
    findings: list[Finding] = []
    seen: set[dt.date] = set()
    for p in series.points:
        if p.date in seen:
            findings.append(Finding("duplicate-date", f"date {p.date} appears more than once"))
        seen.add(p.date)
        if not (p.close > 0):
            findings.append(Finding("non-positive-close", f"close {p.close!r} on {p.date}"))
    for a, b in itertools.pairwise(series.points):
        if b.date < a.date:
            findings.append(
                Finding("non-monotone-date", f"date {b.date} follows {a.date}")
            )
    out_of_range = 0
    for a, b in itertools.pairwise(series.points):
        if a.close > 0 and b.close > 0:
            change = (b.close / a.close - 1.0) * 100.0
            if change < d_min or change > d_max:
                out_of_range += 1
    if out_of_range:
        findings.append(
            Finding(
                "out-of-range-change",
                f"{out_of_range} change extent(s) outside [{d_min}, {d_max}] percent",
            )
        )
    return ValidationReport(tuple(findings), out_of_range)


# Hand-drawn 20-day scenarios used to demonstrate why forecasting in the
# absolute price domain breaks on fresh highs/lows: 15 training days followed
# by 5 days that either extend the trend or reverse it. The falling variants
# are the rising ones reflected around a constant offset, which keeps every
# close positive and makes the mirror an exact involution.
_RISE_TRAIN = (1.0, 2.0, 4.0, 3.0, 4.0, 6.0, 5.0, 7.0, 8.0, 10.0, 9.0, 12.0, 13.0, 13.0, 15.0)
_RISE_CONT = (16.0, 18.0, 17.0, 18.0, 19.0)
# reversal continuation: the rising tail reflected around the last training close
_FALL_CONT = tuple(2 * _RISE_TRAIN[-1] - c for c in _RISE_CONT)
_MIRROR_OFFSET = 20.0

SCENARIO_VARIANTS = {
    "fig1": ("rise-then-rise", "rise-then-fall"),
    "fig2": ("fall-then-fall", "fall-then-rise"),
}

_SCENARIOS: dict[tuple[str, str], tuple[float, ...]] = {
    ("fig1", "rise-then-rise"): _RISE_TRAIN + _RISE_CONT,
    ("fig1", "rise-then-fall"): _RISE_TRAIN + _FALL_CONT,
    ("fig2", "fall-then-fall"): tuple(
        _MIRROR_OFFSET - c for c in _RISE_TRAIN + _RISE_CONT
    ),
    ("fig2", "fall-then-rise"): tuple(
        _MIRROR_OFFSET - c for c in _RISE_TRAIN + _FALL_CONT
    ),
}


def synth_scenario(name: str, variant: str) -> PriceSeries:
    """Deterministic 20-day fixture for one of the four trend scenarios.

    ``name`` picks the family ("fig1" rises first, "fig2" falls first) and
    ``variant`` the continuation after day 15. Unknown combinations raise
    ValueError.
    """
    key = (name, variant)
    if key not in _SCENARIOS:
        valid = ", ".join(f"({n}, {v})" for n, vs in SCENARIO_VARIANTS.items() for v in vs)
        raise ValueError(f"unknown scenario {key!r}; expected one of {valid}")
    return PriceSeries.from_closes(_SCENARIOS[key])


def random_walk(
    days: int,
    seed: int,
    start: float = 100.0,
    drift: float = 0.0,
    sigma: float = 1.5,
    d_min: float = -7.0,
    d_max: float = 7.0,
    start_date: dt.date = dt.date(2014, 7, 1),
) -> PriceSeries:
    """Seeded geometric random walk with daily percent steps clamped to
    [d_min, d_max], mimicking an exchange with a daily move limit."""
    if days < 1:
        raise ValueError("days must be >= 1")
    if not (start > 0):
        raise ValueError("start price must be positive")
    rng = random.Random(seed)
    closes = [start]
    for _ in range(days - 1):
        step = min(max(rng.gauss(drift, sigma), d_min), d_max)
        closes.append(closes[-1] * (1.0 + step / 100.0))
    assert all(c > 0 for c in closes) and all(map(math.isfinite, closes))
    return PriceSeries.from_closes(closes, start=start_date)
