"""Parameter sweeps and the absolute-price-domain baseline.

The interval sweep backtests the same series under different interval counts;
the training-length sweep varies how much history each forecast may use while
holding the forecast window fixed. The baseline is a deliberately minimal
first-order forecaster over absolute prices whose partition is pinned to the
training min/max; its forecasts are structurally confined to the span of its
interval midpoints, which is exactly the failure the percent-change method
avoids.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import fsum
from typing import Iterable, Sequence

from .evaluation import BacktestReport, EvalPair, WindowSpec, backtest
from .forecasting import UNIT_CONSISTENT, ForecastConfig
from .partition import UniversePartition
from .series import PriceSeries

__all__ = [
    "SweepRow",
    "SweepResult",
    "BaselineRun",
    "sweep_intervals",
    "sweep_training_length",
    "baseline_absolute_fts",
]


@dataclass(frozen=True)
class SweepRow:
    param: int
    rmse: float
    mape: float
    avg_match_len: float


@dataclass(frozen=True)
class SweepResult:
    kind: str  # "interval-count" | "training-length"
    rows: tuple[SweepRow, ...]


def _row(param: int, report: BacktestReport) -> SweepRow:
    return SweepRow(param, report.rmse, report.mape, report.avg_match_len)


def sweep_intervals(
    series: PriceSeries,
    n_values: Iterable[int] = range(2, 32),
    *,
    d_min: float = -7.0,
    d_max: float = 7.0,
    max_degree: int = 20,
    percent_scaling: str = UNIT_CONSISTENT,
    window: WindowSpec = WindowSpec(),
) -> SweepResult:
    """One backtest per interval count, in the order given."""
    rows = []
    for n in n_values:
        cfg = ForecastConfig(UniversePartition(d_min, d_max, n), max_degree, percent_scaling)
        rows.append(_row(n, backtest(series, cfg, window)))
    if not rows:
        raise ValueError("interval sweep needs at least one interval count")
    return SweepResult("interval-count", tuple(rows))


def sweep_training_length(
    series: PriceSeries,
    lengths: Sequence[int],
    *,
    n: int = 3,
    d_min: float = -7.0,
    d_max: float = 7.0,
    max_degree: int = 20,
    percent_scaling: str = UNIT_CONSISTENT,
    window: WindowSpec = WindowSpec(),
) -> SweepResult:
    """One backtest per training length over one fixed forecast window.

    A length k means each forecast sees at most the k most recent closes;
    k equal to the series length reproduces the expanding-window backtest.
    Duplicate lengths produce duplicate rows.
    """
    if not lengths:
        raise ValueError("training-length sweep needs at least one length")
    first, last = WindowSpec(window.first, window.last, window.days).resolve(len(series))
    cfg = ForecastConfig(UniversePartition(d_min, d_max, n), max_degree, percent_scaling)
    rows = []
    for k in lengths:
        if k < 2 or k > len(series):
            raise ValueError(
                f"training length {k} infeasible for a series of {len(series)} points"
            )
        report = backtest(series, cfg, WindowSpec(first=first, last=last, train_length=k))
        rows.append(_row(k, report))
    return SweepResult("training-length", tuple(rows))


@dataclass(frozen=True)
class BaselineRun:
    """Absolute-domain baseline output: the price partition it used and the
    per-day forecast/actual pairs."""

    partition: UniversePartition
    pairs: tuple[EvalPair, ...]
    fallback_days: int

    @property
    def midpoint_span(self) -> tuple[float, float]:
        return self.partition.midpoints[0], self.partition.midpoints[-1]


def baseline_absolute_fts(
    series: PriceSeries,
    n: int,
    window: WindowSpec = WindowSpec(),
) -> BaselineRun:
    """First-order forecaster over absolute prices.

    Training closes (everything before the first forecast day) fix the
    partition bounds to [min, max] and fill a first-order transition table
    interval -> successor intervals. Each forecast day maps the previous
    close to its (clamped) interval and predicts the count-weighted mean of
    the successor midpoints; an interval never seen on the left-hand side
    predicts the previous close clamped into the midpoint span. Every
    forecast therefore stays within [lowest midpoint, highest midpoint].
    """
    first, last = window.resolve(len(series))
    closes = series.closes
    dates = series.dates
    train = closes[:first]
    for i, c in enumerate(train):
        if not (c > 0):
            raise ValueError(f"non-positive close {c!r} on {dates[i]}")
    lo, hi = min(train), max(train)
    if lo == hi:
        raise ValueError("constant training prices give a degenerate universe")
    part = UniversePartition(lo, hi, n)

    transitions: dict[int, dict[int, int]] = {}
    for a, b in zip(train, train[1:]):
        lhs = part.interval_index(a)
        rhs = part.interval_index(b)
        bucket = transitions.setdefault(lhs, {})
        bucket[rhs] = bucket.get(rhs, 0) + 1

    lo_mid, hi_mid = part.midpoints[0], part.midpoints[-1]
    pairs = []
    fallback_days = 0
    for t in range(first, last + 1):
        prev = closes[t - 1]
        successors = transitions.get(part.interval_index(prev))
        if successors:
            weighted = fsum(cnt * part.midpoint(s) for s, cnt in successors.items())
            forecast = weighted / sum(successors.values())
        else:
            forecast = min(max(prev, lo_mid), hi_mid)
            fallback_days += 1
        pairs.append(EvalPair(dates[t], forecast, closes[t]))
    return BaselineRun(part, tuple(pairs), fallback_days)
