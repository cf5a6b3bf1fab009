"""Turn successor tallies into a next-day price forecast.

Per matched degree the forecast percent is the count-weighted average of the
successor intervals' midpoints; the percent maps to a price off the previous
close; the final forecast is the plain mean of the per-degree prices. With no
degree-1 match at all, the forecast falls back to the previous price.

Two percent-to-price scalings exist:

* ``unit-consistent`` (default): price = prev * (1 + pct / 100), i.e. the
  percent is applied as an actual percentage.
* ``table3-compat``: price = prev * (1 + pct), a compatibility mode that
  applies the percent value as a raw multiplier gain.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import fsum
from typing import Sequence

from .matching import (
    DegreeStats,
    Matcher,
    QuerySuffix,
    SymbolSequence,
    match_degrees,
)
from .partition import FuzzySeries, UniversePartition

__all__ = [
    "UNIT_CONSISTENT",
    "TABLE3_COMPAT",
    "SCALING_MODES",
    "ForecastConfig",
    "DegreeForecast",
    "Forecast",
    "forecast_percent",
    "price_from_percent",
    "aggregate",
    "forecast_next",
]

UNIT_CONSISTENT = "unit-consistent"
TABLE3_COMPAT = "table3-compat"
SCALING_MODES = (UNIT_CONSISTENT, TABLE3_COMPAT)

DEFAULT_MAX_DEGREE = 20  # roughly one trading month of history


@dataclass(frozen=True)
class ForecastConfig:
    partition: UniversePartition
    max_degree: int = DEFAULT_MAX_DEGREE
    percent_scaling: str = UNIT_CONSISTENT

    def __post_init__(self) -> None:
        if self.max_degree < 1:
            raise ValueError("max_degree must be >= 1")
        if self.percent_scaling not in SCALING_MODES:
            raise ValueError(
                f"percent_scaling must be one of {SCALING_MODES}, got {self.percent_scaling!r}"
            )


@dataclass(frozen=True)
class DegreeForecast:
    degree: int
    forecast_percent: float
    forecast_price: float


@dataclass(frozen=True)
class Forecast:
    per_degree: tuple[DegreeForecast, ...]
    final_price: float
    fallback_used: bool

    @property
    def depth(self) -> int:
        return self.per_degree[-1].degree if self.per_degree else 0


def forecast_percent(stats: DegreeStats, partition: UniversePartition) -> float:
    """Count-weighted average of successor-interval midpoints, in percent.

    Always a convex combination of midpoints, so the result stays inside
    [d_min, d_max]. Raises ValueError on an empty tally.
    """
    if stats.total < 1:
        raise ValueError("cannot forecast from an empty successor tally")
    weighted = fsum(
        count * partition.midpoint(symbol)
        for symbol, count in stats.successor_counts.items()
    )
    return weighted / stats.total


def price_from_percent(
    previous_price: float, pct: float, mode: str = UNIT_CONSISTENT
) -> float:
    """Map a forecast percent to a price off the previous close."""
    if not (previous_price > 0):
        raise ValueError("previous price must be positive")
    if mode == UNIT_CONSISTENT:
        price = previous_price * (1.0 + pct / 100.0)
    elif mode == TABLE3_COMPAT:
        price = previous_price * (1.0 + pct)
    else:
        raise ValueError(f"unknown percent scaling {mode!r}")
    if not (price > 0):
        raise ValueError(f"forecast price {price!r} is not positive")
    return price


def aggregate(
    per_degree_prices: Sequence[float],
    previous_price: float,
    per_degree: tuple[DegreeForecast, ...] = (),
) -> Forecast:
    """Mean of the per-degree prices; previous price when there are none."""
    if per_degree_prices:
        final = fsum(per_degree_prices) / len(per_degree_prices)
        return Forecast(tuple(per_degree), final, False)
    return Forecast((), previous_price, True)


def forecast_next(
    history: FuzzySeries,
    previous_price: float,
    cfg: ForecastConfig,
    matcher: Matcher | None = None,
) -> Forecast:
    """One-day-ahead forecast from a fuzzified history.

    The query suffix is the last min(max_degree, len(history)) symbols; the
    whole history doubles as the training text. ``matcher`` defaults to the
    indexed implementation and exists so callers can swap in the naive oracle
    or a pre-built index.
    """
    if not history.symbols:
        raise ValueError("history is empty")
    if not (previous_price > 0):
        raise ValueError("previous price must be positive")
    if history.partition != cfg.partition:
        raise ValueError("history was fuzzified with a different partition")
    matcher = matcher if matcher is not None else match_degrees
    q_len = min(cfg.max_degree, len(history.symbols))
    training = SymbolSequence(history.symbols, cfg.partition.n)
    query = QuerySuffix(history.symbols[len(history.symbols) - q_len :], q_len)
    result = matcher(training, query)

    rows: list[DegreeForecast] = []
    prices: list[float] = []
    for stats in result.stats:
        pct = forecast_percent(stats, cfg.partition)
        price = price_from_percent(previous_price, pct, cfg.percent_scaling)
        rows.append(DegreeForecast(stats.degree, pct, price))
        prices.append(price)
    return aggregate(prices, previous_price, tuple(rows))
