"""Forecast error metrics and the rolling one-day-ahead backtest.

The backtest never reads the future: the forecast for day t is a pure
function of the closes strictly before t. Training grows by one day per step
(expanding window) unless a fixed training length truncates it to the most
recent k closes.
"""
from __future__ import annotations

import datetime as dt
from bisect import bisect_left
from dataclasses import dataclass
from math import fsum, sqrt
from typing import Sequence

from .forecasting import ForecastConfig, forecast_percent, price_from_percent
from .matching import DegreeStats, QuerySuffix, SymbolSequence, build_index
from .series import PriceSeries

__all__ = [
    "EvalPair",
    "WindowSpec",
    "BacktestReport",
    "rmse",
    "mape",
    "backtest",
]


@dataclass(frozen=True)
class EvalPair:
    date: dt.date
    forecast_price: float
    actual_price: float


@dataclass(frozen=True)
class WindowSpec:
    """Which days to forecast and how much history each forecast may use.

    ``first``/``last`` are 0-based indices into the price series (inclusive);
    ``days`` instead selects the trailing n days and excludes explicit
    indices. ``train_length`` caps training at the most recent k closes
    (k >= 2); by default training expands over the whole past.
    """

    first: int | None = None
    last: int | None = None
    days: int | None = None
    train_length: int | None = None

    def __post_init__(self) -> None:
        if self.days is not None and (self.first is not None or self.last is not None):
            raise ValueError("give either days or first/last, not both")
        if self.days is not None and self.days < 1:
            raise ValueError("days must be >= 1")
        if self.train_length is not None and self.train_length < 2:
            raise ValueError("train_length must be >= 2 (one change needs two closes)")

    def resolve(self, n_points: int) -> tuple[int, int]:
        """Concrete (first, last) forecast indices for a series of n_points.

        The earliest forecastable day is index 2: it is the first day with a
        fuzzifiable history (two prior closes, one change) behind it.
        """
        if self.days is not None:
            first = n_points - self.days
        else:
            first = 2 if self.first is None else self.first
        last = n_points - 1 if self.last is None else self.last
        if first < 2 or last > n_points - 1 or first > last:
            raise ValueError(
                f"window [{first}, {last}] is empty or exceeds the history "
                f"({n_points} points; forecasts start at index 2)"
            )
        return first, last


@dataclass(frozen=True)
class BacktestReport:
    pairs: tuple[EvalPair, ...]
    rmse: float
    mape: float
    n_days: int
    fallback_days: int
    avg_match_len: float


def rmse(pairs: Sequence[EvalPair]) -> float:
    """Root mean square error; scales with the price level."""
    if not pairs:
        raise ValueError("rmse needs at least one pair")
    return sqrt(fsum((p.forecast_price - p.actual_price) ** 2 for p in pairs) / len(pairs))


def mape(pairs: Sequence[EvalPair]) -> float:
    """Mean absolute percentage error; invariant under price rescaling."""
    if not pairs:
        raise ValueError("mape needs at least one pair")
    for p in pairs:
        if not (p.actual_price > 0):
            raise ValueError(f"actual price {p.actual_price!r} on {p.date} is not positive")
    return (
        fsum(abs(p.forecast_price - p.actual_price) / p.actual_price for p in pairs)
        / len(pairs)
        * 100.0
    )


def _window_degree_stats(
    symbols: Sequence[int],
    positions: dict[int, list[int]],
    lo: int,
    hi: int,
    max_degree: int,
) -> list[DegreeStats]:
    """Degree stats for training text symbols[lo..hi] with the query being
    that text's own tail.

    Candidate occurrences are tracked by their end index j; an occurrence
    qualifies when it starts inside the window and its successor j+1 is
    still inside it. Each deeper degree only has to check the one symbol it
    prepends. Matches the rebuild-per-day semantics exactly; cross-checked
    against the naive scanner in the test suite.
    """
    q_len = min(max_degree, hi - lo + 1)
    plist = positions.get(symbols[hi], [])
    # end indices j in [lo, hi-1]: the occurrence ending at hi is the query
    # itself and has no successor inside the window
    cand = plist[bisect_left(plist, lo) : bisect_left(plist, hi)]
    out: list[DegreeStats] = []
    for degree in range(1, q_len + 1):
        if degree > 1:
            need = symbols[hi - degree + 1]
            back = degree - 1
            cand = [j for j in cand if j - back >= lo and symbols[j - back] == need]
        if not cand:
            break
        counts: dict[int, int] = {}
        for j in cand:
            succ = symbols[j + 1]
            counts[succ] = counts.get(succ, 0) + 1
        out.append(DegreeStats(degree, counts, len(cand)))
    return out


def backtest(
    series: PriceSeries,
    cfg: ForecastConfig,
    window: WindowSpec = WindowSpec(),
    engine: str = "indexed",
) -> BacktestReport:
    """Rolling one-day-ahead backtest.

    For each forecast day t: fuzzify the training closes (everything before
    t, optionally truncated to train_length), match the trailing suffix,
    forecast the close of day t off the close of day t-1, and record the
    (forecast, actual) pair. Fallback days predict the previous close.

    ``engine`` selects the matcher: "indexed" uses an incrementally
    maintained position index, "rebuild" rebuilds the automaton index for
    every day. Both produce identical reports; "rebuild" exists as the
    plainly-correct reference.
    """
    if engine not in ("indexed", "rebuild"):
        raise ValueError(f"unknown engine {engine!r}")
    n_points = len(series)
    first, last = window.resolve(n_points)
    closes = series.closes
    dates = series.dates
    for i in range(last + 1):
        if not (closes[i] > 0):
            raise ValueError(f"non-positive close {closes[i]!r} on {dates[i]}")

    part = cfg.partition
    # symbols[i] labels the change into day i (needs closes i-1 and i), so
    # the slot at index 0 is unused padding
    symbols = [0] * (last + 1)
    positions: dict[int, list[int]] = {}
    for i in range(1, last + 1):
        change = (closes[i] / closes[i - 1] - 1.0) * 100.0
        sym = part.interval_index(change)
        symbols[i] = sym
        positions.setdefault(sym, []).append(i)

    pairs: list[EvalPair] = []
    fallback_days = 0
    depth_total = 0
    for t in range(first, last + 1):
        train_start = 0 if window.train_length is None else max(0, t - window.train_length)
        lo, hi = train_start + 1, t - 1
        if engine == "indexed":
            stats = _window_degree_stats(symbols, positions, lo, hi, cfg.max_degree)
        else:
            text = tuple(symbols[lo : hi + 1])
            q_len = min(cfg.max_degree, len(text))
            result = build_index(SymbolSequence(text, part.n)).match_degrees(
                QuerySuffix(text[len(text) - q_len :], q_len)
            )
            stats = list(result.stats)

        prev = closes[t - 1]
        if stats:
            prices = [
                price_from_percent(prev, forecast_percent(st, part), cfg.percent_scaling)
                for st in stats
            ]
            final = fsum(prices) / len(prices)
            depth_total += stats[-1].degree
        else:
            final = prev
            fallback_days += 1
        pairs.append(EvalPair(dates[t], final, closes[t]))

    report_pairs = tuple(pairs)
    return BacktestReport(
        pairs=report_pairs,
        rmse=rmse(report_pairs),
        mape=mape(report_pairs),
        n_days=len(report_pairs),
        fallback_days=fallback_days,
        avg_match_len=depth_total / len(report_pairs),
    )
