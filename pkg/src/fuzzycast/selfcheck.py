"""Built-in golden checks behind the ``selftest`` command.

Each check exercises one stage of the pipeline against hand-verified
expected values: the seven-interval mapping of known change extents, the
midpoint-weighted percent for reference successor tallies, the worked
suffix-match example, the per-degree price table with its 129.55 average,
and the RMSE/MAPE scale contrast.
"""
from __future__ import annotations

import datetime as dt
import math
from dataclasses import dataclass

from .evaluation import EvalPair, mape, rmse
from .forecasting import TABLE3_COMPAT, aggregate, forecast_percent, price_from_percent
from .matching import DegreeStats, QuerySuffix, SymbolSequence, match_degrees, match_degrees_naive
from .partition import UniversePartition, fuzzify
from .series import ReturnPoint, ReturnSeries

__all__ = ["CheckResult", "run_selfcheck", "truncate3"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def truncate3(value: float) -> float:
    """Truncate toward zero at three decimals, the display convention the
    reference percent columns follow (0.3188... prints as 0.318)."""
    return math.trunc(value * 1000.0) / 1000.0


def _close(a: float, b: float, tol: float) -> bool:
    return abs(a - b) <= tol


def _check_interval_mapping() -> CheckResult:
    part = UniversePartition(-7.0, 7.0, 7)
    changes = (5.58, 0.65, -1.31, 1.20, -0.55, 1.02)
    expected = (7, 4, 3, 5, 4, 5)
    start = dt.date(2014, 12, 26)
    returns = ReturnSeries(
        tuple(ReturnPoint(start + dt.timedelta(days=i), c) for i, c in enumerate(changes))
    )
    got = fuzzify(part, returns).symbols
    return CheckResult(
        "seven-interval-mapping",
        got == expected,
        f"changes {changes} -> intervals {got}, expected {expected}",
    )


# Successor tallies with known weighted-percent results. The expected values
# are the exact weighted means; their three-decimal truncations are the
# reference display forms.
_PERCENT_ROWS = (
    ({1: 30, 2: 70, 3: 150, 4: 250, 5: 100, 6: 80, 7: 50}, 60.0 / 730.0, 0.082),
    ({1: 25, 2: 50, 3: 100, 4: 200, 5: 80, 6: 60, 7: 40}, 90.0 / 555.0, 0.162),
    ({1: 10, 2: 20, 3: 60, 4: 150, 5: 50, 6: 30, 7: 25}, 110.0 / 345.0, 0.318),
    ({3: 10, 4: 100, 5: 20, 6: 10, 7: 5}, 90.0 / 145.0, 0.620),
)


def _check_weighted_percent() -> CheckResult:
    part = UniversePartition(-7.0, 7.0, 7)
    problems = []
    shown = []
    for counts, exact, printed in _PERCENT_ROWS:
        stats = DegreeStats(1, counts, sum(counts.values()))
        got = forecast_percent(stats, part)
        shown.append(f"{got:.6f}")
        if not _close(got, exact, 1e-12):
            problems.append(f"expected {exact!r}, got {got!r}")
        if truncate3(got) != printed:
            problems.append(f"truncated {truncate3(got)} != printed {printed}")
    detail = "; ".join(problems) if problems else f"percents {', '.join(shown)}"
    return CheckResult("midpoint-weighted-percent", not problems, detail)


def _check_suffix_match() -> CheckResult:
    training = SymbolSequence((1, 3, 2, 2, 1, 3, 1), alphabet_size=3)
    query = QuerySuffix((2, 1, 3), max_degree=3)
    expected = ({2: 1, 1: 1}, {2: 1, 1: 1}, {1: 1})
    ok = True
    details = []
    for label, fn in (("indexed", match_degrees), ("naive", match_degrees_naive)):
        result = fn(training, query)
        got = tuple(dict(s.successor_counts) for s in result.stats)
        if got != expected or result.depth != 3:
            ok = False
        details.append(f"{label}: {got}")
    return CheckResult(
        "repeated-suffix-successors",
        ok,
        "; ".join(details) + f", expected {expected}",
    )


def _check_price_aggregation() -> CheckResult:
    percents = (0.082, 0.162, 0.318, 0.620)
    expected_prices = (108.2, 116.2, 131.8, 162.0)
    prices = [price_from_percent(100.0, p, TABLE3_COMPAT) for p in percents]
    final = aggregate(prices, 100.0).final_price
    ok = all(_close(g, e, 0.005) for g, e in zip(prices, expected_prices))
    ok = ok and _close(final, 129.55, 0.005)
    return CheckResult(
        "per-degree-price-average",
        ok,
        f"prices {[round(p, 4) for p in prices]}, average {final:.4f} (expected 129.55)",
    )


def _check_metric_scale() -> CheckResult:
    day = dt.date(2014, 7, 2)
    small = [EvalPair(day, 1020.0, 1010.0)]
    large = [EvalPair(day, 10200.0, 10100.0)]
    ok = (
        rmse(small) == 10.0
        and rmse(large) == 100.0
        and _close(mape(small), 0.990, 0.001)
        and _close(mape(large), 0.990, 0.001)
    )
    return CheckResult(
        "rmse-mape-scale-contrast",
        ok,
        f"rmse {rmse(small)}/{rmse(large)}, mape {mape(small):.4f}%/{mape(large):.4f}%",
    )


def run_selfcheck() -> list[CheckResult]:
    """Run every golden check; never raises, failures are reported."""
    checks = (
        _check_interval_mapping,
        _check_weighted_percent,
        _check_suffix_match,
        _check_price_aggregation,
        _check_metric_scale,
    )
    results = []
    for check in checks:
        try:
            results.append(check())
        except Exception as exc:  # a crash is a failed check, not a crash of selftest
            results.append(CheckResult(check.__name__, False, f"raised {exc!r}"))
    return results
