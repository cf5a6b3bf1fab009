"""Acceptance gate: one test per shipped claim, each printing a PASS line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines. Golden values are asserted at their stated tolerances; two legacy
expected values that direct arithmetic contradicts are kept visible as
strict xfails right below the corrected assertions.
"""
from __future__ import annotations

import math
import random
import time

import pytest

from fuzzycast import (
    TABLE3_COMPAT,
    DegreeStats,
    ForecastConfig,
    QuerySuffix,
    SymbolSequence,
    UniversePartition,
    WindowSpec,
    aggregate,
    backtest,
    baseline_absolute_fts,
    fuzzify,
    match_degrees,
    match_degrees_naive,
    percent_changes,
    price_from_percent,
    random_walk,
    sweep_intervals,
    synth_scenario,
)
from fuzzycast.cli import cli_main
from fuzzycast.evaluation import EvalPair, mape, rmse
from fuzzycast.forecasting import forecast_percent
from fuzzycast.selfcheck import truncate3
from fuzzycast.series import ReturnPoint, ReturnSeries

import datetime as dt

PART7 = UniversePartition(-7.0, 7.0, 7)


def _ok(number: int, message: str) -> None:
    print(f"[acceptance {number:>2}] PASS: {message}")


def test_01_seven_interval_golden_mapping():
    changes = (5.58, 0.65, -1.31, 1.20, -0.55, 1.02)
    start = dt.date(2014, 12, 26)
    returns = ReturnSeries(
        tuple(ReturnPoint(start + dt.timedelta(days=i), c) for i, c in enumerate(changes))
    )
    assert fuzzify(PART7, returns).symbols == (7, 4, 3, 5, 4, 5)
    _ok(1, "six known changes map to intervals (7, 4, 3, 5, 4, 5) exactly")


_COUNT_ROWS = (
    ({1: 30, 2: 70, 3: 150, 4: 250, 5: 100, 6: 80, 7: 50}, 60.0 / 730.0, 0.082),
    ({1: 25, 2: 50, 3: 100, 4: 200, 5: 80, 6: 60, 7: 40}, 90.0 / 555.0, 0.162),
    ({1: 10, 2: 20, 3: 60, 4: 150, 5: 50, 6: 30, 7: 25}, 110.0 / 345.0, 0.318),
    ({3: 10, 4: 100, 5: 20, 6: 10, 7: 5}, 90.0 / 145.0, 0.620),
)


def _percent(counts):
    return forecast_percent(DegreeStats(1, dict(counts), sum(counts.values())), PART7)


def test_02_weighted_percent_goldens():
    got = [_percent(counts) for counts, _, _ in _COUNT_ROWS]

    # rows 1 and 2 sit within the stated +/-0.0005 of their display values
    assert abs(got[0] - 0.082) <= 0.0005
    assert abs(got[1] - 0.162) <= 0.0005

    # all four rows equal direct weighted-mean arithmetic to full precision,
    # and truncation at three decimals reproduces every display value
    # (the display convention truncates: 110/345 = 0.31884 -> 0.318,
    # 90/145 = 0.62069 -> 0.620; rounding would print 0.319 and 0.621)
    for value, (_, exact, printed) in zip(got, _COUNT_ROWS):
        assert value == pytest.approx(exact, abs=1e-12)
        assert truncate3(value) == printed

    _ok(
        2,
        "weighted percents 0.08219, 0.16216, 0.31884, 0.62069 truncate to the "
        "displayed 0.082/0.162/0.318/0.620 (see xfailed legacy bands below)",
    )


@pytest.mark.xfail(
    strict=True,
    reason=(
        "legacy band: 0.318 +/- 0.0005 presumes the display value was rounded; "
        "the exact weighted mean is 110/345 = 0.31884, and the display "
        "convention truncates, leaving it 0.00034 outside the band"
    ),
)
def test_02a_legacy_row3_band():
    assert abs(_percent(_COUNT_ROWS[2][0]) - 0.318) <= 0.0005


@pytest.mark.xfail(
    strict=True,
    reason=(
        "legacy expectation 0.6667 equals 90/135, i.e. the interval-3 count of "
        "10 was dropped from the denominator; the weighted mean over all "
        "counts is 90/145 = 0.62069, consistent with the displayed 0.620"
    ),
)
def test_02b_legacy_row4_recompute():
    assert abs(_percent(_COUNT_ROWS[3][0]) - 0.6667) <= 0.0005


def test_03_suffix_match_golden():
    training = SymbolSequence((1, 3, 2, 2, 1, 3, 1), alphabet_size=3)
    query = QuerySuffix((2, 1, 3), max_degree=3)
    expected = ({2: 1, 1: 1}, {2: 1, 1: 1}, {1: 1})
    for matcher in (match_degrees, match_degrees_naive):
        result = matcher(training, query)
        assert result.depth == 3
        assert tuple(dict(s.successor_counts) for s in result.stats) == expected
    _ok(3, "degree 1/2/3 successors are {2:1,1:1}, {2:1,1:1}, {1:1} on both matchers")


def test_04_compat_price_table_and_average():
    percents = (0.082, 0.162, 0.318, 0.620)
    expected = (108.2, 116.2, 131.8, 162.0)
    prices = [price_from_percent(100.0, p, TABLE3_COMPAT) for p in percents]
    for got, want in zip(prices, expected):
        assert abs(got - want) <= 0.005
    final = aggregate(prices, 100.0).final_price
    assert abs(final - 129.55) <= 0.005
    _ok(4, f"compat prices {expected} average to {final:.4f} (within 0.005 of 129.55)")


def test_05_metric_scale_contrast():
    day = dt.date(2014, 7, 2)
    small = [EvalPair(day, 1020.0, 1010.0)]
    large = [EvalPair(day, 10200.0, 10100.0)]
    assert rmse(small) == 10.0
    assert rmse(large) == 100.0
    assert abs(mape(small) - 0.990) <= 0.001
    assert abs(mape(large) - 0.990) <= 0.001
    _ok(5, "RMSE 10 vs 100 on the same 1% miss; MAPE 0.990% at both scales")


def test_06_indexed_matcher_equals_oracle_on_1000_cases():
    rng = random.Random(20140701)
    started = time.perf_counter()
    for case in range(1000):
        alphabet = rng.randint(2, 35)
        length = rng.randint(1, 500)
        text = tuple(rng.randint(1, alphabet) for _ in range(length))
        q_len = rng.randint(1, 20)
        query_syms = tuple(rng.randint(1, alphabet) for _ in range(q_len))
        if rng.random() < 0.25:
            # force shared suffixes so deep matches actually happen
            take = min(len(text), q_len)
            query_syms = query_syms[: q_len - take] + text[len(text) - take :]
        max_degree = rng.randint(1, q_len)
        training = SymbolSequence(text, alphabet)
        query = QuerySuffix(query_syms, max_degree)
        assert match_degrees(training, query) == match_degrees_naive(training, query)
    elapsed = time.perf_counter() - started
    assert elapsed < 10.0, f"equivalence run took {elapsed:.2f}s"
    _ok(6, f"1000 randomized cases agree with the naive oracle in {elapsed:.2f}s")


def test_07_absolute_domain_boundedness_vs_relative_escape():
    series = synth_scenario("fig1", "rise-then-rise")
    window = WindowSpec(first=15, last=19)
    day20_actual = series.closes[19]
    training_max = max(series.closes[:15])

    for n in (2, 3, 5, 7, 10, 14):
        run = baseline_absolute_fts(series, n, window)
        lo, hi = run.midpoint_span
        for p in run.pairs:
            assert lo <= p.forecast_price <= hi
            assert p.forecast_price < day20_actual

    report = backtest(series, ForecastConfig(PART7), window)
    best = max(p.forecast_price for p in report.pairs)
    assert best > training_max
    _ok(
        7,
        f"baseline forecasts stay inside the midpoint span (< {day20_actual}); "
        f"the percent-change method reaches {best:.3f} > training max {training_max}",
    )


def test_08_no_lookahead_on_100_seeded_series():
    cfg = ForecastConfig(UniversePartition(-7.0, 7.0, 5), max_degree=10)
    rng = random.Random(823)
    for seed in range(100):
        series = random_walk(days=30, seed=seed)
        full = backtest(series, cfg)
        t = rng.randint(3, len(series) - 2)
        trimmed = backtest(series.truncated(t + 1), cfg)
        assert trimmed.pairs == full.pairs[: t - 1]
    _ok(8, "truncating after day t never changes forecasts for days <= t (100 seeds)")


def test_09_interval_sweep_completes_fast_with_finite_rows(tmp_path):
    series = random_walk(days=200, seed=20140701)
    started = time.perf_counter()
    result = sweep_intervals(series, range(2, 32))
    elapsed = time.perf_counter() - started
    assert len(result.rows) == 30
    assert [r.param for r in result.rows] == list(range(2, 32))
    for row in result.rows:
        assert math.isfinite(row.rmse) and math.isfinite(row.mape)
        assert math.isfinite(row.avg_match_len) and row.avg_match_len >= 0.0
    assert elapsed < 5.0, f"interval sweep took {elapsed:.2f}s"

    # a user-supplied multi-year daily file must backtest end to end
    long_series = random_walk(days=1500, seed=99)
    csv_path = tmp_path / "daily.csv"
    csv_path.write_text(
        "date,close\n"
        + "".join(f"{p.date.isoformat()},{p.close!r}\n" for p in long_series.points)
    )
    assert cli_main(["backtest", "--input", str(csv_path), "--output", str(tmp_path / "r.csv")]) == 0
    _ok(9, f"30 finite sweep rows in {elapsed:.2f}s; 1500-day backtest runs end to end")


def test_10_cli_selftest_exits_zero(capsys):
    code = cli_main(["selftest"])
    out = capsys.readouterr().out
    assert code == 0
    assert out.count("PASS") == 5 and "FAIL" not in out
    _ok(10, "selftest exits 0 with all golden checks passing")
