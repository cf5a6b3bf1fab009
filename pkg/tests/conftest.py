"""Shared fixtures for the test suite."""
from __future__ import annotations

import pytest

from fuzzycast import PriceSeries, random_walk, synth_scenario


@pytest.fixture
def fig1_series() -> PriceSeries:
    """20-day rising fixture: 15 training days, then fresh highs."""
    return synth_scenario("fig1", "rise-then-rise")


@pytest.fixture
def walk60() -> PriceSeries:
    return random_walk(days=60, seed=7)


@pytest.fixture
def write_prices(tmp_path):
    """Write a PriceSeries to a temp CSV and return the path."""

    def _write(series: PriceSeries, name: str = "prices.csv") -> str:
        path = tmp_path / name
        lines = ["date,close"]
        lines += [f"{p.date.isoformat()},{p.close!r}" for p in series.points]
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return str(path)

    return _write
