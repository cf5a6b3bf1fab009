"""fuzzycast: percent-change binning plus repeated-suffix matching for
one-day-ahead price forecasts, with backtesting, sweeps, and a baseline."""

__version__ = "0.1.0"

from .evaluation import BacktestReport, EvalPair, WindowSpec, backtest, mape, rmse
from .experiments import (
    BaselineRun,
    SweepResult,
    SweepRow,
    baseline_absolute_fts,
    sweep_intervals,
    sweep_training_length,
)
from .forecasting import (
    TABLE3_COMPAT,
    UNIT_CONSISTENT,
    DegreeForecast,
    Forecast,
    ForecastConfig,
    aggregate,
    forecast_next,
    forecast_percent,
    price_from_percent,
)
from .matching import (
    DegreeStats,
    MatchResult,
    QuerySuffix,
    SuffixAutomatonIndex,
    SymbolSequence,
    build_index,
    match_degrees,
    match_degrees_naive,
)
from .partition import (
    FuzzySeries,
    FuzzySymbol,
    UniversePartition,
    fuzzify,
    interval_of,
    make_partition,
)
from .series import (
    PricePoint,
    PriceSeries,
    ReturnPoint,
    ReturnSeries,
    ValidationReport,
    percent_changes,
    random_walk,
    synth_scenario,
    validate_series,
)

__all__ = [
    "__version__",
    "PricePoint",
    "PriceSeries",
    "ReturnPoint",
    "ReturnSeries",
    "ValidationReport",
    "percent_changes",
    "validate_series",
    "synth_scenario",
    "random_walk",
    "UniversePartition",
    "FuzzySymbol",
    "FuzzySeries",
    "make_partition",
    "interval_of",
    "fuzzify",
    "SymbolSequence",
    "QuerySuffix",
    "DegreeStats",
    "MatchResult",
    "SuffixAutomatonIndex",
    "build_index",
    "match_degrees",
    "match_degrees_naive",
    "ForecastConfig",
    "DegreeForecast",
    "Forecast",
    "UNIT_CONSISTENT",
    "TABLE3_COMPAT",
    "forecast_percent",
    "price_from_percent",
    "aggregate",
    "forecast_next",
    "EvalPair",
    "WindowSpec",
    "BacktestReport",
    "rmse",
    "mape",
    "backtest",
    "SweepRow",
    "SweepResult",
    "BaselineRun",
    "sweep_intervals",
    "sweep_training_length",
    "baseline_absolute_fts",
]
