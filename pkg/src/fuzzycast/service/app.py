"""HTTP facade over the forecasting library.

The service is stateless: every request carries its own price series and
configuration, so responses are deterministic functions of the request body.
Domain errors (bad windows, degenerate data) surface as 400s; schema
violations are pydantic's usual 422s.
"""
from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..evaluation import WindowSpec, backtest
from ..experiments import sweep_intervals, sweep_training_length
from ..forecasting import ForecastConfig, forecast_next
from ..matching import QuerySuffix, SymbolSequence, match_degrees
from ..partition import UniversePartition, fuzzify
from ..selfcheck import run_selfcheck
from ..series import PricePoint, PriceSeries, percent_changes, random_walk, synth_scenario
from .schemas import (
    BacktestRequest,
    BacktestResponse,
    CheckOut,
    DegreeRowOut,
    ForecastRequest,
    ForecastResponse,
    PairOut,
    PricePointIn,
    RunConfigModel,
    SelftestResponse,
    SeriesResponse,
    SweepIntervalsRequest,
    SweepResponse,
    SweepRowOut,
    SweepTrainingRequest,
    SynthRequest,
    WindowModel,
)

__all__ = ["create_app"]


def _to_series(points: list[PricePointIn]) -> PriceSeries:
    return PriceSeries(tuple(PricePoint(p.date, p.close) for p in points))


def _to_config(model: RunConfigModel) -> ForecastConfig:
    partition = UniversePartition(model.d_min, model.d_max, model.intervals)
    return ForecastConfig(partition, model.max_degree, model.percent_scaling)


def _to_window(model: WindowModel) -> WindowSpec:
    return WindowSpec(model.first, model.last, model.days, model.train_length)


def _series_out(series: PriceSeries) -> SeriesResponse:
    return SeriesResponse(
        points=[PricePointIn(date=p.date, close=p.close) for p in series.points]
    )


def create_app() -> FastAPI:
    app = FastAPI(
        title="fuzzycast",
        version=__version__,
        description=(
            "Forecasts daily closes by binning percent changes into intervals "
            "and matching repeated suffixes of the recent history."
        ),
    )

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/forecast", response_model=ForecastResponse)
    def forecast(req: ForecastRequest) -> ForecastResponse:
        series = _to_series(req.prices)
        cfg = _to_config(req.config)
        try:
            history = fuzzify(cfg.partition, percent_changes(series))
            q_len = min(cfg.max_degree, len(history.symbols))
            match = match_degrees(
                SymbolSequence(history.symbols, cfg.partition.n),
                QuerySuffix(history.symbols[len(history.symbols) - q_len :], q_len),
            )
            result = forecast_next(
                history, series.closes[-1], cfg, matcher=lambda _t, _q: match
            )
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        symbols = history.symbols
        rows = [
            DegreeRowOut(
                degree=df.degree,
                pattern=list(symbols[len(symbols) - df.degree :]),
                successor_counts=dict(stats.successor_counts),
                forecast_percent=df.forecast_percent,
                forecast_price=df.forecast_price,
            )
            for df, stats in zip(result.per_degree, match.stats)
        ]
        return ForecastResponse(
            previous_date=series.dates[-1],
            previous_price=series.closes[-1],
            final_price=result.final_price,
            fallback_used=result.fallback_used,
            match_depth=result.depth,
            clamped_changes=history.clamp_count,
            per_degree=rows,
            config=req.config,
        )

    @app.post("/backtest", response_model=BacktestResponse)
    def run_backtest(req: BacktestRequest) -> BacktestResponse:
        try:
            report = backtest(_to_series(req.prices), _to_config(req.config), _to_window(req.window))
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return BacktestResponse(
            pairs=[
                PairOut(
                    date=p.date,
                    forecast=p.forecast_price,
                    actual=p.actual_price,
                    abs_error=abs(p.forecast_price - p.actual_price),
                )
                for p in report.pairs
            ],
            rmse=report.rmse,
            mape=report.mape,
            n_days=report.n_days,
            fallback_days=report.fallback_days,
            avg_match_len=report.avg_match_len,
            config=req.config,
            window=req.window,
        )

    @app.post("/sweep/intervals", response_model=SweepResponse)
    def run_sweep_intervals(req: SweepIntervalsRequest) -> SweepResponse:
        if req.n_min > req.n_max:
            raise HTTPException(status_code=400, detail="n_min must not exceed n_max")
        try:
            result = sweep_intervals(
                _to_series(req.prices),
                range(req.n_min, req.n_max + 1),
                d_min=req.config.d_min,
                d_max=req.config.d_max,
                max_degree=req.config.max_degree,
                percent_scaling=req.config.percent_scaling,
                window=_to_window(req.window),
            )
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return SweepResponse(
            kind=result.kind,
            rows=[SweepRowOut(**vars(r)) for r in result.rows],
            config=req.config,
            window=req.window,
        )

    @app.post("/sweep/training", response_model=SweepResponse)
    def run_sweep_training(req: SweepTrainingRequest) -> SweepResponse:
        try:
            result = sweep_training_length(
                _to_series(req.prices),
                req.lengths,
                n=req.config.intervals,
                d_min=req.config.d_min,
                d_max=req.config.d_max,
                max_degree=req.config.max_degree,
                percent_scaling=req.config.percent_scaling,
                window=_to_window(req.window),
            )
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return SweepResponse(
            kind=result.kind,
            rows=[SweepRowOut(**vars(r)) for r in result.rows],
            config=req.config,
            window=req.window,
        )

    @app.post("/synth", response_model=SeriesResponse)
    def synth(req: SynthRequest) -> SeriesResponse:
        try:
            if req.kind == "walk":
                series = random_walk(
                    req.days, req.seed, start=req.start, drift=req.drift, sigma=req.sigma
                )
            else:
                if req.variant is None:
                    raise ValueError(f"scenario {req.kind!r} needs a variant")
                series = synth_scenario(req.kind, req.variant)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return _series_out(series)

    @app.get("/selftest", response_model=SelftestResponse)
    def selftest() -> SelftestResponse:
        checks = run_selfcheck()
        return SelftestResponse(
            ok=all(c.passed for c in checks),
            checks=[CheckOut(name=c.name, passed=c.passed, detail=c.detail) for c in checks],
        )

    return app
