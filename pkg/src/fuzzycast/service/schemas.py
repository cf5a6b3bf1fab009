"""Request/response models for the HTTP service."""
from __future__ import annotations

import datetime as dt
from typing import Literal, Optional

from pydantic import BaseModel, Field, model_validator

from ..forecasting import DEFAULT_MAX_DEGREE, UNIT_CONSISTENT
from ..partition import MAX_INTERVALS, MIN_INTERVALS


class PricePointIn(BaseModel):
    date: dt.date
    close: float = Field(gt=0)


class RunConfigModel(BaseModel):
    """Partition and forecasting parameters shared by every endpoint."""

    d_min: float = -7.0
    d_max: float = 7.0
    intervals: int = Field(3, ge=MIN_INTERVALS, le=MAX_INTERVALS)
    max_degree: int = Field(DEFAULT_MAX_DEGREE, ge=1)
    percent_scaling: Literal["unit-consistent", "table3-compat"] = UNIT_CONSISTENT

    @model_validator(mode="after")
    def _range_is_ordered(self):
        if not self.d_min < self.d_max:
            raise ValueError(f"d_min must be below d_max, got [{self.d_min}, {self.d_max}]")
        return self


class WindowModel(BaseModel):
    first: Optional[int] = None
    last: Optional[int] = None
    days: Optional[int] = Field(None, ge=1)
    train_length: Optional[int] = Field(None, ge=2)


class ForecastRequest(BaseModel):
    prices: list[PricePointIn] = Field(min_length=2)
    config: RunConfigModel = RunConfigModel()


class DegreeRowOut(BaseModel):
    degree: int
    pattern: list[int]
    successor_counts: dict[int, int]
    forecast_percent: float
    forecast_price: float


class ForecastResponse(BaseModel):
    previous_date: dt.date
    previous_price: float
    final_price: float
    fallback_used: bool
    match_depth: int
    clamped_changes: int
    per_degree: list[DegreeRowOut]
    config: RunConfigModel


class BacktestRequest(BaseModel):
    prices: list[PricePointIn] = Field(min_length=3)
    config: RunConfigModel = RunConfigModel()
    window: WindowModel = WindowModel()


class PairOut(BaseModel):
    date: dt.date
    forecast: float
    actual: float
    abs_error: float


class BacktestResponse(BaseModel):
    pairs: list[PairOut]
    rmse: float
    mape: float
    n_days: int
    fallback_days: int
    avg_match_len: float
    config: RunConfigModel
    window: WindowModel


class SweepIntervalsRequest(BaseModel):
    prices: list[PricePointIn] = Field(min_length=3)
    n_min: int = Field(2, ge=MIN_INTERVALS, le=MAX_INTERVALS)
    n_max: int = Field(31, ge=MIN_INTERVALS, le=MAX_INTERVALS)
    config: RunConfigModel = RunConfigModel()
    window: WindowModel = WindowModel()


class SweepTrainingRequest(BaseModel):
    prices: list[PricePointIn] = Field(min_length=3)
    lengths: list[int] = Field(min_length=1)
    config: RunConfigModel = RunConfigModel()
    window: WindowModel = WindowModel()


class SweepRowOut(BaseModel):
    param: int
    rmse: float
    mape: float
    avg_match_len: float


class SweepResponse(BaseModel):
    kind: Literal["interval-count", "training-length"]
    rows: list[SweepRowOut]
    config: RunConfigModel
    window: WindowModel


class SynthRequest(BaseModel):
    kind: Literal["fig1", "fig2", "walk"] = "walk"
    variant: Optional[str] = None
    days: int = Field(200, ge=1)
    seed: int = 0
    start: float = Field(100.0, gt=0)
    drift: float = 0.0
    sigma: float = Field(1.5, ge=0)


class SeriesResponse(BaseModel):
    points: list[PricePointIn]


class CheckOut(BaseModel):
    name: str
    passed: bool
    detail: str


class SelftestResponse(BaseModel):
    ok: bool
    checks: list[CheckOut]
