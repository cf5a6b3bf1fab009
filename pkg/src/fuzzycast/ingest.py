"""CSV ingestion and report serialization.

Input files are plain UTF-8 CSV with a header row; date and close column
names are configurable, dates are ISO-8601 unless a strptime format is
given. Rows are parsed in file order and then sorted by date; duplicate
dates are rejected. Reports go out as flat CSV preceded by ``# key=value``
comment lines that record the full run configuration, or as a JSON envelope
with the same content.
"""
from __future__ import annotations

import csv
import datetime as dt
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Mapping

from .series import PricePoint, PriceSeries, ValidationReport, validate_series

__all__ = [
    "IngestSpec",
    "IngestError",
    "IngestResult",
    "ingest_csv",
    "write_prices_csv",
    "write_backtest_csv",
    "write_sweep_csv",
    "json_envelope",
    "read_config_file",
]


class IngestError(Exception):
    """Raised for unreadable or malformed input data."""


@dataclass(frozen=True)
class IngestSpec:
    path: str | Path
    date_column: str = "date"
    close_column: str = "close"
    date_format: str | None = None  # None means ISO-8601


@dataclass(frozen=True)
class IngestResult:
    series: PriceSeries
    report: ValidationReport


def _parse_date(raw: str, fmt: str | None, line: int) -> dt.date:
    try:
        if fmt is None:
            return dt.date.fromisoformat(raw.strip())
        return dt.datetime.strptime(raw.strip(), fmt).date()
    except ValueError as exc:
        raise IngestError(f"line {line}: cannot parse date {raw!r}: {exc}") from None


def _parse_close(raw: str, line: int) -> float:
    try:
        value = float(raw)
    except (TypeError, ValueError):
        raise IngestError(f"line {line}: cannot parse close price {raw!r}") from None
    if not math.isfinite(value):
        raise IngestError(f"line {line}: close price {raw!r} is not finite")
    return value


def ingest_csv(spec: IngestSpec) -> IngestResult:
    """Parse a close-price CSV into a date-sorted series plus a data-quality
    report. Structural problems (missing file or columns, unparseable cells,
    duplicate dates) raise IngestError naming the offending line."""
    path = Path(spec.path)
    if not path.is_file():
        raise IngestError(f"input file not found: {path}")
    with path.open(newline="", encoding="utf-8-sig") as handle:
        reader = csv.DictReader(handle)
        header = reader.fieldnames
        if header is None:
            raise IngestError(f"{path}: file is empty, expected a CSV header row")
        for column in (spec.date_column, spec.close_column):
            if column not in header:
                raise IngestError(
                    f"{path}: column {column!r} not in header {list(header)}"
                )
        points: list[PricePoint] = []
        lines: dict[dt.date, int] = {}
        for row in reader:
            line = reader.line_num
            raw_date = row.get(spec.date_column)
            raw_close = row.get(spec.close_column)
            if raw_date is None or raw_close is None:
                raise IngestError(f"line {line}: malformed row {row!r}")
            date = _parse_date(raw_date, spec.date_format, line)
            close = _parse_close(raw_close, line)
            if date in lines:
                raise IngestError(
                    f"line {line}: duplicate date {date} (first seen on line {lines[date]})"
                )
            lines[date] = line
            points.append(PricePoint(date, close))
    points.sort(key=lambda p: p.date)
    series = PriceSeries(tuple(points))
    return IngestResult(series, validate_series(series))


def _write_header(out: IO[str], config: Mapping[str, object]) -> None:
    for key, value in config.items():
        out.write(f"# {key}={value}\n")


def write_prices_csv(out: IO[str], series: PriceSeries) -> None:
    out.write("date,close\n")
    for p in series.points:
        out.write(f"{p.date.isoformat()},{p.close!r}\n")


def write_backtest_csv(out: IO[str], pairs, config: Mapping[str, object]) -> None:
    _write_header(out, config)
    out.write("date,forecast,actual,abs_error\n")
    for p in pairs:
        err = abs(p.forecast_price - p.actual_price)
        out.write(
            f"{p.date.isoformat()},{p.forecast_price!r},{p.actual_price!r},{err!r}\n"
        )


def write_sweep_csv(out: IO[str], rows, config: Mapping[str, object], param_name: str = "n") -> None:
    _write_header(out, config)
    out.write(f"{param_name},rmse,mape,avg_match_len\n")
    for r in rows:
        out.write(f"{r.param},{r.rmse!r},{r.mape!r},{r.avg_match_len!r}\n")


def json_envelope(payload: Mapping[str, object]) -> str:
    """Deterministic JSON rendering: sorted keys, stable float repr."""
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def read_config_file(path: str | Path) -> dict[str, str]:
    """Parse a ``key=value`` config file; blank lines and ``#`` comments are
    skipped. Keys use the CLI flag spelling without the leading dashes."""
    result: dict[str, str] = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise IngestError(f"{path}: line {lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        result[key.strip()] = value.strip()
    return result
