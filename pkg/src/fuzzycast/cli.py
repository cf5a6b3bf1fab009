"""Batch command-line client for the forecasting service.

Subcommands cover the whole surface: one-shot ``forecast``, rolling
``backtest``, the two parameter sweeps, synthetic data generation, the golden
``selftest``, and ``serve`` to expose the HTTP service. By default commands
talk to an in-process instance of the service (no network, single process);
``--server URL`` points them at a running instance instead.

Exit codes: 0 success, 1 usage error, 2 data or processing error.
"""
from __future__ import annotations

import argparse
import asyncio
import sys
from typing import IO

import httpx

from . import __version__
from .ingest import IngestError, IngestSpec, ingest_csv, json_envelope, read_config_file
from .series import SCENARIO_VARIANTS

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2

_DEFAULTS = {
    "n": 3,
    "d_min": -7.0,
    "d_max": 7.0,
    "max_degree": 20,
    "scaling": "unit-consistent",
    "format": "csv",
}

# config-file key -> (argparse dest, caster)
_CONFIG_KEYS = {
    "n": ("n", int),
    "d-min": ("d_min", float),
    "d-max": ("d_max", float),
    "max-degree": ("max_degree", int),
    "scaling": ("scaling", str),
    "days": ("days", int),
    "first": ("first", int),
    "last": ("last", int),
    "train-length": ("train_length", int),
    "n-min": ("n_min", int),
    "n-max": ("n_max", int),
}


class _Parser(argparse.ArgumentParser):
    """argparse with usage failures on exit code 1 instead of 2."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class DataError(Exception):
    """Input or processing failure; maps to exit code 2."""


def _build_parser() -> _Parser:
    parser = _Parser(prog="fuzzycast", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "--server",
        default=None,
        help="base URL of a running service; default runs the service in-process",
    )
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    io_parent = argparse.ArgumentParser(add_help=False)
    io_parent.add_argument("--input", required=True, help="price CSV file")
    io_parent.add_argument("--date-col", default="date", help="date column name")
    io_parent.add_argument("--close-col", default="close", help="close column name")
    io_parent.add_argument(
        "--date-format", default=None, help="strptime format; default ISO-8601"
    )

    cfg_parent = argparse.ArgumentParser(add_help=False)
    cfg_parent.add_argument("--n", type=int, default=None, help="interval count (default 3)")
    cfg_parent.add_argument("--d-min", type=float, default=None, help="range lower bound (default -7)")
    cfg_parent.add_argument("--d-max", type=float, default=None, help="range upper bound (default +7)")
    cfg_parent.add_argument("--max-degree", type=int, default=None, help="suffix length cap (default 20)")
    cfg_parent.add_argument(
        "--scaling",
        choices=["unit-consistent", "table3-compat"],
        default=None,
        help="percent-to-price scaling (default unit-consistent)",
    )
    cfg_parent.add_argument(
        "--compat-table3",
        action="store_true",
        help="shorthand for --scaling table3-compat",
    )
    cfg_parent.add_argument("--config", default=None, help="key=value config file")

    win_parent = argparse.ArgumentParser(add_help=False)
    win_parent.add_argument("--days", type=int, default=None, help="forecast the trailing N days")
    win_parent.add_argument("--first", type=int, default=None, help="first forecast index")
    win_parent.add_argument("--last", type=int, default=None, help="last forecast index")
    win_parent.add_argument(
        "--train-length", type=int, default=None, help="cap training at the most recent K closes"
    )

    out_parent = argparse.ArgumentParser(add_help=False)
    out_parent.add_argument("--output", default=None, help="output file (default stdout)")
    out_parent.add_argument(
        "--format", choices=["csv", "json"], default=None, help="report format (default csv)"
    )

    p = sub.add_parser(
        "forecast", parents=[io_parent, cfg_parent], help="one-day-ahead forecast from a CSV"
    )
    p.add_argument("--json", action="store_true", help="emit the raw JSON response")

    sub.add_parser(
        "backtest",
        parents=[io_parent, cfg_parent, win_parent, out_parent],
        help="rolling one-day-ahead backtest",
    )

    p = sub.add_parser(
        "sweep-intervals",
        parents=[io_parent, cfg_parent, win_parent, out_parent],
        help="backtest across a range of interval counts",
    )
    p.add_argument("--n-min", type=int, default=None, help="smallest interval count (default 2)")
    p.add_argument("--n-max", type=int, default=None, help="largest interval count (default 31)")

    p = sub.add_parser(
        "sweep-training",
        parents=[io_parent, cfg_parent, win_parent, out_parent],
        help="backtest across training-history lengths",
    )
    p.add_argument(
        "--lengths", required=True, help="comma-separated training lengths, e.g. 60,120,240"
    )

    p = sub.add_parser("synth", parents=[out_parent], help="emit synthetic price CSVs")
    p.add_argument(
        "--kind", choices=["fig1", "fig2", "walk"], default="walk", help="fixture family"
    )
    p.add_argument(
        "--variant",
        default=None,
        help="scenario continuation: "
        + "; ".join(f"{k}: {' | '.join(v)}" for k, v in SCENARIO_VARIANTS.items()),
    )
    p.add_argument("--days", type=int, default=200, help="walk length (default 200)")
    p.add_argument("--seed", type=int, default=0, help="walk seed (default 0)")
    p.add_argument("--start", type=float, default=100.0, help="walk start price")
    p.add_argument("--drift", type=float, default=0.0, help="walk mean daily percent step")
    p.add_argument("--sigma", type=float, default=1.5, help="walk percent step stddev")

    sub.add_parser("selftest", help="run the built-in golden checks")

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


def _apply_config_file(args: argparse.Namespace) -> None:
    path = getattr(args, "config", None)
    if not path:
        return
    try:
        file_cfg = read_config_file(path)
    except (OSError, IngestError) as exc:
        raise DataError(str(exc))
    for key, raw in file_cfg.items():
        if key not in _CONFIG_KEYS:
            raise DataError(f"{path}: unknown config key {key!r}")
        dest, caster = _CONFIG_KEYS[key]
        if getattr(args, dest, None) is None:
            try:
                setattr(args, dest, caster(raw))
            except ValueError:
                raise DataError(f"{path}: cannot parse {key}={raw!r}")


def _effective(args: argparse.Namespace, dest: str):
    value = getattr(args, dest, None)
    return _DEFAULTS[dest] if value is None else value


def _config_payload(args: argparse.Namespace) -> dict:
    scaling = "table3-compat" if getattr(args, "compat_table3", False) else _effective(args, "scaling")
    return {
        "d_min": _effective(args, "d_min"),
        "d_max": _effective(args, "d_max"),
        "intervals": _effective(args, "n"),
        "max_degree": _effective(args, "max_degree"),
        "percent_scaling": scaling,
    }


def _window_payload(args: argparse.Namespace) -> dict:
    return {
        "first": getattr(args, "first", None),
        "last": getattr(args, "last", None),
        "days": getattr(args, "days", None),
        "train_length": getattr(args, "train_length", None),
    }


def _load_prices(args: argparse.Namespace) -> list[dict]:
    spec = IngestSpec(
        path=args.input,
        date_column=args.date_col,
        close_column=args.close_col,
        date_format=args.date_format,
    )
    try:
        result = ingest_csv(spec)
    except IngestError as exc:
        raise DataError(str(exc))
    for finding in result.report.findings:
        print(f"warning: {finding.kind}: {finding.message}", file=sys.stderr)
    return [{"date": p.date.isoformat(), "close": p.close} for p in result.series.points]


def _request(server: str | None, method: str, path: str, payload: dict | None = None) -> dict:
    """One request against a remote server or the in-process service."""
    if server:
        with httpx.Client(base_url=server.rstrip("/"), timeout=600.0) as client:
            response = client.request(method, path, json=payload)
    else:
        from .service.app import create_app

        async def _call() -> httpx.Response:
            transport = httpx.ASGITransport(app=create_app())
            async with httpx.AsyncClient(
                transport=transport, base_url="http://fuzzycast.internal", timeout=600.0
            ) as client:
                return await client.request(method, path, json=payload)

        response = asyncio.run(_call())
    if response.status_code != 200:
        try:
            detail = response.json().get("detail", response.text)
        except ValueError:
            detail = response.text
        raise DataError(f"{path} failed ({response.status_code}): {detail}")
    return response.json()


def _open_output(args: argparse.Namespace):
    path = getattr(args, "output", None)
    if path:
        return open(path, "w", encoding="utf-8", newline="")
    return None  # caller falls back to stdout


def _emit(args: argparse.Namespace, render) -> None:
    handle = _open_output(args)
    if handle is None:
        render(sys.stdout)
    else:
        with handle:
            render(handle)


def _header_config(args: argparse.Namespace, body: dict) -> dict:
    cfg = body.get("config", {})
    window = body.get("window", {})
    header = {"tool": f"fuzzycast {__version__}"}
    header.update((k, cfg[k]) for k in sorted(cfg))
    header.update((f"window_{k}", window[k]) for k in sorted(window))
    return header


def _symbol(i: int) -> str:
    return f"A{i}"


def _cmd_forecast(args: argparse.Namespace) -> int:
    payload = {"prices": _load_prices(args), "config": _config_payload(args)}
    body = _request(args.server, "POST", "/forecast", payload)
    if args.json:
        sys.stdout.write(json_envelope(body))
        return EXIT_OK
    print(
        f"previous close {body['previous_price']} on {body['previous_date']}"
        f" (clamped changes: {body['clamped_changes']})"
    )
    if body["fallback_used"]:
        print("no repeated suffix found; forecast falls back to the previous close")
    else:
        n = body["config"]["intervals"]
        head = f"{'degree':>6}  {'pattern':<24}" + "".join(
            f"{_symbol(i):>6}" for i in range(1, n + 1)
        ) + f"  {'percent':>9}  {'price':>12}"
        print(head)
        for row in body["per_degree"]:
            counts = {int(k): v for k, v in row["successor_counts"].items()}
            pattern = "".join(_symbol(s) for s in row["pattern"])
            cells = "".join(f"{counts.get(i, 0):>6}" for i in range(1, n + 1))
            print(
                f"{row['degree']:>6}  {pattern:<24}{cells}"
                f"  {row['forecast_percent']:>9.4f}  {row['forecast_price']:>12.4f}"
            )
    print(f"final forecast: {body['final_price']!r} (matched depth {body['match_depth']})")
    return EXIT_OK


def _cmd_backtest(args: argparse.Namespace) -> int:
    payload = {
        "prices": _load_prices(args),
        "config": _config_payload(args),
        "window": _window_payload(args),
    }
    body = _request(args.server, "POST", "/backtest", payload)

    def render(out: IO[str]) -> None:
        if _effective(args, "format") == "json":
            out.write(json_envelope(body))
            return
        header = _header_config(args, body)
        for key in ("rmse", "mape", "n_days", "fallback_days", "avg_match_len"):
            header[key] = body[key]
        for key, value in header.items():
            out.write(f"# {key}={value}\n")
        out.write("date,forecast,actual,abs_error\n")
        for p in body["pairs"]:
            out.write(f"{p['date']},{p['forecast']!r},{p['actual']!r},{p['abs_error']!r}\n")

    _emit(args, render)
    return EXIT_OK


def _sweep_command(args: argparse.Namespace, path: str, payload: dict, param_name: str) -> int:
    body = _request(args.server, "POST", path, payload)

    def render(out: IO[str]) -> None:
        if _effective(args, "format") == "json":
            out.write(json_envelope(body))
            return
        for key, value in _header_config(args, body).items():
            out.write(f"# {key}={value}\n")
        out.write(f"{param_name},rmse,mape,avg_match_len\n")
        for row in body["rows"]:
            out.write(
                f"{row['param']},{row['rmse']!r},{row['mape']!r},{row['avg_match_len']!r}\n"
            )

    _emit(args, render)
    return EXIT_OK


def _cmd_sweep_intervals(args: argparse.Namespace) -> int:
    payload = {
        "prices": _load_prices(args),
        "n_min": args.n_min if args.n_min is not None else 2,
        "n_max": args.n_max if args.n_max is not None else 31,
        "config": _config_payload(args),
        "window": _window_payload(args),
    }
    return _sweep_command(args, "/sweep/intervals", payload, "n")


def _cmd_sweep_training(args: argparse.Namespace) -> int:
    try:
        lengths = [int(x) for x in args.lengths.split(",") if x.strip()]
    except ValueError:
        raise DataError(f"cannot parse --lengths {args.lengths!r}")
    if not lengths:
        raise DataError("--lengths is empty")
    payload = {
        "prices": _load_prices(args),
        "lengths": lengths,
        "config": _config_payload(args),
        "window": _window_payload(args),
    }
    return _sweep_command(args, "/sweep/training", payload, "train_length")


def _cmd_synth(args: argparse.Namespace) -> int:
    payload = {
        "kind": args.kind,
        "variant": args.variant,
        "days": args.days,
        "seed": args.seed,
        "start": args.start,
        "drift": args.drift,
        "sigma": args.sigma,
    }
    body = _request(args.server, "POST", "/synth", payload)

    def render(out: IO[str]) -> None:
        out.write("date,close\n")
        for p in body["points"]:
            out.write(f"{p['date']},{p['close']!r}\n")

    _emit(args, render)
    return EXIT_OK


def _cmd_selftest(args: argparse.Namespace) -> int:
    body = _request(args.server, "GET", "/selftest")
    for check in body["checks"]:
        status = "PASS" if check["passed"] else "FAIL"
        print(f"{status} {check['name']}: {check['detail']}")
    if body["ok"]:
        print("selftest: all checks passed")
        return EXIT_OK
    print("selftest: FAILURES detected", file=sys.stderr)
    return EXIT_DATA


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service.app import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return EXIT_OK


_COMMANDS = {
    "forecast": _cmd_forecast,
    "backtest": _cmd_backtest,
    "sweep-intervals": _cmd_sweep_intervals,
    "sweep-training": _cmd_sweep_training,
    "synth": _cmd_synth,
    "selftest": _cmd_selftest,
    "serve": _cmd_serve,
}


def cli_main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _apply_config_file(args)
        return _COMMANDS[args.command](args)
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except httpx.HTTPError as exc:
        print(f"error: request failed: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
