"""Operator entry point: run, compare and sweep scenarios, or serve the API."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from typing import Optional, Sequence

from .access import GponCapacityError
from .config import RunConfig, default_config, load_config
from .errors import ConfigError
from .report import render, render_json, render_series
from .scenario import evaluate, sweep

__all__ = ["main"]

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_INFEASIBLE = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="netenergy",
        description=(
            "Scale a national network infrastructure (FTTH access, core/edge "
            "tree, international longhaul, CDN) to usage scenarios and report "
            "power, annual energy and efficiency."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", help="YAML/JSON config file (defaults are embedded)")
        p.add_argument("--format", choices=("table", "json"), default="table")
        p.add_argument(
            "--dynamic-power",
            choices=("on", "off"),
            help="override the traffic-proportional energy add-on",
        )

    run = sub.add_parser("run", help="evaluate one scenario")
    add_common(run)
    run.add_argument("--scenario", default="baseline")

    compare = sub.add_parser("compare", help="evaluate two scenarios side by side")
    add_common(compare)
    compare.add_argument("scenario_a")
    compare.add_argument("scenario_b")

    swp = sub.add_parser("sweep", help="evaluate a scenario over a parameter range")
    add_common(swp)
    swp.add_argument("--scenario", required=True)
    swp.add_argument("--parameter", required=True, help="e.g. vod.rate_mbps")
    swp.add_argument("--values", required=True, help="comma-separated numbers")

    serve = sub.add_parser("serve", help="serve the evaluation HTTP API")
    serve.add_argument("--config", help="YAML/JSON config file")
    serve.add_argument("--bind", default="127.0.0.1:8080", help="host:port")
    serve.add_argument(
        "--ui", help="directory with the built scenario explorer to serve at /"
    )
    return parser


def _load(args: argparse.Namespace) -> RunConfig:
    config = load_config(args.config) if args.config else default_config()
    if getattr(args, "dynamic_power", None) is not None:
        config = replace(
            config, flags=replace(config.flags, dynamic_power=args.dynamic_power == "on")
        )
    return config


def _cmd_run(args: argparse.Namespace) -> int:
    config = _load(args)
    scenario = config.scenario(args.scenario)
    report = evaluate(scenario, **config.model_kwargs())
    if scenario.name != config.baseline_scenario and any(
        s.name == config.baseline_scenario for s in config.scenarios
    ):
        base = evaluate(config.scenario(config.baseline_scenario), **config.model_kwargs())
        report = report.with_baseline(base)
    if args.format == "json":
        print(render_json([report]))
    else:
        print(render([report], fmt="table"))
    return EXIT_OK


def _cmd_compare(args: argparse.Namespace) -> int:
    config = _load(args)
    rep_a = evaluate(config.scenario(args.scenario_a), **config.model_kwargs())
    rep_b = evaluate(config.scenario(args.scenario_b), **config.model_kwargs())
    rep_b = rep_b.with_baseline(rep_a)
    if args.format == "json":
        print(render_json([rep_a, rep_b], baseline_name=rep_a.scenario))
    else:
        print(render([rep_a, rep_b], baseline_name=rep_a.scenario, fmt="table"))
    return EXIT_OK


def _cmd_sweep(args: argparse.Namespace) -> int:
    config = _load(args)
    try:
        values = [float(v) for v in args.values.split(",") if v.strip()]
    except ValueError as exc:
        raise ConfigError(f"cannot parse values: {exc}", field="values") from exc
    scenario = config.scenario(args.scenario)
    baseline = config.scenario(config.baseline_scenario)
    reports = sweep(scenario, args.parameter, values, baseline_scenario=baseline, **config.model_kwargs())
    if args.format == "table":
        print(render(reports, fmt="table"))
    else:
        print(render_series(reports, args.parameter))
    return EXIT_OK


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .server import create_app

    config = load_config(args.config) if args.config else default_config()
    host, _, port = args.bind.rpartition(":")
    app = create_app(config, static_dir=args.ui)
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port), log_level="info")
    return EXIT_OK


_COMMANDS = {
    "run": _cmd_run,
    "compare": _cmd_compare,
    "sweep": _cmd_sweep,
    "serve": _cmd_serve,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except GponCapacityError as exc:
        print(f"infeasible dimensioning: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE


if __name__ == "__main__":
    sys.exit(main())
