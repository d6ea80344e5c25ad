"""Command-line front end.

    fockcats run SCENARIO_FILE [--out PREFIX] [--format csv|json]
                               [--epsilon X] [--dim N]
    fockcats run --preset fig1-even|fig1-odd|coherent [overrides...]
    fockcats validate SCENARIO_FILE
    fockcats version

Exit status: 0 on success, 2 for usage/validation errors, 1 for execution
failures. Errors are one line on stderr, ``error: <what>``. No environment
variables are consulted; behavior is controlled by flags alone.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from . import __version__
from .runner import dumps, run_scenario, scenario_echo
from .scenario import (
    PRESET_NAMES,
    Scenario,
    ScenarioError,
    parse_scenario,
    preset_scenario,
)

__all__ = ["cli_main", "main"]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fockcats",
        description="Coherent and cat states of the harmonic oscillator: "
        "construct, evolve, and export densities and observables.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="execute a scenario and write its products")
    run.add_argument("scenario_file", nargs="?", help="flat key = value document")
    run.add_argument("--preset", choices=PRESET_NAMES, help="built-in scenario")
    run.add_argument("--out", metavar="PREFIX", help="override the output path prefix")
    run.add_argument("--format", choices=("csv", "json"), help="override output format")
    run.add_argument(
        "--epsilon", type=float, metavar="X", help="override the truncation tolerance"
    )
    run.add_argument(
        "--dim", type=int, metavar="N", help="override the automatic basis size"
    )

    val = sub.add_parser("validate", help="check a scenario document and exit")
    val.add_argument("scenario_file")

    sub.add_parser("version", help="print the version string")
    return parser


def _load_scenario(args) -> Scenario:
    if args.preset is not None and args.scenario_file is not None:
        raise ScenarioError("give a scenario file or --preset, not both")
    if args.preset is not None:
        scenario = preset_scenario(args.preset)
    elif args.scenario_file is not None:
        scenario = parse_scenario(_read(args.scenario_file))
    else:
        raise ScenarioError("a scenario file or --preset is required")
    overrides = {}
    if args.out is not None:
        overrides["prefix"] = args.out
    if args.format is not None:
        overrides["format"] = args.format
    if args.epsilon is not None:
        overrides["epsilon"] = args.epsilon
    if args.dim is not None:
        overrides["dim"] = args.dim
    return replace(scenario, **overrides) if overrides else scenario


def _read(path: str) -> str:
    try:
        with open(path, "r") as handle:
            return handle.read()
    except OSError as exc:
        raise ScenarioError(f"cannot read scenario file: {exc}") from None


def cli_main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)

    if args.command == "version":
        print(f"fockcats {__version__}")
        return 0

    if args.command == "validate":
        try:
            scenario = parse_scenario(_read(args.scenario_file))
        except ScenarioError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        print(dumps({"valid": True, "scenario": scenario_echo(scenario)}))
        return 0

    # run
    try:
        scenario = _load_scenario(args)
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        manifest = run_scenario(scenario)
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(manifest.to_json())
    return 0


def main() -> None:
    sys.exit(cli_main())
