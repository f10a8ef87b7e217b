"""Command line entry point: ``twoway-secrecy <subcommand> [options]``.

Exit codes: 0 success, 1 validation failure, 2 configuration error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Sequence

from .. import __version__
from ..analytics import jammer_outage, relay_outage
from ..montecarlo import DEFAULT_SAMPLES, OUTAGE_MODES, estimate_outage
from ..params import CONFIG_DEFAULTS, ConfigError, Scenario, parse_bool, resolve_config
from . import output
from .optimize import optimize_alpha
from .sweeps import (
    DEFAULT_ALPHA_GRID,
    SweepRangeError,
    SweepSpec,
    scenario_params,
    sweep_alpha,
    sweep_distance,
    sweep_snr,
)
from .validate import validate

EXIT_OK, EXIT_VALIDATION, EXIT_CONFIG = 0, 1, 2

log = logging.getLogger("twoway_secrecy")

_METHOD_ALIASES = {"closed": ("closed_form",), "mc": ("monte_carlo",),
                   "both": ("closed_form", "monte_carlo")}


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str):  # keep argparse's exit code 2 but route through our message
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _common(parser: argparse.ArgumentParser, *, sweep: bool = True) -> None:
    g = parser.add_argument_group("common")
    g.add_argument("--config", type=Path, help="flat key = value configuration file")
    g.add_argument("--scenario", choices=("wfj", "wofj", "both"),
                   help="default: both for sweeps, otherwise from the 'jamming' key")
    g.add_argument("--method", choices=tuple(_METHOD_ALIASES), default="closed")
    g.add_argument("--samples", type=int, default=DEFAULT_SAMPLES, help="Monte Carlo sample count")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--streams", type=int, default=1, help="Monte Carlo worker substreams")
    g.add_argument("--out", type=Path, help="output file (default: stdout)")
    g.add_argument("--format", choices=("csv", "json"), default="csv")
    g.add_argument("--outage-mode", choices=OUTAGE_MODES, default="closed_form")
    if sweep:
        g.add_argument("--workers", type=int, default=1, help="grid points evaluated concurrently")

    k = parser.add_argument_group("configuration overrides")
    for key in CONFIG_DEFAULTS:
        flags = [f"--{key.replace('_', '-')}"]
        if "_" in key:
            flags.append(f"--{key}")
        kind = parse_bool if key in ("jamming", "high_snr") else float
        k.add_argument(*flags, dest=f"cfg_{key}", type=kind, metavar="BOOL" if kind is parse_bool else "X")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="twoway-secrecy", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    p = sub.add_parser("sweep-alpha", help="ESSR versus the time-switching ratio")
    _common(p)
    p.add_argument("--start", type=float, default=0.05)
    p.add_argument("--stop", type=float, default=0.95)
    p.add_argument("--steps", type=int, default=19)

    p = sub.add_parser("sweep-snr", help="ESSR versus transmit SNR P_S/N_0 in dB")
    _common(p)
    p.add_argument("--start", type=float, default=30.0)
    p.add_argument("--stop", type=float, default=50.0)
    p.add_argument("--steps", type=int, default=11)

    p = sub.add_parser("sweep-distance", help="ESSR versus alpha for several node spacings")
    _common(p)
    p.add_argument("--start", type=float, default=2.0)
    p.add_argument("--stop", type=float, default=5.0)
    p.add_argument("--steps", type=int, default=2)
    p.add_argument("--rj-ratio", type=float, default=0.5,
                   help="relay-jammer distance as a fraction of d")
    p.add_argument("--alpha-step", type=float, default=0.05, help="alpha co-sweep resolution")
    p.add_argument("--fixed-alpha", action="store_true",
                   help="keep the configured alpha instead of co-sweeping it")

    p = sub.add_parser("optimize-alpha", help="golden-section search for the optimal alpha")
    _common(p, sweep=False)
    p.add_argument("--tolerance", type=float, default=1e-4)

    p = sub.add_parser("outage", help="relay and jammer power outage probabilities")
    _common(p, sweep=False)

    p = sub.add_parser("validate", help="closed forms versus simulation/quadrature oracles")
    _common(p, sweep=False)
    return parser


def _scenario(args: argparse.Namespace) -> Scenario:
    overrides = {k[4:]: v for k, v in vars(args).items() if k.startswith("cfg_")}
    return resolve_config(args.config, overrides)


def _scenarios(args: argparse.Namespace, base: Scenario, sweep: bool) -> tuple[str, ...]:
    if args.scenario == "both" or (args.scenario is None and sweep):
        return ("wfj", "wofj")
    if args.scenario is None:
        return ("wfj",) if base.params.jamming else ("wofj",)
    return (args.scenario,)


def _spec(args: argparse.Namespace, base: Scenario, variable: str) -> SweepSpec:
    return SweepSpec(variable, args.start, args.stop, args.steps,
                     scenarios=_scenarios(args, base, True),
                     methods=_METHOD_ALIASES[args.method], mc_samples=args.samples,
                     seed=args.seed, n_streams=args.streams, outage=args.outage_mode,
                     workers=args.workers)


def _emit(args: argparse.Namespace, text: str) -> None:
    if args.out is None:
        sys.stdout.write(text)
    else:
        args.out.write_text(text, encoding="utf-8", newline="\n")


def _emit_records(args, base: Scenario, records: list[dict[str, Any]],
                  columns: tuple[str, ...] = output.CSV_COLUMNS, **extra: Any) -> None:
    if args.format == "json":
        _emit(args, output.to_json(base, records, **extra))
    else:
        _emit(args, output.to_csv(records, columns))


def _cmd_sweep(args, base: Scenario) -> int:
    if args.command == "sweep-alpha":
        rows = sweep_alpha(_spec(args, base, "alpha"), base)
    elif args.command == "sweep-snr":
        rows = sweep_snr(_spec(args, base, "snr_db"), base)
    else:
        if args.fixed_alpha:
            grid = None
        elif args.alpha_step == 0.05:
            grid = DEFAULT_ALPHA_GRID
        else:
            if not 0 < args.alpha_step < 0.5:
                raise SweepRangeError("--alpha-step must lie in (0, 0.5)")
            count = int(round(1.0 / args.alpha_step))
            grid = [round(i * args.alpha_step, 10) for i in range(1, count) if i * args.alpha_step < 1]
        rows = sweep_distance(_spec(args, base, "distance_m"), base, args.rj_ratio, grid)
    _emit_records(args, base, [rec for row in rows for rec in row.records()])
    return EXIT_OK


def _cmd_optimize(args, base: Scenario) -> int:
    records = []
    fallbacks = {}
    for scenario in _scenarios(args, base, True):
        p = scenario_params(base.params, scenario)
        for method in _METHOD_ALIASES[args.method]:
            opt = optimize_alpha(p, base.gains, method, args.tolerance, args.samples, args.seed,
                                 args.streams)
            records.append({"variable": "alpha_opt", "value": opt.alpha, "scenario": scenario,
                            "method": method, "essr_bps_hz": opt.essr, "std_err": None})
            fallbacks[f"{scenario}/{method}"] = opt.fallback
    _emit_records(args, base, records, fallback=fallbacks)
    return EXIT_OK


_OUTAGE_COLUMNS = ("target", "method", "probability", "std_err")


def _cmd_outage(args, base: Scenario) -> int:
    p, g = base.params, base.gains
    records = []
    for target, closed in (("relay", relay_outage(p, g)), ("jammer", jammer_outage(p, g))):
        if "closed_form" in _METHOD_ALIASES[args.method]:
            records.append({"target": target, "method": "closed_form", "probability": closed,
                            "std_err": None})
        if "monte_carlo" in _METHOD_ALIASES[args.method]:
            est = estimate_outage(p, g, target, args.samples, args.seed, args.streams)
            records.append({"target": target, "method": "monte_carlo", "probability": est.mean,
                            "std_err": est.std_err})
    _emit_records(args, base, records, _OUTAGE_COLUMNS)
    return EXIT_OK


def _cmd_validate(args, base: Scenario) -> int:
    exit_code = EXIT_OK
    blocks = []
    for scenario in _scenarios(args, base, False):
        p = scenario_params(base.params, scenario)
        report = validate(p, base.gains, args.samples, args.seed, args.streams)
        blocks.append((scenario, report))
        if not report.passed:
            exit_code = EXIT_VALIDATION
    if args.format == "json":
        doc = {
            "params": output.config_echo(base),
            "tool_version": __version__,
            "passed": exit_code == EXIT_OK,
            "checks": [
                {"scenario": s, "name": c.name, "passed": c.passed, "informational": c.informational,
                 "value": c.value, "reference": c.reference, "detail": c.detail}
                for s, r in blocks for c in r.checks
            ],
        }
        _emit(args, json.dumps(doc, indent=2) + "\n")
    else:
        lines = [f"{s} {line}" for s, r in blocks for line in r.lines()]
        lines.append("validation " + ("passed" if exit_code == EXIT_OK else "FAILED"))
        _emit(args, "\n".join(lines) + "\n")
    return exit_code


_COMMANDS = {
    "sweep-alpha": _cmd_sweep,
    "sweep-snr": _cmd_sweep,
    "sweep-distance": _cmd_sweep,
    "optimize-alpha": _cmd_optimize,
    "outage": _cmd_outage,
    "validate": _cmd_validate,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        base = _scenario(args)
        if args.samples < 1:
            raise ConfigError("--samples must be >= 1")
        return _COMMANDS[args.command](args, base)
    except (ConfigError, SweepRangeError, ValueError) as exc:
        print(f"twoway-secrecy: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
