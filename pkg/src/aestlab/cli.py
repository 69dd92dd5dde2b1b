"""Command-line entry points for running scenarios, sweeps, and pulse checks.

Exit codes: 0 success, 2 configuration error, 3 numeric abort, 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .control import BangBang, Rectangular, Sine, condition_residual
from .errors import ConfigError, NumericError
from .lab import Scenario, calibrate_j0, find_peaks, read_sweep_csv, run

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_IO = 4


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="aest", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a named or custom scenario")
    p_run.add_argument("--scenario", required=True)
    p_run.add_argument("--n", type=int, default=None, help="restrict to one chain length")
    p_run.add_argument("--config", default=None, help="JSON config (required for custom)")
    p_run.add_argument("--out", required=True)
    p_run.add_argument("--workers", type=int, default=None)

    p_sweep = sub.add_parser("sweep", help="run a sweep scenario (fig1b)")
    p_sweep.add_argument("--scenario", required=True)
    p_sweep.add_argument("--out", required=True)
    p_sweep.add_argument("--workers", type=int, default=None)

    p_cal = sub.add_parser("calibrate", help="calibrate the weak-end coupling")
    p_cal.add_argument("--n", type=int, required=True)
    p_cal.add_argument("--T", type=float, required=True)
    p_cal.add_argument("--out", required=True)

    p_chk = sub.add_parser("check-pulse", help="evaluate the pulse-condition residual")
    p_chk.add_argument("--shape", choices=("rect", "sine", "bb"), required=True)
    p_chk.add_argument("--I", type=float, required=True, dest="intensity")
    p_chk.add_argument("--tau", type=float, required=True)
    p_chk.add_argument("--gain", type=float, default=50.0)
    p_chk.add_argument("--duty", type=float, default=1.0 / 50.0)
    p_chk.add_argument("--tolerance", type=float, default=1e-6)

    p_pk = sub.add_parser("peaks", help="locate local maxima in a sweep CSV")
    p_pk.add_argument("--in", dest="infile", required=True)
    return ap


def _cmd_run(args) -> int:
    overrides = {}
    if args.config:
        with open(args.config) as fh:
            overrides = json.load(fh)
    if args.n is not None:
        overrides["n"] = args.n
    scenario = Scenario(name=args.scenario, overrides=overrides)
    records = run(scenario, args.out, workers=args.workers)
    for rec in records:
        print(f"{rec.label}: {rec.csv_path} (record {rec.record_id})")
    return EXIT_OK


def _cmd_calibrate(args) -> int:
    result = calibrate_j0(args.n, args.T, out_dir=args.out)
    print(f"j0 = {result.j0:.10g}  (control-free fidelity at T: {result.fidelity_at_T:.6f})")
    return EXIT_OK


def _cmd_check_pulse(args) -> int:
    if args.shape == "rect":
        pulse = Rectangular(args.intensity, args.tau)
        window = args.tau
    elif args.shape == "sine":
        pulse = Sine(args.intensity, math.pi / args.tau)
        window = args.tau
    else:
        pulse = BangBang(args.intensity, args.tau, duty=args.duty, gain=args.gain)
        window = 2.0 * args.tau  # kick pairs cancel over a full period
    report = condition_residual(pulse, window, tolerance=args.tolerance)
    print(f"shape: {args.shape}")
    print(f"residual: {abs(report.residual):.6e} (window {window:.10g})")
    print(f"satisfied: {report.satisfied}")
    print(f"nearest family member: {report.nearest_family_member:.10g}")
    print(f"tolerance: {report.tolerance:g} * window")
    return EXIT_OK


def _cmd_peaks(args) -> int:
    param, values, fids = read_sweep_csv(args.infile)
    peaks = find_peaks(values, fids)
    if not peaks:
        print(f"no peaks found in {args.infile}")
        return EXIT_OK
    for x, y in peaks:
        print(f"{param} = {x:.10g}  fidelity = {y:.8f}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command in ("run", "sweep"):
            return _cmd_run(args if args.command == "run" else _with_run_defaults(args))
        if args.command == "calibrate":
            return _cmd_calibrate(args)
        if args.command == "check-pulse":
            return _cmd_check_pulse(args)
        if args.command == "peaks":
            return _cmd_peaks(args)
        raise ConfigError(f"unknown command {args.command!r}")
    except (ConfigError, ValueError, json.JSONDecodeError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericError as exc:
        print(f"numeric abort: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


def _with_run_defaults(args):
    args.n = None
    args.config = None
    return args


if __name__ == "__main__":
    raise SystemExit(main())
