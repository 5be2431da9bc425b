"""Command line front end: run configured scenarios, locate Lambda sign
crossings in saved records, and refit the decoherence function."""

import argparse
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from .errors import ConfigError, InvariantViolation, NumericalFailure
from .perturbation import FitResult
from .scenarios import (
    SCENARIOS,
    detect_lambda_crossing,
    load_config,
    load_records,
    run_decoherence_scenario,
    run_fn_scenario,
)

EXIT_CONFIG = 1
EXIT_NUMERICAL = 2


def _cmd_run(args) -> int:
    cfg = load_config(args.config)
    overrides = {}
    if args.scenario is not None:
        overrides["scenario"] = args.scenario
    if args.out is not None:
        overrides["outputs"] = Path(args.out)
    if args.record_every is not None:
        overrides["record_every"] = args.record_every
    if overrides:
        cfg = replace(cfg, **overrides)

    kind = cfg.scenario or cfg.initial_system
    if kind == "fn":
        artifact = run_fn_scenario(cfg)
        print(f"wrote {artifact.records_path} and {artifact.manifest_path}")
        print(f"fit: a = {artifact.fit.a:.6g}, b = {artifact.fit.b:.6g}, rms = {artifact.fit.rms_residual:.3g}")
        if artifact.pheno is not None:
            print(f"pheno: c0_scaled = {artifact.pheno.c0:.6g}, gamma = {artifact.pheno.gamma:.4g}")
    else:
        artifact = run_decoherence_scenario(cfg)
        print(f"wrote {artifact.records_path} and {artifact.manifest_path}")
        for alpha, n_cross in detect_lambda_crossing(artifact):
            print(f"alpha = {alpha!r}: Lambda turns positive at n = {n_cross}")
    return 0


def _cmd_crossings(args) -> int:
    records = load_records(args.records)
    crossings = detect_lambda_crossing(records)
    if not crossings:
        print("no Lambda sign crossings detected")
        return 0
    for alpha, n_cross in crossings:
        print(f"alpha = {alpha!r}: Lambda turns positive at n = {n_cross}")
    return 0


def _fit_pairs(ns: np.ndarray, values: np.ndarray) -> FitResult:
    """Least-squares a n + b n^2 on recorded (step, value) pairs."""
    design = np.column_stack([ns.astype(float), ns.astype(float) ** 2])
    coeffs, _, rank, _ = np.linalg.lstsq(design, values, rcond=None)
    if rank < 2:
        raise NumericalFailure("fit design matrix is rank deficient")
    residual = values - design @ coeffs
    return FitResult(
        a=float(coeffs[0]),
        b=float(coeffs[1]),
        rms_residual=float(np.sqrt(np.mean(residual**2))),
    )


def _cmd_fit(args) -> int:
    n, columns = load_records(args.records)
    if "f_scaled" not in columns:
        raise ConfigError(f"records file {args.records} has no 'f_scaled' column (not an fn run?)")
    n_min = args.n_min if args.n_min is not None else max(int(n[0]), 1)
    n_max = args.n_max if args.n_max is not None else int(n[-1])
    keep = (n >= n_min) & (n <= n_max)
    if keep.sum() < 3:
        raise ConfigError(f"fit window [{n_min}, {n_max}] covers fewer than 3 recorded steps")
    fit = _fit_pairs(n[keep], columns["f_scaled"][keep])
    print(f"fit window [{n_min}, {n_max}]: a = {fit.a:.6g}, b = {fit.b:.6g}, rms = {fit.rms_residual:.3g}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="topbath",
        description="Two qubits coupled to a kicked-top environment: run, inspect, refit.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a configured scenario and write records + manifest")
    p_run.add_argument("config", help="path to a key = value configuration file")
    p_run.add_argument("--scenario", choices=SCENARIOS, default=None, help="override the configured scenario")
    p_run.add_argument("--out", default=None, help="override the output directory")
    p_run.add_argument("--record-every", type=int, default=None, help="record every K-th step")
    p_run.set_defaults(func=_cmd_run)

    p_cross = sub.add_parser("crossings", help="report Lambda sign crossings in saved records")
    p_cross.add_argument("records", help="path to a records CSV from a bell/product run")
    p_cross.set_defaults(func=_cmd_crossings)

    p_fit = sub.add_parser("fit", help="refit a n + b n^2 to the scaled decoherence function")
    p_fit.add_argument("records", help="path to a records CSV from an fn run")
    p_fit.add_argument("--n-min", type=int, default=None, help="first step of the fit window")
    p_fit.add_argument("--n-max", type=int, default=None, help="last step of the fit window")
    p_fit.set_defaults(func=_cmd_fit)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (InvariantViolation, NumericalFailure) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
