"""Command-line front end.

Subcommands: run, sweep, snapshot, toy, selftest.  Exit codes: 0 success,
2 configuration error, 3 numerical invariant violation.  Series and sweep
tables are CSV with 17 significant digits; grids are binary WGRD/CGRD files.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from .gridio import write_classical, write_wigner
from .runner import (
    ConfigError,
    ExperimentResult,
    TRACE_RESIDUAL_LIMIT,
    load_config,
    run_experiment,
    selftest,
    sweep_alpha,
    sweep_dimensions,
)
from .toymodel import asymptotic_rate, toy_entropy_series

__all__ = ["main"]


class NumericalViolation(RuntimeError):
    pass


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def _write_csv(path: Path, header: list[str], rows) -> None:
    with open(path, "w") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _write_series(path: Path, result: ExperimentResult) -> None:
    if result.classical_entropy is not None:
        header = ["t", "entropy", "classical_entropy", "trace_residual"]
        rows = zip(result.t, result.entropy, result.classical_entropy, result.trace_residual)
    else:
        header = ["t", "entropy", "trace_residual"]
        rows = zip(result.t, result.entropy, result.trace_residual)
    _write_csv(path, header, ([int(r[0])] + [float(v) for v in r[1:]] for r in rows))


def _dump_snapshots(out_dir: Path, result: ExperimentResult) -> None:
    for t, grid in sorted(result.wigner_snapshots.items()):
        write_wigner(out_dir / f"wigner_t{t:04d}.wgrd", grid, result.config.n)
    for t, grid in sorted(result.classical_snapshots.items()):
        write_classical(out_dir / f"classical_t{t:04d}.cgrd", grid)


def _check_residuals(result: ExperimentResult) -> None:
    worst = result.max_trace_residual()
    if worst > TRACE_RESIDUAL_LIMIT:
        raise NumericalViolation(
            f"trace residual {worst:.3e} exceeds {TRACE_RESIDUAL_LIMIT:.1e}"
        )


def _cmd_run(args) -> int:
    cfg = load_config(args.config)
    result = run_experiment(cfg)
    _check_residuals(result)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    _write_series(out_dir / "series.csv", result)
    _dump_snapshots(out_dir, result)
    fit = result.slope()
    print(f"steps: {cfg.steps}  final entropy: {result.entropy[-1]:.6f}  "
          f"saturation ln N: {math.log(cfg.n):.6f}")
    if fit is None:
        print("slope: no linear regime")
    else:
        print(f"slope: {fit.slope:.6f} over t = {fit.t_start}..{fit.t_end} ({fit.points} points)")
    print(f"wrote {out_dir / 'series.csv'}")
    return 0


def _parse_axis(text: str):
    if "=" not in text:
        raise ConfigError("axis", f"expected 'alpha=a:b:step' or 'N=n1,n2,...', got {text!r}")
    name, spec = (part.strip() for part in text.split("=", 1))
    if name == "alpha":
        parts = spec.split(":")
        if len(parts) != 3:
            raise ConfigError("axis", f"alpha axis needs start:stop:step, got {spec!r}")
        start, stop, step = (float(p) for p in parts)
        if step <= 0:
            raise ConfigError("axis", "alpha step must be positive")
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        values = [round(start + k * step, 12) for k in range(max(count, 0))]
        return "alpha", [v for v in values if v <= stop + 1e-12]
    if name in ("N", "n"):
        try:
            return "N", [int(p) for p in spec.split(",") if p.strip()]
        except ValueError:
            raise ConfigError("axis", f"N axis needs a comma list of integers, got {spec!r}") from None
    raise ConfigError("axis", f"unknown sweep axis {name!r}")


def _cmd_sweep(args) -> int:
    cfg = load_config(args.config)
    axis, values = _parse_axis(args.axis)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    if axis == "alpha":
        rows = sweep_alpha(cfg, values)
        path = out_dir / "sweep_alpha.csv"
        _write_csv(path, ["alpha", "slope", "t_start", "t_end", "status"],
                   ([r["alpha"], r["slope"], r["t_start"], r["t_end"], r["status"]] for r in rows))
        for r in rows:
            slope = "-" if r["slope"] is None else f"{r['slope']:.4f}"
            print(f"alpha = {r['alpha']:.3f}  slope = {slope}  [{r['status']}]")
    else:
        rows = sweep_dimensions(cfg, values)
        path = out_dir / "sweep_N.csv"
        _write_csv(path, ["N", "t", "t_over_logN", "entropy", "entropy_over_logN"],
                   ([r["N"], r["t"], r["t_over_logN"], r["entropy"], r["entropy_over_logN"]]
                    for r in rows))
        print(f"{len(values)} runs, {len(rows)} rows")
    print(f"wrote {path}")
    return 0


def _cmd_snapshot(args) -> int:
    cfg = load_config(args.config)
    if args.every < 1:
        raise ConfigError("every", "snapshot cadence must be a positive integer")
    cfg = replace(cfg, wigner_every=args.every)
    cfg.validate()
    result = run_experiment(cfg)
    _check_residuals(result)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    _write_series(out_dir / "series.csv", result)
    _dump_snapshots(out_dir, result)
    n_w = len(result.wigner_snapshots)
    n_c = len(result.classical_snapshots)
    print(f"wrote {n_w} Wigner grids and {n_c} classical grids to {out_dir}")
    return 0


def _cmd_toy(args) -> int:
    if not 0.0 <= args.alpha <= 1.0:
        raise ConfigError("alpha", f"must lie in [0, 1], got {args.alpha}")
    if args.tmax < 0:
        raise ConfigError("tmax", "must be nonnegative")
    series = toy_entropy_series(args.alpha, args.tmax)
    print(f"alpha = {args.alpha}  asymptotic rate = {asymptotic_rate(args.alpha):.6f}")
    print("t,entropy")
    for t, s in enumerate(series):
        print(f"{t},{s:.17g}")
    if args.out:
        path = Path(args.out)
        path.parent.mkdir(parents=True, exist_ok=True)
        _write_csv(path, ["t", "entropy"], ((t, float(s)) for t, s in enumerate(series)))
    return 0


def _cmd_selftest(_args) -> int:
    failures = 0
    for name, ok, detail in selftest():
        print(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
        failures += 0 if ok else 1
    if failures:
        raise NumericalViolation(f"{failures} selftest check(s) failed")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="openmaps",
        description="Evolve density matrices of dissipative quantum maps and "
                    "measure entropy production.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run one experiment and write its entropy series")
    p.add_argument("config")
    p.add_argument("--out", default="out", help="output directory (default: out)")
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("sweep", help="repeat an experiment over a parameter grid")
    p.add_argument("config")
    p.add_argument("--axis", required=True, help="alpha=start:stop:step or N=n1,n2,...")
    p.add_argument("--out", default="out")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("snapshot", help="run and dump phase-space grids every k steps")
    p.add_argument("config")
    p.add_argument("--every", type=int, required=True)
    p.add_argument("--out", default="out")
    p.set_defaults(func=_cmd_snapshot)

    p = sub.add_parser("toy", help="print the analytic entropy model series")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--tmax", type=int, default=40)
    p.add_argument("--out", default=None, help="optional CSV path")
    p.set_defaults(func=_cmd_toy)

    p = sub.add_parser("selftest", help="run the oracle equivalence suite")
    p.set_defaults(func=_cmd_selftest)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except NumericalViolation as exc:
        print(f"numerical invariant violated: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
