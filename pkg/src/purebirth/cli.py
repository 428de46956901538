"""Command-line front end.

Subcommands: expect-time, forward, simulate, sweep, explosion.  Model
parameters come from flags (--family, --N, --lambda, --mu, --p, --c,
--exponent, --cap, --unit) or a flat key=value config file (--config);
flags override the file.  Data goes to --out or stdout as CSV (RFC-4180
style, 17 significant digits) or JSON (metadata header plus one object per
row); diagnostics go to stderr and any failure exits nonzero.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Optional

from . import __version__
from .analytic import expected_absorption_time
from .errors import PureBirthError
from .forward import SolverConfig, forward_grid
from .montecarlo import (estimate_absorption_time, explosion_study,
                         replicate_stream, simulate_path)
from .rates import build_rate_model

PROB_FLOOR = 1e-12

# config-file keys mirror flag names; map them onto argparse dests
_KEY_TO_DEST = {
    "family": "family", "N": "N", "lambda": "lam", "mu": "mu", "p": "p",
    "c": "c", "exponent": "exponent", "cap": "cap", "unit": "unit",
    "start": "start", "seed": "seed", "replicates": "replicates",
    "t": "t", "t-grid": "t_grid", "out": "out", "format": "format",
    "param": "param", "values": "values", "jobs": "jobs",
    "trajectories": "trajectories", "method": "method",
    "rel-tol": "rel_tol", "abs-tol": "abs_tol", "max-step": "max_step",
}


def fmt(value) -> str:
    """Render one CSV cell; floats carry 17 significant digits."""
    if value is None:
        return ""
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _add_model_flags(parser):
    parser.add_argument("--family", help="hypergeometric, yule, or powerlaw")
    parser.add_argument("--N", dest="N", type=int, help="population size")
    parser.add_argument("--lambda", dest="lam", type=float,
                        help="contact rate (hypergeometric)")
    parser.add_argument("--mu", type=float, help="per-capita rate (yule)")
    parser.add_argument("--p", type=float, help="transmission probability")
    parser.add_argument("--c", type=float, help="powerlaw coefficient")
    parser.add_argument("--exponent", type=float, help="powerlaw exponent")
    parser.add_argument("--cap", type=int, help="powerlaw state cap")
    parser.add_argument("--unit", help="time unit label")
    parser.add_argument("--start", type=int, help="initial state (default 1)")


def _add_common_flags(parser):
    parser.add_argument("--out", help="output path (default stdout)")
    parser.add_argument("--format", choices=["csv", "json"],
                        help="output format (default csv)")
    parser.add_argument("--config", help="flat key=value config file")


def _add_solver_flags(parser):
    parser.add_argument("--method", choices=["adaptive", "rk4"])
    parser.add_argument("--rel-tol", dest="rel_tol", type=float)
    parser.add_argument("--abs-tol", dest="abs_tol", type=float)
    parser.add_argument("--max-step", dest="max_step", type=float)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="purebirth",
        description="Pure-birth CTMC infection model toolkit")
    parser.add_argument("--version", action="version",
                        version=f"purebirth {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expect-time",
                       help="exact and approximate expected absorption time")
    _add_model_flags(p)
    _add_common_flags(p)

    p = sub.add_parser("forward",
                       help="state distribution from the forward equations")
    _add_model_flags(p)
    _add_common_flags(p)
    _add_solver_flags(p)
    p.add_argument("--t", type=float, help="single evaluation time")
    p.add_argument("--t-grid", dest="t_grid",
                   help="comma-separated strictly increasing times")

    p = sub.add_parser("simulate", help="Monte Carlo absorption-time summary")
    _add_model_flags(p)
    _add_common_flags(p)
    p.add_argument("--replicates", type=int)
    p.add_argument("--seed", type=int, help="master seed")
    p.add_argument("--jobs", type=int, help="parallel worker count")
    p.add_argument("--trajectories",
                   help="also dump per-event CSV rows to this path")

    p = sub.add_parser("sweep",
                       help="expected time across a parameter grid")
    _add_model_flags(p)
    _add_common_flags(p)
    p.add_argument("--param", choices=["N", "p", "mu", "lambda", "c"])
    p.add_argument("--values", help="comma-separated grid values")

    p = sub.add_parser("explosion",
                       help="cap-hitting times for lambda_k = c k^2")
    _add_model_flags(p)
    _add_common_flags(p)
    p.add_argument("--replicates", type=int)
    p.add_argument("--seed", type=int, help="master seed")
    p.add_argument("--jobs", type=int, help="parallel worker count")

    return parser


def _apply_config(args: argparse.Namespace, path: str):
    """Fill unset args from a flat key=value file; flags win."""
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise PureBirthError(
                    f"{path}:{lineno}: expected key = value, got {raw!r}")
            key, _, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if key not in _KEY_TO_DEST:
                raise PureBirthError(f"{path}:{lineno}: unknown key {key!r}")
            dest = _KEY_TO_DEST[key]
            if getattr(args, dest, None) is None and hasattr(args, dest):
                setattr(args, dest, _coerce(dest, value))


def _coerce(dest, value):
    if dest in ("N", "cap", "start", "seed", "replicates", "jobs"):
        return int(value)
    if dest in ("lam", "mu", "p", "c", "exponent", "t", "rel_tol",
                "abs_tol", "max_step"):
        return float(value)
    return value


def _model_spec(args) -> dict:
    return {
        "family": args.family,
        "N": args.N,
        "lambda": args.lam,
        "mu": args.mu,
        "p": args.p,
        "c": args.c,
        "exponent": args.exponent,
        "cap": args.cap,
        "time_unit": args.unit,
    }


def _write_rows(args, header, rows, metadata):
    fmt_name = args.format or "csv"
    if fmt_name == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([fmt(cell) for cell in row])
        text = buf.getvalue()
    else:
        payload = {
            "metadata": metadata,
            "rows": [dict(zip(header, row)) for row in rows],
        }
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _metadata(args, command, **extra):
    meta = {"command": command, "version": __version__,
            "model": {k: v for k, v in _model_spec(args).items()
                      if v is not None}}
    meta.update(extra)
    return meta


def _cmd_expect_time(args):
    model = build_rate_model(_model_spec(args))
    report = expected_absorption_time(model, args.start or 1)
    header = ["exact_mean", "approx_mean", "approx_mean_refined", "variance",
              "start_state", "time_unit"]
    row = [report.exact_mean, report.approx_mean, report.approx_mean_refined,
           report.variance, report.start_state, report.time_unit]
    _write_rows(args, header, [row], _metadata(args, "expect-time"))


def _parse_grid(args):
    if args.t_grid is not None:
        grid = [float(v) for v in args.t_grid.split(",") if v.strip()]
        if not grid:
            raise PureBirthError("--t-grid is empty")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise PureBirthError("--t-grid must be strictly increasing")
        return grid
    if args.t is not None:
        return [args.t]
    raise PureBirthError("forward requires --t or --t-grid")


def _solver_config(args) -> SolverConfig:
    kwargs = {}
    if args.method is not None:
        kwargs["method"] = args.method
    if args.rel_tol is not None:
        kwargs["rel_tol"] = args.rel_tol
    if args.abs_tol is not None:
        kwargs["abs_tol"] = args.abs_tol
    if args.max_step is not None:
        kwargs["max_step"] = args.max_step
    return SolverConfig(**kwargs)


def _cmd_forward(args):
    model = build_rate_model(_model_spec(args))
    grid = _parse_grid(args)
    snapshots = forward_grid(model, args.start or 1, grid,
                             _solver_config(args))
    rows = []
    for snap in snapshots:
        for state, prob in zip(snap.states, snap.probabilities):
            if prob > PROB_FLOOR:
                rows.append([snap.time, int(state), float(prob)])
    _write_rows(args, ["time", "state", "probability"], rows,
                _metadata(args, "forward", times=grid))


def _require_arg(args, name):
    value = getattr(args, name)
    if value is None:
        raise PureBirthError(f"--{name} is required")
    return value


def _summary_row(summary):
    header = ["replicates", "master_seed", "mean", "std_error",
              "q05", "q25", "q50", "q75", "q95", "time_unit"]
    row = [summary.replicates, summary.master_seed, summary.mean,
           summary.std_error] + [summary.quantiles[q] for q in
                                 (0.05, 0.25, 0.50, 0.75, 0.95)]
    row.append(summary.time_unit)
    return header, row


def _cmd_simulate(args):
    model = build_rate_model(_model_spec(args))
    start = args.start or 1
    replicates = _require_arg(args, "replicates")
    seed = _require_arg(args, "seed")
    summary = estimate_absorption_time(model, start, replicates, seed,
                                       n_jobs=args.jobs or 1)
    if args.trajectories:
        with open(args.trajectories, "w", encoding="utf-8",
                  newline="") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(["replicate", "time", "state"])
            for i in range(replicates):
                path = simulate_path(model, start, replicate_stream(seed, i))
                for t, state in path.events:
                    writer.writerow([i, fmt(t), state])
    header, row = _summary_row(summary)
    _write_rows(args, header, [row],
                _metadata(args, "simulate", seed=seed, replicates=replicates))


_SWEEP_KEY = {"N": "N", "p": "p", "mu": "mu", "lambda": "lambda", "c": "c"}


def _cmd_sweep(args):
    param = _require_arg(args, "param")
    raw = _require_arg(args, "values")
    values = [v.strip() for v in raw.split(",") if v.strip()]
    if not values:
        raise PureBirthError("--values is empty")
    grid = [int(v) if param == "N" else float(v) for v in values]
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise PureBirthError("--values must be strictly increasing")
    rows = []
    for value in grid:
        spec = _model_spec(args)
        spec[_SWEEP_KEY[param]] = value
        try:
            model = build_rate_model(spec)
            report = expected_absorption_time(model, args.start or 1)
        except PureBirthError as exc:
            raise PureBirthError(f"sweep point {param}={value}: {exc}") from exc
        rows.append([value, report.exact_mean, report.approx_mean])
    _write_rows(args, [param, "exact_mean", "approx_mean"], rows,
                _metadata(args, "sweep", param=param))


def _cmd_explosion(args):
    spec = _model_spec(args)
    spec.setdefault("family", "powerlaw")
    spec["family"] = spec["family"] or "powerlaw"
    spec["exponent"] = spec["exponent"] if spec["exponent"] is not None else 2.0
    model = build_rate_model(spec)
    report = explosion_study(model, args.start or 1,
                             _require_arg(args, "replicates"),
                             _require_arg(args, "seed"),
                             n_jobs=args.jobs or 1)
    header, row = _summary_row(report.summary)
    header = ["cap", "analytic_mean", "limit_bound"] + header
    row = [report.cap, report.analytic_mean, report.limit_bound] + row
    _write_rows(args, header, [row], _metadata(args, "explosion"))


_COMMANDS = {
    "expect-time": _cmd_expect_time,
    "forward": _cmd_forward,
    "simulate": _cmd_simulate,
    "sweep": _cmd_sweep,
    "explosion": _cmd_explosion,
}


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "config", None):
            _apply_config(args, args.config)
        _COMMANDS[args.command](args)
    except (PureBirthError, OSError, ValueError) as exc:
        print(f"purebirth: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
