"""
Command-line entry point.

Exit codes: 0 success, 2 validation error, 3 numerical failure. Errors go to
stderr followed by a machine-readable ``key=value`` trailer line.
"""

import argparse
import itertools
import json
import math
import sys

from . import calibration, climate, decoupling
from .errors import ConvergenceError, DomainError, ValidationError
from .model import FIELDS, sample_times, trajectory
from .presets import PRESETS, preset_config
from .scenario_io import (ScenarioConfig, emit_table, emit_trajectory, format_number,
                          parse_config, read_cost_series)

EXIT_OK, EXIT_VALIDATION, EXIT_NUMERICAL = 0, 2, 3

# CLI flag -> config key
SCENARIO_FLAGS = {"theta0": "theta0", "lambda_": "lambda", "h": "h", "p": "p",
                  "gamma": "gamma", "r_b": "r_b", "r": "r", "a": "a", "c_f": "c_f", "y0": "y0"}


class UsageError(ValidationError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message, key="argv")


def rate(text):
    """Parse a per-year rate; '2.5%' is accepted and means 0.025."""
    s = str(text).strip()
    try:
        return float(s[:-1]) / 100.0 if s.endswith("%") else float(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a rate: {text!r}") from None


def _add_scenario_args(sp, sampling=True):
    g = sp.add_argument_group("scenario")
    src = g.add_mutually_exclusive_group()
    src.add_argument("--preset", choices=None, help=f"one of {', '.join(sorted(PRESETS))}")
    src.add_argument("--config", help="path to a JSON scenario configuration")
    g.add_argument("--theta0", type=float)
    g.add_argument("--lambda", dest="lambda_", type=float)
    g.add_argument("--h", type=rate)
    g.add_argument("--p", type=float)
    g.add_argument("--gamma", type=float)
    g.add_argument("--r-b", dest="r_b", type=rate)
    g.add_argument("--r", type=rate)
    g.add_argument("--a", type=float)
    g.add_argument("--c-f", dest="c_f", type=float)
    g.add_argument("--y0", type=float)
    g.add_argument("--override-bounds", action="store_true")
    if sampling:
        g.add_argument("--t-max", type=float)
        g.add_argument("--dt", type=float)
    sp.add_argument("-o", "--output", help="output file (default: stdout)")


def _config_from_args(args):
    if args.preset is not None:
        cfg = preset_config(args.preset)
    elif args.config is not None:
        with open(args.config, encoding="utf-8") as fh:
            cfg = parse_config(fh.read())
    else:
        cfg = None
    updates = {key: getattr(args, flag) for flag, key in SCENARIO_FLAGS.items()
               if getattr(args, flag, None) is not None}
    if cfg is None:
        form = "absolute" if {"a", "c_f", "y0"} & updates.keys() else "relative"
        cfg = ScenarioConfig(form, {})
    params = dict(cfg.params)
    if "gamma" in updates:
        params.pop("p", None)
    if "p" in updates:
        params.pop("gamma", None)
    params.update(updates)
    doc = cfg.to_dict()
    doc[cfg.form] = params
    if getattr(args, "t_max", None) is not None:
        doc["sampling"]["t_max"] = args.t_max
    if getattr(args, "dt", None) is not None:
        doc["sampling"]["dt"] = args.dt
    if args.override_bounds:
        doc["override_bounds"] = True
    return parse_config(json.dumps(doc))


def _write(args, data):
    if args.output:
        with open(args.output, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def cmd_simulate(args):
    cfg = _config_from_args(args)
    fmt = args.format or cfg.output["format"]
    points = trajectory(cfg.to_scenario(), cfg.times())
    _write(args, emit_trajectory(points, fmt))
    return EXIT_OK


def cmd_breakeven(args):
    value = decoupling.breakeven_rate(args.lambda_, args.h, args.theta)
    print("none" if value is None else format_number(value))
    return EXIT_OK


def cmd_critical_time(args):
    print(format_number(decoupling.critical_time(args.theta0, args.r)))
    return EXIT_OK


def cmd_required_h(args):
    if not 0 < args.fraction < 1:
        raise ValidationError("must lie in (0, 1)", key="fraction")
    scn = _config_from_args(args).to_scenario()
    t_inf = decoupling.critical_time(scn.theta0, scn.r) if scn.r > 0 else math.nan
    if math.isinf(t_inf):
        raise ValidationError("theta0 = 0 gives an infinite critical time; use --t-max",
                              key="theta0")
    limit = args.fraction * t_inf
    dt = args.dt if args.dt is not None else 0.5
    times = sample_times(limit, dt) if limit >= dt else sample_times(dt, dt)[:1]
    demand = decoupling.required_h(scn, times, asymptotic=args.asymptotic)
    _write(args, emit_table(("t", "h_required"), zip(times, demand.h_required)))
    return EXIT_OK


def _report(fr):
    return {"kind": fr.kind, "n": fr.n, "params": fr.params, "stderr": fr.stderr,
            "rss": fr.rss, "converged": fr.converged, "in_range": fr.in_range,
            "flags": fr.flags}


def _read_series(path):
    with open(path, encoding="utf-8") as fh:
        return read_cost_series(fh.read(), label=path)


def cmd_fit(args):
    series = _read_series(args.input)
    kinds = args.kind.split(",") if args.kind != "all" else list(calibration.CURVE_KINDS)
    results = [calibration.fit(series, k, max_iter=args.max_iter) for k in kinds]
    doc = {"series": series.label, "fits": [_report(r) for r in results]}
    _write(args, (json.dumps(doc, indent=2, sort_keys=True) + "\n").encode())
    bad = [r.kind for r in results if not r.converged]
    if bad:
        raise ConvergenceError(f"fit did not converge for: {', '.join(bad)}")
    return EXIT_OK


def cmd_hindcast(args):
    series = _read_series(args.input)
    kinds = [k.strip() for k in args.kinds.split(",") if k.strip()]
    res = calibration.hindcast_compare(series, kinds, split=args.split)
    doc = {"series": series.label, "n_train": res.n_train, "ranking": res.ranking,
           "scores": res.scores, "fits": {k: _report(f) for k, f in res.fits.items()}}
    _write(args, (json.dumps(doc, indent=2, sort_keys=True) + "\n").encode())
    return EXIT_OK


def cmd_climate(args):
    cfg = _config_from_args(args)
    scn = cfg.to_scenario()
    cp = climate.ClimateParams(args.kappa0, args.eta, args.rho,
                               override_bounds=args.override_bounds)
    times = cfg.times()
    em = climate.cumulative_emissions(scn, cp, times, mode=args.mode, variant=args.variant)
    dT = cp.rho * em
    _write(args, emit_table(("t", "emissions", "delta_T"), zip(times, em, dT)))
    return EXIT_OK


def _parse_grid(specs):
    grid = []
    for spec in specs:
        key, sep, values = spec.partition("=")
        key = key.strip().replace("-", "_")
        if not sep or not values:
            raise ValidationError(f"expected KEY=v1,v2,..., got {spec!r}", key="grid")
        key = "lambda" if key in ("lambda", "lambda_") else key
        if key not in SCENARIO_FLAGS.values():
            raise ValidationError("unknown scenario key", key=f"grid.{key}")
        try:
            grid.append((key, [rate(v) for v in values.split(",")]))
        except argparse.ArgumentTypeError as exc:
            raise ValidationError(str(exc), key=f"grid.{key}") from None
    return grid


def cmd_sweep(args):
    base = _config_from_args(args)
    grid = _parse_grid(args.grid)
    if not grid:
        raise ValidationError("at least one --grid KEY=values is required", key="grid")
    keys = [k for k, _ in grid]
    header = ("grid_index",) + tuple(keys) + FIELDS
    times = base.times()
    rows = []
    for idx, combo in enumerate(itertools.product(*(v for _, v in grid))):
        upd = dict(zip(keys, combo))
        params = dict(base.params)
        if "gamma" in upd:
            params.pop("p", None)
        if "p" in upd:
            params.pop("gamma", None)
        params.update(upd)
        doc = base.to_dict()
        doc[base.form] = params
        scn = parse_config(json.dumps(doc)).to_scenario()
        for pt in trajectory(scn, times):
            rows.append((str(idx),) + combo + tuple(getattr(pt, f) for f in FIELDS))
    _write(args, emit_table(header, rows))
    return EXIT_OK


def build_parser():
    parser = _Parser(prog="thermolearn",
                     description="Learning-curve exergy scenarios and decoupling analysis.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("simulate", help="cost and exergy trajectory")
    _add_scenario_args(sp)
    sp.add_argument("--format", choices=("csv", "svg"))
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("breakeven", help="growth rate with stationary asymptotic exergy")
    sp.add_argument("--lambda", dest="lambda_", type=float, required=True)
    sp.add_argument("--h", type=rate, required=True)
    sp.add_argument("--theta", type=float, required=True)
    sp.set_defaults(func=cmd_breakeven)

    sp = sub.add_parser("critical-time", help="time at which required h diverges")
    sp.add_argument("--theta0", type=float, required=True)
    sp.add_argument("--r", type=rate, required=True)
    sp.set_defaults(func=cmd_critical_time)

    sp = sub.add_parser("required-h", help="innovation rate holding exergy constant")
    _add_scenario_args(sp, sampling=False)
    sp.add_argument("--dt", type=float)
    sp.add_argument("--fraction", type=float, default=0.99,
                    help="stop at this fraction of the critical time")
    sp.add_argument("--asymptotic", action="store_true", help="drop the policy-shock term")
    sp.set_defaults(func=cmd_required_h)

    sp = sub.add_parser("fit", help="fit learning-curve models to a t,Q,c CSV")
    sp.add_argument("--input", required=True)
    sp.add_argument("--kind", default="all", help="wright, moore, combined, floor or all")
    sp.add_argument("--max-iter", type=int, default=calibration.FLOOR_MAX_ITER)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_fit)

    sp = sub.add_parser("hindcast", help="rank models by held-out error")
    sp.add_argument("--input", required=True)
    sp.add_argument("--kinds", default=",".join(calibration.CURVE_KINDS))
    sp.add_argument("--split", type=float, default=0.6)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_hindcast)

    sp = sub.add_parser("climate", help="cumulative emissions and warming")
    _add_scenario_args(sp)
    sp.add_argument("--kappa0", type=float, required=True)
    sp.add_argument("--eta", type=rate, default=0.0)
    sp.add_argument("--rho", type=float, required=True, help="degC per unit cumulative carbon")
    sp.add_argument("--mode", choices=climate.MODES, default="asymptotic")
    sp.add_argument("--variant", choices=climate.VARIANTS, default="direct")
    sp.set_defaults(func=cmd_climate)

    sp = sub.add_parser("sweep", help="evaluate trajectories over a parameter grid")
    _add_scenario_args(sp)
    sp.add_argument("--grid", action="append", default=[], metavar="KEY=v1,v2,...")
    sp.set_defaults(func=cmd_sweep)
    return parser


def _fail(exc, code):
    kind = type(exc).__name__
    print(f"error: {exc}", file=sys.stderr)
    trailer = [f"error={kind}", f"exit_code={code}"]
    key = getattr(exc, "key", None)
    if key:
        trailer.insert(1, f"key={key}")
    print(" ".join(trailer), file=sys.stderr)
    return code


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except (ValidationError, DomainError) as exc:
        return _fail(exc, EXIT_VALIDATION)
    except OSError as exc:
        return _fail(exc, EXIT_VALIDATION)
    except ConvergenceError as exc:
        return _fail(exc, EXIT_NUMERICAL)
    except (FloatingPointError, ArithmeticError) as exc:
        return _fail(exc, EXIT_NUMERICAL)


if __name__ == "__main__":
    sys.exit(main())
