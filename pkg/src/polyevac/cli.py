"""Command-line interface.

Subcommands
    lb         enumerate configurations and report the polygon lower bound
    lb-config  solve the LP of a single configuration (no enumeration)
    ub         upper bound from the built-in plan or the local optimizer
    disk-lb    disk lower bounds derived from stored polygon values
    wsweep     weighted lower bounds over a grid of w (k = 1)
    verify     regression suites against the published tables
    export     write trajectory / verification table / curve files

Exit codes: 0 success, 1 verification failure, 2 usage or guardrail error.
Default worker count comes from the SOLVER_THREADS environment variable.
"""

from __future__ import annotations

import argparse
import sys

from .configspace import Configuration, FilterOptions
from .geometry import make_polygon
from .lp import config_lp_value
from .reductions import wdisk_lower_bound
from .report import (
    RunReport,
    curve_rows,
    disk_table,
    emit_curve,
    emit_trajectory,
    verify,
)
from .search import BudgetExceededError, DEFAULT_BUDGET, min_over_configs, w_sweep
from .upperbounds import NoKnownConfigurationError, evaluate_trajectory, ub_for

USAGE_ERROR = 2


def _fmt(x: float) -> str:
    return f"{x:.10f}"


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="polyevac", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True)

    lb = sub.add_parser("lb", help="enumerated polygon lower bound")
    lb.add_argument("--n", type=int, required=True)
    lb.add_argument("--k", type=int, required=True)
    lb.add_argument("--w", type=float, default=0.0)
    lb.add_argument("--threads", type=int, default=None)
    lb.add_argument("--checkpoint", default=None)
    lb.add_argument("--no-filters", action="store_true")
    lb.add_argument("--budget", type=float, default=DEFAULT_BUDGET)

    lbc = sub.add_parser("lb-config", help="LP value of one configuration")
    lbc.add_argument("--config", required=True,
                     help='text form, e.g. "n=3 k=1 rho=1,2,3 s=1,0,1"')
    lbc.add_argument("--w", type=float, default=0.0)
    lbc.add_argument("--presets", action="store_true",
                     help="pin leading distinct-servant visit times to 0")

    ub = sub.add_parser("ub", help="upper bound with witnessing trajectory")
    ub.add_argument("--n", type=int, required=True)
    ub.add_argument("--k", type=int, required=True)
    ub.add_argument("--w", type=float, default=0.0)
    ub.add_argument("--method", choices=["catalog", "optimize"],
                    default="catalog")
    ub.add_argument("--seed", default=None,
                    help="trajectory CSV to seed the optimizer")

    dl = sub.add_parser("disk-lb", help="derived disk lower bounds")
    dl.add_argument("--k", type=int, required=True)
    dl.add_argument("--n-list", default=None,
                    help="comma-separated polygon orders (default: stored rows)")

    ws = sub.add_parser("wsweep", help="weighted lower bounds over a w grid")
    ws.add_argument("--n", type=int, required=True)
    ws.add_argument("--from", dest="w_from", type=float, required=True)
    ws.add_argument("--to", dest="w_to", type=float, required=True)
    ws.add_argument("--step", type=float, required=True)
    ws.add_argument("--ub-step", type=float, default=None,
                    help="also compute optimizer upper bounds on this grid")
    ws.add_argument("--threads", type=int, default=None)
    ws.add_argument("--budget", type=float, default=DEFAULT_BUDGET)

    vf = sub.add_parser("verify", help="regression suites")
    vf.add_argument("--suite", choices=["fast", "full"], default="fast")
    vf.add_argument("--threads", type=int, default=None)

    ex = sub.add_parser("export", help="write result files")
    ex.add_argument("--what", choices=["trajectory", "table", "curve"],
                    required=True)
    ex.add_argument("--out", required=True)
    ex.add_argument("--n", type=int, default=None)
    ex.add_argument("--k", type=int, default=None)
    ex.add_argument("--w", type=float, default=0.0)
    ex.add_argument("--method", choices=["catalog", "optimize"],
                    default="catalog")
    ex.add_argument("--from", dest="w_from", type=float, default=0.0)
    ex.add_argument("--to", dest="w_to", type=float, default=None)
    ex.add_argument("--step", type=float, default=0.25)
    ex.add_argument("--n-list", default=None)
    ex.add_argument("--threads", type=int, default=None)
    ex.add_argument("--no-figure", action="store_true")
    return p


def _cmd_lb(args) -> int:
    opts = FilterOptions.none() if args.no_filters else FilterOptions()
    rec = min_over_configs(args.n, args.k, args.w, opts=opts,
                           threads=args.threads,
                           checkpoint_path=args.checkpoint,
                           budget=args.budget)
    print(f"lower_value {_fmt(rec.lower_value)}")
    print(f"raw_min {_fmt(rec.raw_min)}")
    print(f"argmin {rec.argmin_config.text()}")
    print(f"solved {rec.solved_count} pruned {rec.pruned_count} "
          f"wall_time {rec.wall_time:.1f}s")
    return 0


def _cmd_lb_config(args) -> int:
    c = Configuration.from_text(args.config)
    value = config_lp_value(c, make_polygon(c.n), args.w, presets=args.presets)
    print(_fmt(value))
    return 0


def _load_seed(path, n, k):
    import csv as _csv

    import numpy as np

    from .upperbounds import Trajectory

    with open(path, newline="") as fh:
        rows = list(_csv.DictReader(fh))
    times = [float(r["t"]) for r in rows]
    pos = np.zeros((k + 1, n + 1, 2))
    for j, r in enumerate(rows):
        for i in range(k + 1):
            pos[i, j] = (float(r[f"x{i}"]), float(r[f"y{i}"]))
    from .upperbounds import known_config
    return Trajectory(n, k, tuple(times), pos, known_config(n, k, 0.0))


def _cmd_ub(args) -> int:
    seed = _load_seed(args.seed, args.n, args.k) if args.seed else None
    value, tr = ub_for(args.n, args.k, args.w, method=args.method, seed=seed)
    bd = evaluate_trajectory(tr, make_polygon(args.n), args.w)
    print(f"upper_value {_fmt(value)}")
    print(f"argmax_stages {','.join(str(j) for j in bd.argmax_stages)}")
    print(f"config {tr.config.text()}")
    return 0


def _cmd_disk_lb(args) -> int:
    if args.n_list:
        n_list = [int(v) for v in args.n_list.split(",")]
    else:
        from . import references
        n_list = sorted(n for (n, k) in references.DISK_ROWS if k == args.k)
    rows = disk_table(args.k, n_list)
    for db in rows:
        print(f"n={db.n} k={db.k} polygon_lower {_fmt(db.polygon_lower)} "
              f"disk_lower {_fmt(db.disk_lower)}")
    best = max(rows, key=lambda d: d.disk_lower)
    print(f"best n={best.n} disk_lower {_fmt(best.disk_lower)}")
    return 0


def _cmd_wsweep(args) -> int:
    recs = w_sweep(args.n, args.w_from, args.w_to, args.step,
                   threads=args.threads, budget=args.budget)
    for rec in recs:
        db = wdisk_lower_bound(args.n, rec.w, rec.lower_value)
        print(f"w={rec.w:.4f} lower {_fmt(rec.lower_value)} "
              f"disk {_fmt(db.disk_lower)} argmin {rec.argmin_config.text()}")
    if args.ub_step:
        wv = args.w_from
        m = 0
        while wv <= args.w_to + 1e-12:
            value, _tr = ub_for(args.n, 1, min(wv, 1.0), method="optimize")
            print(f"w={wv:.4f} upper {_fmt(value)}")
            m += 1
            wv = args.w_from + m * args.ub_step
    return 0


def _cmd_verify(args) -> int:
    rep = verify(args.suite, threads=args.threads)
    print(rep.render_text())
    return 0 if rep.passed else 1


def _cmd_export(args) -> int:
    figure = not args.no_figure
    if args.what == "trajectory":
        if args.n is None or args.k is None:
            raise SystemExit("export --what trajectory needs --n and --k")
        value, tr = ub_for(args.n, args.k, args.w, method=args.method)
        files = emit_trajectory(tr, make_polygon(args.n), args.out,
                                w=args.w, figure=figure)
        print(f"upper_value {_fmt(value)}")
    elif args.what == "table":
        rep = verify("fast")
        rep.write_csv(args.out)
        files = [args.out]
        jpath = args.out.rsplit(".", 1)[0] + ".json"
        with open(jpath, "w") as fh:
            fh.write(rep.to_json())
        files.append(jpath)
        if not rep.passed:
            for e in rep.failures:
                print(f"FAIL {e.name}")
    elif args.what == "curve":
        if args.n is not None and args.w_to is not None:
            recs = w_sweep(args.n, args.w_from, args.w_to, args.step,
                           threads=args.threads)
            rows = curve_rows(recs)
            rows += curve_rows(
                [wdisk_lower_bound(args.n, r.w, r.lower_value) for r in recs])
            files = emit_curve(rows, args.out, figure=figure)
        elif args.k is not None:
            n_list = ([int(v) for v in args.n_list.split(",")]
                      if args.n_list else None)
            if n_list is None:
                from . import references
                n_list = sorted(n for (n, kk) in references.DISK_ROWS
                                if kk == args.k)
            files = emit_curve(disk_table(args.k, n_list), args.out,
                               figure=figure)
        else:
            raise SystemExit("export --what curve needs --n/--to (w sweep) "
                             "or --k (disk table)")
    for f in files:
        print(f"wrote {f}")
    return 0


_COMMANDS = {
    "lb": _cmd_lb,
    "lb-config": _cmd_lb_config,
    "ub": _cmd_ub,
    "disk-lb": _cmd_disk_lb,
    "wsweep": _cmd_wsweep,
    "verify": _cmd_verify,
    "export": _cmd_export,
}


def cli_main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except NoKnownConfigurationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
