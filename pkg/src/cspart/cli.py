"""Command line interface.

Subcommands: generate, ccsp, dcsp, lifetime, campaign, check.
Exit codes: 0 success, 2 invalid configuration, 3 invariant violation.
"""

import argparse
import sys

from . import ccsp as ccsp_mod
from . import dcsp as dcsp_mod
from . import geometry, harness
from .comm_graph import build_comm_graph


def _add_deployment_flags(p, with_seed_default=True):
    p.add_argument("--n", type=int, default=100, help="number of nodes")
    p.add_argument("--region", type=float, nargs=2, default=[50.0, 50.0],
                   metavar=("W", "H"), help="query region width and height")
    p.add_argument("--grid", type=int, nargs=2, metavar=("R", "C"),
                   help="grid rows and cols (default: derived from ranges)")
    p.add_argument("--s", type=float, default=36.0, help="sensing range")
    p.add_argument("--t", type=float, default=36.0, help="transmission range")
    p.add_argument("--seed", type=int, default=1, help="deployment/protocol seed")
    p.add_argument("--in", dest="infile", metavar="FILE",
                   help="read the deployment from a file instead of generating")


def _add_energy_flags(p):
    p.add_argument("--e0", type=float, default=100.0, help="initial energy")
    p.add_argument("--active-cost", type=float, default=1.0,
                   help="energy drained per active round")
    p.add_argument("--tx-cost", type=float, default=0.01,
                   help="energy drained per transmission")
    p.add_argument("--threshold", type=float, default=10.0,
                   help="energy level that triggers fault recovery")


def _load_deployment(args):
    if args.infile:
        return geometry.read_deployment(args.infile)
    w, h = args.region
    if args.grid:
        grid = geometry.make_grid_explicit(w, h, args.grid[0], args.grid[1],
                                           args.s, args.t)
    else:
        grid = geometry.make_grid_from_ranges(w, h, args.s, args.t)
    if not grid.guarantee_ok:
        print("warning: block diagonal exceeds min(S, T); "
              "single-node block coverage is not guaranteed", file=sys.stderr)
    return geometry.deploy(args.n, grid, args.s, args.t, args.seed)


def _write(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_generate(args):
    dep = _load_deployment(args)
    _write(geometry.format_deployment(dep), args.out)
    return 0


def cmd_ccsp(args):
    dep = _load_deployment(args)
    g = build_comm_graph(dep)
    result = ccsp_mod.ccsp_partition(g, dep)
    _write(ccsp_mod.format_partition_report(result), args.out)
    return 0


def cmd_dcsp(args):
    dep = _load_deployment(args)
    g = build_comm_graph(dep)
    trace = [] if args.trace else None
    out = dcsp_mod.run_dcsp(g, dep, args.lp, args.seed, trace=trace)
    if args.trace:
        with open(args.trace, "w") as fh:
            fh.write("\n".join(trace) + ("\n" if trace else ""))
    report = ccsp_mod.format_partition_report(out)
    report += (f"failed_partitions: {out.failed_partition_count}\n"
               f"rounds: {out.rounds}\ntx_total: {out.tx_total}\n")
    _write(report, args.out)
    return 0


def cmd_lifetime(args):
    dep = _load_deployment(args)
    g = build_comm_graph(dep)
    energy = dcsp_mod.EnergyConfig(args.e0, args.active_cost, args.tx_cost,
                                   args.threshold)
    trace = [] if args.trace else None
    rep = dcsp_mod.lifetime_simulation(g, dep, args.lp, energy, args.seed,
                                       trace=trace)
    if args.trace:
        with open(args.trace, "w") as fh:
            fh.write("\n".join(trace) + ("\n" if trace else ""))
    lines = [f"partitions: {rep.partition_count}",
             f"lifetime_rounds: {rep.lifetime_rounds}",
             f"repair_messages: {rep.repair_messages}"]
    for lid in sorted(rep.service_rounds):
        lines.append(f"service {lid}: {rep.service_rounds[lid]}")
    _write("\n".join(lines) + "\n", args.out)
    return 0


def _campaign_config(args):
    grids = args.grid or [[2, 2], [3, 3], [4, 4]]
    energy = dcsp_mod.EnergyConfig(args.e0, args.active_cost, args.tx_cost,
                                   args.threshold)
    return harness.ExperimentConfig(
        n_values=tuple(args.n),
        grids=tuple((r, c) for r, c in grids),
        region=tuple(args.region),
        S=args.s,
        T=args.t,
        L_P=args.lp,
        reps=args.reps,
        base_seed=args.seed,
        algorithms=tuple(args.algorithms.split(",")),
        energy=energy,
        timing=args.timing,
    )


def cmd_campaign(args):
    cfg = _campaign_config(args)
    rows = harness.run_experiment(cfg)
    _write(harness.emit_csv(rows), args.out)
    if args.figures:
        from .plots import render_figures
        for path in render_figures(rows, args.figures):
            print(f"wrote {path}", file=sys.stderr)
    return 0


def cmd_check(args):
    cfg = _campaign_config(args)
    with open(args.infile) as fh:
        rows = harness.parse_csv(fh.read())
    problems = harness.check_rows(rows, cfg)
    for p in problems:
        print(p, file=sys.stderr)
    if problems:
        return 3
    print(f"ok: {len(rows)} rows verified")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="cspart",
        description="Connected set cover partitioning of sensor fields",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a deployment file")
    _add_deployment_flags(p)
    p.add_argument("--out", metavar="FILE", help="output file (default stdout)")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("ccsp", help="run the centralized algorithm")
    _add_deployment_flags(p)
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_ccsp)

    p = sub.add_parser("dcsp", help="run the distributed protocol")
    _add_deployment_flags(p)
    p.add_argument("--lp", type=float, default=0.1, help="leader probability")
    p.add_argument("--trace", metavar="FILE", help="write the event trace")
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_dcsp)

    p = sub.add_parser("lifetime", help="run the round-robin lifetime simulation")
    _add_deployment_flags(p)
    p.add_argument("--lp", type=float, default=0.1, help="leader probability")
    _add_energy_flags(p)
    p.add_argument("--trace", metavar="FILE", help="write the event trace")
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_lifetime)

    p = sub.add_parser("campaign", help="run a full experiment campaign")
    p.add_argument("--n", type=int, nargs="+",
                   default=[50, 100, 150, 200, 250, 300, 350])
    p.add_argument("--region", type=float, nargs=2, default=[50.0, 50.0],
                   metavar=("W", "H"))
    p.add_argument("--grid", type=int, nargs=2, action="append",
                   metavar=("R", "C"),
                   help="grid to test; repeatable (default 2x2 3x3 4x4)")
    p.add_argument("--s", type=float, default=36.0)
    p.add_argument("--t", type=float, default=36.0)
    p.add_argument("--lp", type=float, default=0.1)
    p.add_argument("--reps", type=int, default=20)
    p.add_argument("--seed", type=int, default=1, help="base seed")
    p.add_argument("--algorithms", default="ccsp,dcsp",
                   help="comma-separated subset of ccsp,dcsp,lifetime")
    _add_energy_flags(p)
    p.add_argument("--timing", action="store_true",
                   help="record wall time per row (breaks byte-identical reruns)")
    p.add_argument("--figures", metavar="DIR",
                   help="also render summary figures into this directory")
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_campaign)

    p = sub.add_parser("check", help="re-run and verify a campaign CSV")
    p.add_argument("--in", dest="infile", metavar="FILE", required=True)
    p.add_argument("--n", type=int, nargs="+", default=[0])   # unused; from CSV
    p.add_argument("--region", type=float, nargs=2, default=[50.0, 50.0],
                   metavar=("W", "H"))
    p.add_argument("--grid", type=int, nargs=2, action="append",
                   metavar=("R", "C"))
    p.add_argument("--s", type=float, default=36.0)
    p.add_argument("--t", type=float, default=36.0)
    p.add_argument("--lp", type=float, default=0.1)
    p.add_argument("--reps", type=int, default=20)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--algorithms", default="ccsp,dcsp")
    _add_energy_flags(p)
    p.set_defaults(func=cmd_check, timing=False)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
