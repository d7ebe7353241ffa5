"""
PathCuts - path cover and path pack inequalities for fixed-charge flow on a path.

Generates lot-sizing instances, separates cuts at LP optima, solves instances
with the built-in branch-and-cut, runs experiment sweeps and checks the fast
routines against brute-force oracles.
"""

import argparse
import json
import os
import sys

from src.config import (CUT_DEPTH, CUT_MODE, CUT_ROUNDS, CUTS_FOLDER, EXPERIMENT_CSV, EXPERIMENT_SEEDS,
                        INSTANCE_FOLDER, JOBS, MAX_PATH_FRAC, NODE_LIMIT, PATH_PRESETS, RESULTS_DB_PATH,
                        SEPARATE_IN_TREE, SHOW_PROGRESS, TIME_LIMIT, VALID_CUT_MODES, validate_config)
from src.exceptions import PathCutsError
from src.experiment import ExperimentConfig, run_experiment, stored_runs
from src.instance import generate_lotsizing, load_instance, save_instance, transform_supply
from src.mincut import COVER, PACK, compute_profile, make_selection
from src.report import format_table, read_csv, summarize, write_csv
from src.results import ResultStore
from src.separation import SeparationConfig, separate
from src.solve import LpModel, SolverConfig, branch_and_cut, solve_lp
from src.verify import SCALES, SCOPES, run_verification

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


class UsageError(Exception):
    """Bad command-line input detected after argument parsing."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"❌ Error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def print_header(title):
    print(f"\n PathCuts - {title}")
    print("=" * 60)


def _load(path):
    if not os.path.exists(path):
        raise UsageError(f"instance file not found: {path}")
    inst = load_instance(path)
    return transform_supply(inst)


# ----------------------------------------------------------------------
# generate
# ----------------------------------------------------------------------

def cmd_generate(args):
    print_header("Instance generation")
    out = args.out or INSTANCE_FOLDER
    try:
        os.makedirs(out, exist_ok=True)
    except OSError as e:
        raise UsageError(f"cannot create output folder {out}: {e}")
    written = 0
    for n in args.n:
        for f in args.f:
            for c in args.c:
                for seed in range(args.seed, args.seed + args.seeds):
                    inst = generate_lotsizing(n, f, c, seed)
                    path = os.path.join(out, f"lot_n{n}_f{f}_c{c}_s{seed}.json")
                    try:
                        save_instance(inst, path)
                    except OSError as e:
                        raise UsageError(f"cannot write {path}: {e}")
                    written += 1
    print(f"✅ Wrote {written} instances to {out}")
    return EXIT_OK


# ----------------------------------------------------------------------
# cut
# ----------------------------------------------------------------------

def dump_profile(inst, args):
    k, l = args.dump_profile
    mode = PACK if args.pack else COVER
    sel = make_selection(inst, (k, l), args.s_plus or (), args.s_minus or (), args.l_minus or (), mode)
    profile = compute_profile(inst, sel)
    data = {"selection": sel.snapshot(), "profile": profile.to_dict()}
    path = args.out or os.path.join(CUTS_FOLDER, f"profile_{k}_{l}.json")
    with open(path, "w", encoding="utf-8") as f:
        json.dump(data, f, indent=2)
        f.write("\n")
    kind = "cover" if profile.is_cover() else "pack" if profile.is_pack() else "neither cover nor pack"
    print(f"📊 Window [{k},{l}]: v = {profile.v} ({kind})")
    print(f"   lambda = {list(profile.lambda_)}")
    print(f"   mu     = {list(profile.mu)}")
    print(f"✅ Profile written to {path}")


def cmd_cut(args):
    print_header("Cut separation")
    inst = _load(args.instance)
    if args.dump_profile:
        dump_profile(inst, args)
        return EXIT_OK

    model = LpModel(inst)
    lp = solve_lp(model)
    print(f"📊 LP relaxation: z = {lp.objective:.4f}")
    cfg = SeparationConfig(max_path_frac=args.max_path_frac, max_path_len=args.max_path_len,
                           mode=args.mode, verbose=not args.quiet)
    cuts = separate(inst, lp.point, cfg)
    if not cuts:
        print("ℹ️  No violated inequality found at the LP optimum.")
        return EXIT_OK

    base = os.path.splitext(os.path.basename(args.instance))[0]
    path = args.out or os.path.join(CUTS_FOLDER, f"{base}_{args.mode}.lp")
    with open(path, "w", encoding="utf-8") as f:
        for cut in cuts:
            f.write(cut.to_lp() + "\n")
    print(f"✂️  {len(cuts)} violated inequalities (most violated first):")
    for cut in cuts[:5]:
        print(f"   {float(cut.violation(lp.point)):10.4f}  {cut.provenance}")
    print(f"✅ Cuts written to {path}")
    return EXIT_OK


# ----------------------------------------------------------------------
# solve
# ----------------------------------------------------------------------

def _fmt(value, digits=2):
    return "-" if value is None else f"{value:.{digits}f}"


def cmd_solve(args):
    print_header("Branch-and-cut")
    inst = _load(args.instance)
    cfg = SolverConfig(
        mode=args.cuts,
        cut_rounds=args.cut_rounds,
        cut_depth=args.cut_depth,
        separate_in_tree=args.in_tree or args.cut_depth > 0,
        time_limit=args.time_limit,
        node_limit=args.node_limit,
        max_path_frac=args.max_path_frac,
        max_path_len=args.max_path_len,
        show_progress=not args.quiet,
    )
    report = branch_and_cut(inst, cfg)

    print(f"📊 Status: {report.status}")
    print(f"  z_INIT = {_fmt(report.z_init, 4)} | z_ROOT = {_fmt(report.z_root, 4)}")
    print(f"  z_UB = {_fmt(report.z_ub, 4)} | z_LB = {_fmt(report.z_lb, 4)}")
    print(f"  init gap = {_fmt(report.init_gap)}% | gap imp = {_fmt(report.gap_imp)}%"
          f" | end gap = {_fmt(None if report.end_gap is None else 100 * report.end_gap)}%")
    print(f"  cuts = {report.cuts_added} | nodes = {report.nodes_explored} | time = {report.wall_time:.1f}s")

    if args.json:
        with open(args.json, "w", encoding="utf-8") as f:
            json.dump(report.to_dict(), f, indent=2)
            f.write("\n")
        print(f"✅ Report written to {args.json}")
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as f:
            f.write(report.to_csv())
        print(f"✅ CSV row written to {args.csv}")

    if report.z_ub is None:
        print("❌ No feasible solution found.")
        return EXIT_FAILURE
    return EXIT_OK


# ----------------------------------------------------------------------
# experiment / report
# ----------------------------------------------------------------------

def cmd_experiment(args):
    print_header("Experiment")
    for mode in args.modes:
        if mode not in VALID_CUT_MODES:
            raise UsageError(f"unknown cut mode '{mode}'")
    for preset in args.preset:
        if preset not in PATH_PRESETS:
            raise UsageError(f"unknown path preset '{preset}' (choose from {', '.join(PATH_PRESETS)})")

    cfg = ExperimentConfig(n=args.n, f=args.f, c=args.c, seeds=args.seeds, modes=args.modes,
                           presets=args.preset, time_limit=args.time_limit, node_limit=args.node_limit,
                           jobs=args.jobs, show_progress=not args.quiet)
    store = ResultStore(RESULTS_DB_PATH)
    ran, skipped, failed = run_experiment(cfg, store, fresh=args.fresh)
    print(f"✅ Ran {ran} tasks ({skipped} already stored)")
    if failed:
        print(f"⚠️  {failed} tasks failed; their errors are stored with the runs")

    runs = stored_runs(cfg, store)
    path = args.csv or EXPERIMENT_CSV
    write_csv(runs, path)
    print(f"💾 Per-instance rows written to {path}\n")
    print(format_table(summarize(runs)))
    print("=" * 60)
    return EXIT_OK


def cmd_report(args):
    print_header("Report")
    if args.csv:
        if not os.path.exists(args.csv):
            raise UsageError(f"CSV file not found: {args.csv}")
        runs = read_csv(args.csv)
    else:
        runs = ResultStore(RESULTS_DB_PATH).get_runs()
    if not runs:
        print("📭 No runs to report. Run `python main.py experiment` first.")
        return EXIT_OK
    print(format_table(summarize(runs)))
    print("=" * 60)
    return EXIT_OK


# ----------------------------------------------------------------------
# verify
# ----------------------------------------------------------------------

def cmd_verify(args):
    print_header(f"Verification ({args.scope}, {args.scale})")
    results = run_verification(args.scope, args.scale, args.seed, show_progress=not args.quiet)
    failed = False
    for suite in results:
        if suite.passed:
            print(f"✅ {suite.name}: {suite.checked} checks passed")
        else:
            failed = True
            print(f"❌ {suite.name}: {len(suite.failures)} failures in {suite.checked} checks")
            for message in suite.failures[:10]:
                print(f"   - {message}")
    print("=" * 60)
    return EXIT_FAILURE if failed else EXIT_OK


# ----------------------------------------------------------------------
# argument parsing
# ----------------------------------------------------------------------

def build_parser():
    parser = _Parser(prog="main.py", description="Path cover and path pack cutting planes.")
    parser.add_argument("--quiet", action="store_true", help="disable progress bars")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("generate", help="write random lot-sizing instances")
    p.add_argument("--n", type=int, nargs="+", default=[50])
    p.add_argument("--f", type=int, nargs="+", default=[100])
    p.add_argument("--c", type=int, nargs="+", default=[5])
    p.add_argument("--seeds", type=int, default=EXPERIMENT_SEEDS, help="instances per (n, f, c)")
    p.add_argument("--seed", type=int, default=1, help="first seed")
    p.add_argument("--out", help=f"output folder (default {INSTANCE_FOLDER})")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("cut", help="separate cuts at the LP optimum of an instance")
    p.add_argument("instance")
    p.add_argument("--mode", choices=VALID_CUT_MODES, default=CUT_MODE)
    p.add_argument("--max-path-frac", type=float, default=MAX_PATH_FRAC)
    p.add_argument("--max-path-len", type=int)
    p.add_argument("--out")
    p.add_argument("--dump-profile", type=int, nargs=2, metavar=("K", "L"))
    p.add_argument("--s-plus", type=int, nargs="*")
    p.add_argument("--s-minus", type=int, nargs="*")
    p.add_argument("--l-minus", type=int, nargs="*")
    p.add_argument("--pack", action="store_true", help="profile in pack mode")
    p.set_defaults(func=cmd_cut)

    p = sub.add_parser("solve", help="solve an instance with branch-and-cut")
    p.add_argument("instance")
    p.add_argument("--cuts", choices=VALID_CUT_MODES, default=CUT_MODE)
    p.add_argument("--time-limit", type=float, default=TIME_LIMIT)
    p.add_argument("--node-limit", type=int, default=NODE_LIMIT)
    p.add_argument("--cut-rounds", type=int, default=CUT_ROUNDS)
    p.add_argument("--cut-depth", type=int, default=CUT_DEPTH)
    p.add_argument("--in-tree", action="store_true", default=SEPARATE_IN_TREE)
    p.add_argument("--max-path-frac", type=float, default=MAX_PATH_FRAC)
    p.add_argument("--max-path-len", type=int)
    p.add_argument("--json", help="write the report as JSON")
    p.add_argument("--csv", help="write the report as a CSV row")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("experiment", help="run a sweep and store the results")
    p.add_argument("--n", type=int, nargs="+", default=None)
    p.add_argument("--f", type=int, nargs="+", default=None)
    p.add_argument("--c", type=int, nargs="+", default=None)
    p.add_argument("--seeds", type=int, default=EXPERIMENT_SEEDS)
    p.add_argument("--modes", nargs="+", default=["spi", "mspi"])
    p.add_argument("--preset", nargs="+", default=["half"])
    p.add_argument("--time-limit", type=float, default=TIME_LIMIT)
    p.add_argument("--node-limit", type=int, default=NODE_LIMIT)
    p.add_argument("--jobs", type=int, default=JOBS)
    p.add_argument("--fresh", action="store_true", help="rerun tasks already stored")
    p.add_argument("--csv", help=f"per-instance CSV (default {EXPERIMENT_CSV})")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("verify", help="check fast routines against oracles")
    p.add_argument("--scope", choices=SCOPES, default="all")
    p.add_argument("--scale", choices=list(SCALES), default="quick")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("report", help="summary table of stored or CSV runs")
    p.add_argument("--csv", help="read runs from this CSV instead of the result store")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    args.quiet = args.quiet or not SHOW_PROGRESS

    if args.command == "experiment":
        defaults = ExperimentConfig()
        args.n = args.n or defaults.n
        args.f = args.f or defaults.f
        args.c = args.c or defaults.c
    validate_config(
        max_path_frac=getattr(args, "max_path_frac", None),
        cut_mode=getattr(args, "cuts", None) or getattr(args, "mode", None),
    )

    try:
        return args.func(args)
    except KeyboardInterrupt:
        print("\n\n⚠️  Run cancelled by user.")
        return EXIT_FAILURE
    except UsageError as e:
        print(f"❌ Error: {e}")
        return EXIT_USAGE
    except PathCutsError as e:
        print(f"❌ Error: {e}")
        return EXIT_FAILURE
    except (OSError, RuntimeError) as e:
        print(f"❌ Error: {e}")
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
