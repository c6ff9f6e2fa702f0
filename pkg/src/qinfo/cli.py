"""Command-line harness: superpos, mems, bloch, additivity subcommands.

Each subcommand writes a CSV (UTF-8, header row, '.' decimal, 12
significant digits) to --out or stdout, reproducible from its flags and
seed. Exit codes: 0 success, 2 flag errors, 3 optimization failure.
"""

import argparse
import csv
import sys

from . import experiments
from .errors import OptimizationFailedError, QinfoError
from .optimizer import OptimizerConfig


def _fmt(value):
    if isinstance(value, float):
        return format(value, ".12g")
    return value


def _write_csv(path, header, rows):
    stream = open(path, "w", newline="", encoding="utf-8") if path else sys.stdout
    try:
        writer = csv.writer(stream)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(row[col]) for col in header])
    finally:
        if path:
            stream.close()


def _add_common(parser):
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", default=None, help="CSV output path (default stdout)")
    parser.add_argument("--tol", type=float, default=1e-6)
    parser.add_argument("--threads", type=int, default=1,
                        help="accepted for compatibility; execution is sequential")


def _add_opt_flags(parser, starts, sweeps, climb_iters, cycles):
    parser.add_argument("--opt-starts", type=int, default=starts)
    parser.add_argument("--opt-sweeps", type=int, default=sweeps)
    parser.add_argument("--opt-climb-iters", type=int, default=climb_iters)
    parser.add_argument("--opt-cycles", type=int, default=cycles)


def _opt_config(args):
    return OptimizerConfig(
        n_starts=args.opt_starts,
        anneal_sweeps=args.opt_sweeps,
        climb_max_iters=args.opt_climb_iters,
        max_cycles=args.opt_cycles,
        consistency_tol=args.tol,
        seed=args.seed,
    )


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qinfo", description="Quantum information experiment sweeps"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("superpos", help="entanglement of superposed random pure pairs")
    p.add_argument("--pairs", type=int, default=10)
    p.add_argument("--alphas", type=int, default=21, help="number of |alpha|^2 points")
    p.add_argument("--bounds", nargs="*", default=[],
                   help="bound plug-ins to evaluate (lps/gour ship as stubs)")
    p.add_argument("--phases", type=int, default=1,
                   help="number of relative phases to sweep on beta")
    _add_common(p)

    p = sub.add_parser("mems", help="most-entangling unitary over a diagonal grid")
    p.add_argument("--resolution", type=float, default=0.05,
                   help="grid step in p and q (a fine grid like 0.005 is hours of compute)")
    _add_opt_flags(p, starts=2, sweeps=30, climb_iters=80, cycles=4)
    _add_common(p)

    p = sub.add_parser("bloch", help="generator-coordinate scatter of random states")
    p.add_argument("--n", type=int, default=3, choices=[2, 3, 4])
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--ci", type=int, default=0)
    p.add_argument("--cj", type=int, default=1)
    _add_common(p)

    p = sub.add_parser("additivity", help="relative-entanglement additivity study")
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--mode", choices=["sample", "extremize"], default="sample")
    _add_opt_flags(p, starts=1, sweeps=10, climb_iters=12, cycles=2)
    _add_common(p)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "superpos":
            rows = experiments.run_superpos(
                args.pairs, args.alphas, args.seed,
                bounds=args.bounds, n_phases=args.phases,
            )
        elif args.command == "mems":
            n_points = (int(round(0.5 / args.resolution)) + 1) ** 2
            if n_points > 1000:
                print(
                    f"warning: {n_points} grid points, each an optimizer run; "
                    "this may take hours",
                    file=sys.stderr,
                )
            rows = experiments.run_mems(args.resolution, _opt_config(args), args.seed)
        elif args.command == "bloch":
            rows = experiments.run_bloch(
                args.n, args.samples, (args.ci, args.cj), args.seed
            )
        else:  # additivity
            rows, summary = experiments.run_additivity(
                args.trials, [2, 2], _opt_config(args),
                mode=args.mode, seed=args.seed, tol=args.tol,
            )
            for key, value in summary.items():
                print(f"{key}: {value}", file=sys.stderr)
    except OptimizationFailedError as exc:
        print(f"error: optimization failed: {exc}", file=sys.stderr)
        return 3
    except NotImplementedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except QinfoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _write_csv(args.out, experiments.HEADERS[args.command], rows)
    return 0


if __name__ == "__main__":
    sys.exit(main())
