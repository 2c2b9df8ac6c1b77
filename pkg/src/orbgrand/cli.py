"""Command-line front end: run simulations, analyze a code's constraints,
and verify the search-space counting law.

Exit codes: 0 success, 1 usage error, 2 runtime failure.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from typing import Optional, Sequence

import numpy as np

from .bitlin import BitVec, gf2_in_row_space
from .channel_sim import SimConfig, SimPoint, SimReport, run_montecarlo
from .codes import resolve_code
from .constraints import (
    ConstraintInfeasibleError,
    compute_targets,
    count_search_space,
    derive_constraints,
    random_disjoint_layout,
)

CSV_COLUMNS = [
    "snr_db",
    "frames",
    "block_errors",
    "bler",
    "avg_queries_checked",
    "avg_candidates_generated",
    "abandons",
    "p",
    "b",
    "b_prime",
    "seed",
]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_snr_sweep(spec: str) -> tuple[float, ...]:
    """start:stop:step in dB, endpoints inclusive, snapped to 0.01 dB."""
    fields = spec.split(":")
    if len(fields) != 3:
        raise UsageError(f"--snr must be start:stop:step, got {spec!r}")
    try:
        start, stop, step = (float(x) for x in fields)
    except ValueError:
        raise UsageError(f"--snr fields must be numeric, got {spec!r}")
    if step <= 0:
        raise UsageError("--snr step must be positive")
    if stop < start - 1e-9:
        raise UsageError("--snr stop must not be below start")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return tuple(round(start + i * step, 2) for i in range(count))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="orbgrand", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="Monte Carlo simulation writing CSV and figures")
    run.add_argument("--code", required=True,
                     help="ebch128 | ebch8 | pac64 | file:PATH")
    run.add_argument("--snr", required=True, help="Eb/N0 sweep, start:stop:step in dB")
    run.add_argument("--frames", type=int, default=1000, help="frames per SNR point")
    run.add_argument("--budget", type=int, default=10000,
                     help="sets both budgets: b = b' = BUDGET")
    run.add_argument("--budget-checked", type=int, default=None,
                     help="override the codebook-check budget b only")
    run.add_argument("--constraints", type=int, default=0, help="constraint count p")
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--out", default="results.csv", help="CSV output path")
    run.add_argument("--count-oversize", action="store_true",
                     help="count never-materialized oversize partitions toward b'")
    run.add_argument("--no-plot", action="store_true", help="skip PNG rendering")

    analyze = sub.add_parser("analyze", help="show a code's derived constraint layout")
    analyze.add_argument("--code", required=True)
    analyze.add_argument("--constraints", type=int, default=None,
                         help="requested p (default: largest achievable)")

    verify = sub.add_parser("verify", help="check the 2^(n-p) search-space law")
    verify.add_argument("--n", type=int, required=True, help="vector length, at most 24")
    verify.add_argument("--p", type=int, required=True, help="constraint count")
    verify.add_argument("--trials", type=int, default=20)
    verify.add_argument("--seed", type=int, default=0)
    return parser


def _write_csv(path: str, report: SimReport) -> None:
    cfg = report.config
    with open(path, "w", newline="", encoding="ascii") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for pt in report.points:
            writer.writerow([
                f"{pt.snr_db:.2f}",
                pt.frames,
                pt.block_errors,
                str(pt.bler),
                str(pt.avg_queries_checked),
                str(pt.avg_candidates_generated),
                pt.abandons,
                cfg.p,
                cfg.b,
                cfg.b_prime,
                cfg.seed,
            ])


def _print_summary(report: SimReport) -> None:
    cfg = report.config
    print(f"code {report.code_name} (n={report.n}, k={report.k})  "
          f"p={cfg.p}  b={cfg.b}  b'={cfg.b_prime}  seed={cfg.seed}")
    if report.constraint_set_sizes:
        print(f"constraint set sizes: {list(report.constraint_set_sizes)}")
    label = f"p={cfg.p} avg queries"
    width = max(9, len(label))
    cells = [f"{pt.snr_db:>9.2f}" for pt in report.points]
    print(f"{'Eb/N0 [dB]':<{width}} " + " ".join(cells))
    cells = [f"{pt.avg_queries_checked:>9.1f}" for pt in report.points]
    print(f"{label:<{width}} " + " ".join(cells))
    cells = [f"{pt.bler:>9.2e}" for pt in report.points]
    print(f"{'BLER':<{width}} " + " ".join(cells))
    cells = [f"{pt.abandons:>9d}" for pt in report.points]
    print(f"{'abandons':<{width}} " + " ".join(cells))


def cmd_run(args) -> int:
    snrs = parse_snr_sweep(args.snr)
    if args.frames < 1:
        raise UsageError("--frames must be at least 1")
    if args.budget < 1 or (args.budget_checked is not None and args.budget_checked < 1):
        raise UsageError("budgets must be at least 1")
    if args.constraints < 0:
        raise UsageError("--constraints must be nonnegative")
    b_prime = args.budget
    b = args.budget_checked if args.budget_checked is not None else args.budget
    config = SimConfig(
        code_id=args.code,
        snr_db=snrs,
        frames=args.frames,
        b=b,
        b_prime=b_prime,
        p=args.constraints,
        seed=args.seed,
        count_oversize_bprime=args.count_oversize,
    )

    def on_point(pt: SimPoint):
        print(f"  {pt.snr_db:.2f} dB: bler={pt.bler:.3e} "
              f"avg_checked={pt.avg_queries_checked:.1f} "
              f"avg_considered={pt.avg_candidates_generated:.1f} "
              f"abandons={pt.abandons}", flush=True)

    report = run_montecarlo(config, on_point=on_point)
    _write_csv(args.out, report)
    print(f"wrote {args.out}")
    _print_summary(report)
    if not args.no_plot:
        from .plotting import render_plots

        for path in render_plots(report, args.out):
            print(f"wrote {path}")
    return 0


def cmd_analyze(args) -> int:
    code = resolve_code(args.code)
    n, k = code.n, code.k
    has_all_one = gf2_in_row_space(code.H, BitVec.ones(n)) is not None
    print(f"code {code.name}: n={n}, k={k}, n-k={n - k}")
    print(f"all-one row in dual space: {'yes' if has_all_one else 'no'}")
    if args.constraints is not None:
        if args.constraints < 1:
            raise UsageError("--constraints must be at least 1 for analyze")
        p = args.constraints
    else:
        try:
            derive_constraints(code.H, n - k)
            p = n - k
        except ConstraintInfeasibleError as e:
            p = e.achievable
    layout = derive_constraints(code.H, p)
    print(f"derived constraints: p={layout.p}")
    for j, (row, pset, (lo, hi)) in enumerate(
        zip(layout.rows, layout.sets, layout.intervals), start=1
    ):
        print(f"  constraint {j}: |set|={len(pset)}, interval=[{lo}, {hi}]")
        print(f"    row: {row.to01()}")
    return 0


def cmd_verify(args) -> int:
    if not 1 <= args.n <= 24:
        raise UsageError(f"--n must be in [1, 24], got {args.n}")
    if not 0 <= args.p <= args.n:
        raise UsageError(f"--p must be in [0, {args.n}], got {args.p}")
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    rng = np.random.default_rng(args.seed)
    expected = 1 << (args.n - args.p)
    failures = 0
    for t in range(args.trials):
        layout = random_disjoint_layout(args.n, args.p, rng)
        v = BitVec(args.n, int(rng.integers(0, 1 << args.n)))
        targets = compute_targets(layout, v)
        got = count_search_space(args.n, layout, targets)
        status = "pass" if got == expected else "FAIL"
        if got != expected:
            failures += 1
        print(f"trial {t + 1}: sets={[len(s) for s in layout.sets]} "
              f"count={got} expected={expected} {status}")
    if failures:
        print(f"FAIL: {failures}/{args.trials} trials mismatched")
        return 2
    print(f"PASS: {args.trials} trials, count = 2^({args.n}-{args.p}) = {expected}")
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "run":
            return cmd_run(args)
        if args.command == "analyze":
            return cmd_analyze(args)
        if args.command == "verify":
            return cmd_verify(args)
        raise UsageError(f"unknown command {args.command!r}")
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 1
    except (ValueError, OSError, ConstraintInfeasibleError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
