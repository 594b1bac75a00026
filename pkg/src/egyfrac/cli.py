"""Command-line interface: reproducible experiments with file reports.

Subcommands: compute, scan, dist, coeff, verify.  Exit codes: 0 on
success, 1 for usage errors, 2 for internal consistency failures (a
method disagreement or a failed verify suite is an alarm, not a
warning).

With --out BASE, a command writes BASE.csv and BASE.json (schemas in
``reports``) and renders BASE.png alongside them (--no-plot disables
the figure).  Outputs are byte-identical for any --threads value.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from math import gcd
from pathlib import Path

from . import distribution, moments, reports
from .dirichlet_series import leading_coefficient, leading_coefficient_partials
from .egyptian import (
    DEFAULT_BRUTEFORCE_BUDGET,
    r_bruteforce,
    r_character_formula,
    r_divisor_method,
    r_general,
    solution_pairs,
)
from .engine import DEFAULT_BLOCK_SIZE
from .errors import ConsistencyError
from .moments import MAX_MODULUS
from .verify import run_suite

USAGE_ERROR = 1
CONSISTENCY_ERROR = 2


class _Parser(argparse.ArgumentParser):
    """argparse that exits 1 (not 2) on usage errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                   help="worker threads (results do not depend on this)")
    p.add_argument("--block-size", type=int, default=None,
                   help=f"scan block size (absolute grid; default {DEFAULT_BLOCK_SIZE})")
    p.add_argument("--out", type=Path, default=None,
                   help="base path for BASE.csv / BASE.json / BASE.png")
    p.add_argument("--format", choices=("csv", "json"), default="csv",
                   help="tabular data format when writing --out")
    p.add_argument("--no-plot", action="store_true",
                   help="skip the PNG figure next to --out files")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="egyfrac",
                     description="solution counts of a/n = 1/x + 1/y and "
                                 "their statistics")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("compute", help="count solutions for one (n, a)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--solutions", action="store_true",
                   help="list the solution pairs")
    p.add_argument("--budget", type=int, default=DEFAULT_BRUTEFORCE_BUDGET,
                   help="enumeration budget for the brute-force method")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("scan", help="cumulative moment scan over n <= nmax")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--checkpoints", type=str, default=None,
                   help="comma-separated checkpoint list (default: powers of 10)")
    _add_common(p)

    p = sub.add_parser("dist", help="empirical distribution of log R")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--z-min", type=float, default=-3.0)
    p.add_argument("--z-max", type=float, default=3.0)
    p.add_argument("--z-step", type=float, default=0.25)
    _add_common(p)

    p = sub.add_parser("coeff", help="truncated Euler product for the "
                                     "mean-square leading coefficient")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--pmax", type=int, required=True)
    _add_common(p)

    p = sub.add_parser("verify", help="run a self-check suite")
    p.add_argument("--suite", choices=("quick", "identities", "characters", "all"),
                   default="quick")
    return parser


def _validate(a: int, n: int | None = None) -> None:
    if not 1 <= a <= MAX_MODULUS:
        raise ValueError(f"--a must be in [1, {MAX_MODULUS}], got {a}")
    if n is not None and not 1 <= n <= 2**31:
        raise ValueError(f"--n/--nmax must be in [1, 2^31], got {n}")


def _emit(args, command: str, config: dict, results: dict,
          csv_schema: str, csv_header, csv_rows, render) -> None:
    """Write BASE.csv/.json/.png per --out and --format."""
    if args.out is None:
        return
    args.out.parent.mkdir(parents=True, exist_ok=True)
    payload = reports.json_payload(command, config, results)
    if args.format == "csv":
        reports.write_csv(args.out.with_suffix(".csv"), csv_schema,
                          csv_header, csv_rows)
        reports.write_json(args.out.with_suffix(".json"), payload)
    else:
        payload["results"]["rows"] = [list(r) for r in csv_rows]
        payload["results"]["row_header"] = list(csv_header)
        reports.write_json(args.out.with_suffix(".json"), payload)
    if not args.no_plot:
        from . import plots
        render(plots, args.out.with_suffix(".png"))


def cmd_compute(args) -> int:
    _validate(args.a, args.n)
    n, a = args.n, args.a
    methods: dict[str, int] = {}
    methods["general"] = r_general(n, a)
    if n <= args.budget:
        methods["bruteforce"] = r_bruteforce(n, a, budget=args.budget)
    if gcd(n, a) == 1:
        methods["divisor"] = r_divisor_method(n, a)
        methods["characters"] = r_character_formula(n, a)
    values = set(methods.values())
    agree = len(values) == 1
    pairs = None
    if args.solutions and n <= args.budget:
        pairs = solution_pairs(n, a, budget=args.budget)
    if args.format == "json":
        out = {"n": n, "a": a, "methods": methods, "agree": agree}
        if pairs is not None:
            out["solutions"] = [[s.x, s.y] for s in pairs]
        print(json.dumps(out, indent=2))
    else:
        print(f"n={n} a={a}")
        for name, value in methods.items():
            print(f"  R by {name:<11} = {value}")
        print(f"  agreement: {'yes' if agree else 'NO'}")
        if pairs is not None:
            for s in pairs:
                print(f"  {a}/{n} = 1/{s.x} + 1/{s.y}")
    if not agree:
        raise ConsistencyError(f"methods disagree for n={n}, a={a}: {methods}")
    return 0


def _parse_checkpoints(raw: str | None, n_max: int) -> tuple[int, ...] | None:
    if raw is None:
        return None
    try:
        cps = tuple(int(tok) for tok in raw.split(",") if tok.strip())
    except ValueError as exc:
        raise ValueError(f"bad --checkpoints value {raw!r}") from exc
    return tuple(sorted(set(cps) | {n_max}))


def _block_kw(args) -> dict:
    return {} if args.block_size is None else {"block_size": args.block_size}


def cmd_scan(args) -> int:
    _validate(args.a, args.nmax)
    checkpoints = _parse_checkpoints(args.checkpoints, args.nmax)
    report = moments.scan(args.a, args.nmax, checkpoints,
                          threads=args.threads, **_block_kw(args))
    header, rows = reports.scan_csv_rows(report)
    for row in report.rows:
        print(f"N={row.n_max:>10}  S1={row.s1}  S2={row.s2}  "
              f"D={row.d_value}  D/(N log^2 N)={row.d_normalized}")
    config = {"a": args.a, "nmax": args.nmax,
              "checkpoints": list(report.checkpoints),
              "block_size": report.runtime.get("block_size"),
              "format": args.format}
    _emit(args, "scan", config, reports.scan_results_dict(report),
          "scan", header, rows,
          lambda plots, path: plots.render_scan_figure(report, path))
    return 0


def cmd_dist(args) -> int:
    _validate(args.a, args.nmax)
    if args.z_step <= 0 or args.z_max < args.z_min:
        raise ValueError("need z-step > 0 and z-max >= z-min")
    z = []
    v = args.z_min
    while v <= args.z_max + 1e-12:
        z.append(round(v, 12))
        v += args.z_step
    grid = distribution.erdos_kac_cdf(args.a, args.nmax, tuple(z),
                                      threads=args.threads, **_block_kw(args))
    ks = distribution.ks_distance(grid)
    print(f"N={grid.N}  eligible={grid.eligible}  "
          f"excluded_zero_R={grid.excluded_zero_R}  "
          f"excluded_small_n={grid.excluded_small_n}")
    print(f"KS distance to Gaussian: {ks}")
    header, rows = reports.dist_csv_rows(grid)
    config = {"a": args.a, "nmax": args.nmax,
              "z_min": args.z_min, "z_max": args.z_max, "z_step": args.z_step,
              "format": args.format}
    _emit(args, "dist", config, reports.dist_results_dict(grid, ks),
          "dist", header, rows,
          lambda plots, path: plots.render_dist_figure(grid, ks, path))
    return 0


def cmd_coeff(args) -> int:
    _validate(args.a)
    result = leading_coefficient(args.a, args.pmax)
    partials = leading_coefficient_partials(args.a, args.pmax)
    print(f"a={result.a}  p_max={result.p_max}")
    print(f"leading coefficient (truncated): {result.value}")
    print(f"last factor delta: {result.last_factor_delta}")
    print(f"note: {result.sign_note}")
    header, rows = reports.coeff_csv_rows(partials)
    config = {"a": args.a, "pmax": args.pmax, "format": args.format}
    _emit(args, "coeff", config, reports.coeff_results_dict(result),
          "coeff", header, rows,
          lambda plots, path: plots.render_coeff_figure(partials, result, path))
    return 0


def cmd_verify(args) -> int:
    checks = run_suite(args.suite)
    failures = 0
    for name, ok, detail in checks:
        print(f"{'PASS' if ok else 'FAIL'}  {name}  ({detail})")
        failures += 0 if ok else 1
    print(f"{len(checks) - failures}/{len(checks)} checks passed")
    return 0 if failures == 0 else CONSISTENCY_ERROR


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = {
        "compute": cmd_compute,
        "scan": cmd_scan,
        "dist": cmd_dist,
        "coeff": cmd_coeff,
        "verify": cmd_verify,
    }[args.cmd]
    try:
        return handler(args)
    except ValueError as exc:
        print(f"egyfrac: error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except ConsistencyError as exc:
        print(f"egyfrac: consistency failure: {exc}", file=sys.stderr)
        return CONSISTENCY_ERROR


if __name__ == "__main__":
    sys.exit(main())
