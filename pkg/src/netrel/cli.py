"""Command-line front end: ``netrel graph``, ``netrel bounds``, ``netrel sweep``.

Exit codes: 0 success, 2 usage error, 3 validation error, 4 capacity error.
"""

from __future__ import annotations

import argparse
import csv
import sys
from typing import List, Optional, Sequence

from . import __version__
from .ensemble import (
    COLUMNS, DEFAULT_MAX_EDGE_SETS, BoundCurve, EnsembleParams, bound_curve, default_grid,
    epf_lower, epf_upper, expected_t, log_grid, pu_lower, pu_lower_raw, pu_upper,
)
from .exactmath import Rational, as_rational
from .exceptions import CapacityError, DomainError, GraphFormatError, PreconditionError
from .graphcore import cut_weight_distribution, f2_rank, incidence_matrix, is_connected, parse_graph
from .reliability import check_eps, failure_profile_enum, failure_profile_pivotal, DEFAULT_ENUM_MAX_EDGES

EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, EXIT_CAPACITY = 0, 2, 3, 4

CSV_HEADER = ["eps", "lower", "exact", "mc", "mc_stderr", "upper"]


class UsageError(Exception):
    pass


def fmt_float(x) -> str:
    if x is None:
        return ""
    return f"{float(x):.12g}"


def _ints(xs) -> str:
    return " ".join(str(x) for x in xs)


def _rationals(xs) -> str:
    return "[" + ", ".join(str(x) for x in xs) + "]"


def _parse_eps(text: str) -> Rational:
    try:
        return as_rational(text.strip())
    except DomainError as exc:
        raise UsageError(str(exc)) from None


def parse_grid(spec: str) -> List[Rational]:
    """``min:max:points:log`` (or ``:lin``)."""
    parts = spec.split(":")
    if len(parts) != 4 or parts[3] not in ("log", "lin"):
        raise UsageError(f"--grid expects min:max:points:log|lin, got {spec!r}")
    lo, hi = _parse_eps(parts[0]), _parse_eps(parts[1])
    try:
        points = int(parts[2])
    except ValueError:
        raise UsageError(f"grid point count must be an integer, got {parts[2]!r}") from None
    if points < 1:
        raise UsageError("grid needs at least one point")
    if lo > hi:
        raise UsageError("grid min exceeds max")
    try:
        return log_grid(lo, hi, points, log=parts[3] == "log")
    except DomainError as exc:
        raise UsageError(str(exc)) from None


# ------------------------------------------------------------------ commands

def cmd_graph(args, out) -> int:
    try:
        with open(args.path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {args.path}: {exc.strerror}") from None
    g = parse_graph(text)
    connected = is_connected(g)
    print(f"k: {g.k}", file=out)
    print(f"n: {g.n}", file=out)
    print(f"connected: {'yes' if connected else 'no'}", file=out)
    print(f"f2_rank: {f2_rank(incidence_matrix(g))}", file=out)
    if connected:
        print(f"cut_weights B_v: {_ints(cut_weight_distribution(g))}", file=out)
    if g.n <= DEFAULT_ENUM_MAX_EDGES:
        prof = failure_profile_enum(g)
        print(f"failure_counts N_j: {_ints(prof.counts)}", file=out)
        poly = prof.polynomial
    else:
        print("failure_counts N_j: (skipped, n above subset-enumeration cap)", file=out)
        poly = failure_profile_pivotal(g)
    print(f"failure_polynomial: {poly}", file=out)
    print(f"coefficients: {_rationals(poly.coeffs or [0])}", file=out)
    if args.eps is not None:
        eps = _parse_eps(args.eps)
        try:
            eps = check_eps(eps)
        except DomainError as exc:
            raise UsageError(str(exc)) from None
        value = poly(eps)
        print(f"P_f({args.eps}): {value} ({fmt_float(value)})", file=out)
    return EXIT_OK


def _params(args) -> EnsembleParams:
    if args.k is None or args.n is None:
        raise UsageError("--k and --n are required")
    try:
        return EnsembleParams(args.k, args.n)
    except DomainError as exc:
        raise UsageError(str(exc)) from None


def cmd_bounds(args, out) -> int:
    p = _params(args)
    print(f"k: {p.k}", file=out)
    print(f"n: {p.n}", file=out)
    print(f"pu_lower_raw: {pu_lower_raw(p)}", file=out)
    print(f"pu_lower: {pu_lower(p)}", file=out)
    print(f"pu_upper: {pu_upper(p)}", file=out)
    print(f"expected_t: {expected_t(p)}", file=out)
    print(f"epf_lower: {_rationals(epf_lower(p).coeffs or [0])}", file=out)
    print(f"epf_upper: {_rationals(epf_upper(p).coeffs or [0])}", file=out)
    return EXIT_OK


def cmd_sweep(args, out) -> int:
    p = _params(args)
    columns = [c.strip() for c in args.columns.split(",") if c.strip()]
    if not columns:
        raise UsageError("no columns requested")
    bad = [c for c in columns if c not in COLUMNS]
    if bad:
        raise UsageError(f"unknown columns {bad}; choose from {', '.join(COLUMNS)}")
    if args.eps is not None and args.grid is not None:
        raise UsageError("give either --eps or --grid, not both")
    if args.eps is not None:
        grid = [_parse_eps(x) for x in args.eps.split(",") if x.strip()]
        grid_spec = f"explicit:{args.eps}"
        if not grid:
            raise UsageError("--eps list is empty")
    elif args.grid is not None:
        grid = parse_grid(args.grid)
        grid_spec = args.grid
    else:
        grid = default_grid()
        grid_spec = "1e-6:0.5:60:log"
    for e in grid:
        inside = 0 < e < 1 if not args.allow_boundary else 0 <= e <= 1
        if not inside:
            raise UsageError(f"grid value {e} outside (0, 1)")
    if "mc" in columns and args.trials < 1:
        raise UsageError("--trials must be positive")
    if "mc" in columns and any(e in (0, 1) for e in grid):
        raise UsageError("Monte Carlo needs eps strictly inside (0, 1)")
    curve = bound_curve(p, grid, columns=columns, trials=args.trials, seed=args.seed,
                        workers=args.workers, clamp=args.clamp, max_sets=args.max_edge_sets)
    write_csv(curve, args.out)
    meta = dict(curve.meta)
    meta.update(columns=",".join(columns), grid=grid_spec, points=len(grid),
                exact_method=curve.exact_method or "")
    write_meta(meta, args.out + ".meta")
    print(f"wrote {len(curve.rows)} rows to {args.out}", file=out)
    return EXIT_OK


def write_csv(curve: BoundCurve, path: str) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in curve.rows:
            w.writerow([fmt_float(r.eps), fmt_float(r.lower), fmt_float(r.exact),
                        fmt_float(r.mc), fmt_float(r.mc_stderr), fmt_float(r.upper)])


def write_meta(meta: dict, path: str) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        for key in sorted(meta):
            value = meta[key]
            if isinstance(value, bool):
                value = "true" if value else "false"
            fh.write(f"{key}={value}\n")


def read_csv(path: str) -> List[dict]:
    """Parse a sweep CSV back into rows of floats (None for empty cells)."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != CSV_HEADER:
            raise ValueError(f"unexpected header {reader.fieldnames}")
        return [{k: (float(v) if v else None) for k, v in row.items()} for row in reader]


# ------------------------------------------------------------------ parser

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="netrel", description="Exact all-terminal failure probabilities and random-graph ensemble bounds.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    g = sub.add_parser("graph", help="report cut weights and the failure polynomial of one graph file")
    g.add_argument("path")
    g.add_argument("--eps", help="evaluate P_f at this decimal or fraction")
    g.set_defaults(func=cmd_graph)

    b = sub.add_parser("bounds", help="print exact bound constants and polynomial coefficients")
    b.add_argument("--k", type=int)
    b.add_argument("--n", type=int)
    b.set_defaults(func=cmd_bounds)

    s = sub.add_parser("sweep", help="write lower/exact/mc/upper curves over an eps grid as CSV")
    s.add_argument("--k", type=int)
    s.add_argument("--n", type=int)
    s.add_argument("--eps", help="comma-separated explicit grid")
    s.add_argument("--grid", help="min:max:points:log|lin (default 1e-6:0.5:60:log)")
    s.add_argument("--columns", default="lower,exact,upper", help=f"subset of {','.join(COLUMNS)}")
    s.add_argument("--trials", type=int, default=10 ** 4)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--clamp", action="store_true", help="clamp the upper bound at 1")
    s.add_argument("--allow-boundary", action="store_true", help="accept eps = 0 or 1 in the grid")
    s.add_argument("--max-edge-sets", type=int, default=DEFAULT_MAX_EDGE_SETS)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_sweep)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        if not getattr(args, "func", None):
            raise UsageError("a command is required: graph, bounds or sweep")
        if getattr(args, "workers", 1) < 1:
            raise UsageError("--workers must be at least 1")
        return args.func(args, out)
    except UsageError as exc:
        print(f"netrel: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GraphFormatError, PreconditionError) as exc:
        print(f"netrel: validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except CapacityError as exc:
        print(f"netrel: capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except DomainError as exc:
        print(f"netrel: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
