"""Command-line front end.

Subcommands::

    wyskew skew    --state rho.json --obs H.json [--obs H2.json ...]
    wyskew scan    fig1_bloch --points 64 --out fig1.csv
    wyskew witness --state rho.json --obs-a A1.json ... --obs-b B1.json ... [--ca 2 --cb 2] [--seed 7]

Exit codes: 0 success, 2 parse/validation failure, 3 dimension mismatch,
4 output not writable.
"""

from __future__ import annotations

import argparse
import math
import sys

from .bounds import SATISFIED_ATOL, evaluate_all
from .catalog import FAMILIES, figure_family
from .entanglement import lur_witness, optimal_constant
from .linalg import DensityMatrix, DimensionMismatchError, HermitianOperator, ObservableSet, ValidationError, load_matrix
from .skewinfo import skew_information

EXIT_PARSE = 2
EXIT_DIM = 3
EXIT_IO = 4

SCAN_COLUMNS = ("theorem1", "chen", "pairwise_sum", "pairwise_diff")


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def fmt(x: float) -> str:
    """Shortest round-trip repr of ``x`` rounded to 12 significant digits."""
    x = float(f"{float(x):.12g}")
    return repr(x + 0.0)  # + 0.0 folds -0.0 into 0.0


def _load(path: str, kind):
    try:
        return kind(load_matrix(path))
    except OSError as exc:
        raise CliError(EXIT_PARSE, f"cannot read {path}: {exc.strerror or exc}") from None
    except DimensionMismatchError as exc:
        raise CliError(EXIT_DIM, f"{path}: {exc}") from None
    except ValidationError as exc:
        raise CliError(EXIT_PARSE, f"{path}: {exc}") from None


def scan_rows(family: str, points: int) -> list[list[float]]:
    """``[theta, sum_skew, theorem1, chen, pairwise_sum, pairwise_diff]`` rows
    at ``points`` uniform angles in ``[0, 2 pi)``.
    """
    rows = []
    for k in range(points):
        theta = 2 * math.pi * k / points
        rho, ops = figure_family(family, theta)
        report = evaluate_all(rho, ops)
        rows.append([theta, report.sum_skew] + [report.bounds[c] for c in SCAN_COLUMNS])
    return rows


def cmd_skew(args) -> int:
    if not args.obs:
        raise CliError(EXIT_PARSE, "at least one --obs file is required")
    rho = _load(args.state, DensityMatrix)
    for path in args.obs:
        h = _load(path, HermitianOperator)
        if h.dim != rho.dim:
            raise CliError(EXIT_DIM, f"state has dim {rho.dim} but {path} has dim {h.dim}")
        print(fmt(skew_information(rho, h)))
    return 0


def cmd_scan(args) -> int:
    family = args.family_opt or args.family
    if family is None:
        raise CliError(EXIT_PARSE, "a family is required (fig1_bloch or fig2_spin1)")
    if family not in FAMILIES:
        raise CliError(EXIT_PARSE, f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
    if args.points < 2:
        raise CliError(EXIT_PARSE, "--points must be at least 2")
    rows = scan_rows(family, args.points)
    lines = [",".join(("theta", "sum_skew") + SCAN_COLUMNS)]
    lines += [",".join(fmt(v) for v in row) for row in rows]
    text = "\n".join(lines) + "\n"
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        try:
            with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        except OSError as exc:
            raise CliError(EXIT_IO, f"cannot write {args.out}: {exc.strerror or exc}") from None
    bad = [r[0] for r in rows if any(r[1] < b - SATISFIED_ATOL for b in r[2:])]
    if bad:
        print(f"warning: bound exceeds sum_skew at theta = {', '.join(fmt(t) for t in bad)}", file=sys.stderr)
        return 1
    return 0


def cmd_witness(args) -> int:
    if not args.obs_a or not args.obs_b:
        raise CliError(EXIT_PARSE, "--obs-a and --obs-b are each required at least once")
    if len(args.obs_a) != len(args.obs_b):
        raise CliError(EXIT_PARSE, f"{len(args.obs_a)} --obs-a files but {len(args.obs_b)} --obs-b files")
    rho = _load(args.state, DensityMatrix)
    try:
        set_a = ObservableSet(_load(p, HermitianOperator) for p in args.obs_a)
        set_b = ObservableSet(_load(p, HermitianOperator) for p in args.obs_b)
    except DimensionMismatchError as exc:
        raise CliError(EXIT_DIM, str(exc)) from None
    if set_a.dim * set_b.dim != rho.dim:
        raise CliError(EXIT_DIM, f"local dims {set_a.dim} x {set_b.dim} do not match state dim {rho.dim}")
    c_a = args.ca if args.ca is not None else optimal_constant(set_a, args.trials, args.seed)
    c_b = args.cb if args.cb is not None else optimal_constant(set_b, args.trials, args.seed)
    verdict = lur_witness(rho, set_a, set_b, c_a, c_b)
    print(f"total: {fmt(verdict.total)}")
    print(f"threshold: {fmt(verdict.threshold)}")
    print(verdict.message)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wyskew", description="Skew-information uncertainty relations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("skew", help="skew information I_rho(H) from JSON matrix files")
    p.add_argument("--state", required=True)
    p.add_argument("--obs", action="append", default=[])
    p.set_defaults(func=cmd_skew)

    p = sub.add_parser("scan", help="tabulate bounds over a figure family as CSV")
    p.add_argument("family", nargs="?")
    p.add_argument("--family", dest="family_opt")
    p.add_argument("--points", type=int, default=64)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("witness", help="local uncertainty relation entanglement witness")
    p.add_argument("--state", required=True)
    p.add_argument("--obs-a", action="append", default=[])
    p.add_argument("--obs-b", action="append", default=[])
    p.add_argument("--ca", type=float)
    p.add_argument("--cb", type=float)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=64)
    p.set_defaults(func=cmd_witness)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except DimensionMismatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIM
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
