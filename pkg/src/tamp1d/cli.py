"""Command-line front end.

Subcommands: tamp, schwarz, upper-bound, hollows, norm, hs-norm, verify,
counterexample, plot.  Functions are read from the text format (one
``lo hi value`` piece per line, rationals as ``p/q`` or decimals) or its JSON
mirror; ``-`` reads stdin.  Exit codes: 0 success, 1 property violation or
I/O failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction

from . import verify as verify_mod
from .counterexamples import (
    hardy_littlewood_gap,
    hs_counterexample_function,
    hs_counterexample_pair,
    riesz_triple_integral,
)
from .demo import xsin2_step
from .intervals import IntervalSet
from .norms import hs_halfnorm_squared
from .stepfn import ParseError, StepFunction, best_upper_bound, lp_norm, schwarz
from .tamping import (
    hollows,
    tamp,
    tamp_double_schwarz,
    tamp_voxel,
    voxel_to_step,
    voxelize_exact,
)

USAGE_ERROR = 2
FAILURE = 1


def _read_input(path: str) -> StepFunction:
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path) as handle:
                text = handle.read()
        except OSError as exc:
            raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    from .stepfn import parse_function

    return parse_function(text)


def _emit(fn, args) -> None:
    text = fn.to_json() if getattr(args, "json", False) else fn.to_text()
    out = getattr(args, "output", None)
    if out and out != "-":
        with open(out, "w") as handle:
            handle.write(text + "\n")
    else:
        print(text)


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}")


def cmd_tamp(args) -> int:
    phi = _read_input(args.input)
    if args.method in ("level", "check-all"):
        result = tamp(phi)
    elif args.method == "voxel":
        result = None
    else:
        result = tamp_double_schwarz(phi) if not phi.is_zero() else StepFunction.zero()

    trace = None
    if args.method in ("voxel", "check-all") or args.trace:
        v = voxelize_exact(phi)
        tamped_v, trace = tamp_voxel(v)
        voxel_result = voxel_to_step(tamped_v)
        if result is None:
            result = voxel_result
        elif voxel_result != result:
            print("route disagreement: voxel vs level", file=sys.stderr)
            return FAILURE
    if args.method == "check-all" and not phi.is_zero():
        if tamp_double_schwarz(phi) != result:
            print("route disagreement: double-schwarz vs level", file=sys.stderr)
            return FAILURE
    if args.trace:
        with open(args.trace, "w") as handle:
            json.dump(trace.to_jsonable(), handle, indent=1)
    _emit(result, args)
    return 0


def cmd_schwarz(args) -> int:
    _emit(schwarz(_read_input(args.input)), args)
    return 0


def cmd_upper_bound(args) -> int:
    up = best_upper_bound(_read_input(args.input))
    print(up.to_text())
    return 0


def cmd_hollows(args) -> int:
    level = math.inf if args.level is None else _fraction(args.level)
    sets = hollows(_read_input(args.input), level)
    for part in sets.parts:
        print(f"{part.lo} {part.hi}")
    return 0


def cmd_norm(args) -> int:
    print(format(lp_norm(_read_input(args.input), args.p), ".12g"))
    return 0


def cmd_hs_norm(args) -> int:
    phi = _read_input(args.input)
    sq = hs_halfnorm_squared(phi, args.s)
    print(f"squared: {format(sq, '.12g')}")
    print(f"half-norm: {format(math.sqrt(sq), '.12g')}")
    return 0


def cmd_verify(args) -> int:
    report, ok = verify_mod.run_suites(args.suite, args.cases, args.seed)
    sys.stdout.write(report)
    return 0 if ok else FAILURE


def cmd_counterexample(args) -> int:
    if args.which == "riesz":
        a, b, c, d, e, t = 1, 2, 3, 4, 10, 5
        plain = riesz_triple_integral(e, IntervalSet.from_endpoints([(a, b), (c, d)]), t)
        tamped = riesz_triple_integral(e, IntervalSet.from_endpoints([(a, b - c + d)]), t)
        print(f"band integral, two bumps 1_[{a},{b}]+1_[{c},{d}] vs window [0,{e}], t={t}: {plain}")
        print(f"band integral, tamped bump 1_[{a},{b - c + d}]:                         {tamped}")
        print("STRICTLY DECREASED by tamping" if plain > tamped else "NOT DECREASED")
        return 0 if plain > tamped else FAILURE
    if args.which == "hs":
        witnesses = {
            "0.2": (Fraction(2, 10), (1, 2, 17, 32, 52)),
            "0.25": (Fraction(1, 4), (1, 2, 17, 32, 52)),
            "0.3": (Fraction(3, 10), (1, 2, 60, 119, 193)),
            "0.35": (Fraction(35, 100), (1, 2, 10**4, 2 * 10**4, 4 * 10**4)),
            "0.4": (Fraction(4, 10), (1, 2, 10**8, 2 * 10**8, 4 * 10**8)),
            "0.45": (Fraction(45, 100), (1, 2, 10**12, 2 * 10**12, 4 * 10**12)),
        }
        all_increase = True
        for label, (s, tup) in witnesses.items():
            before, after = hs_counterexample_pair(s, *tup)
            verdict = "NOT DECREASED" if before < after else "decreased"
            all_increase = all_increase and before < after
            print(
                f"s={label}: |psi|^2={before:.6g}  |tamped|^2={after:.6g}  -> {verdict}"
                f"   (a..e = {tup})"
            )
        return 0 if all_increase else FAILURE
    if args.which == "hardy-littlewood":
        phi = StepFunction.from_pieces([(0, Fraction(1, 4), 1), (1, 2, 1)])
        psi = StepFunction.indicator(1, 2)
        plain, tamped = hardy_littlewood_gap(phi, psi)
        print(f"int phi psi = {plain};  int tamp(phi) tamp(psi) = {tamped}")
        print("inequality FAILS for tamping (plain > tamped)" if plain > tamped
              else "inequality held on this pair")
        return 0 if plain > tamped else FAILURE
    raise AssertionError


def cmd_plot(args) -> int:
    from . import plotting

    if args.demo is None and args.input is None:
        print("plot: need an input file or --demo", file=sys.stderr)
        return USAGE_ERROR
    try:
        if args.demo is not None:
            if args.demo != "xsin2":
                print(f"plot: unknown demo {args.demo!r}", file=sys.stderr)
                return USAGE_ERROR
            phi = xsin2_step(args.samples)
            out = args.out or "xsin2"
            curves = [
                ("original", phi),
                ("schwarz", schwarz(phi)),
                ("tamped", tamp(phi)),
            ]
            for name, fn in curves:
                plotting.write_csv(fn, f"{out}_{name}.csv")
                if args.format == "svg":
                    plotting.write_svg(fn, f"{out}_{name}.svg", title=name)
        else:
            phi = _read_input(args.input)
            stem = args.out or os.path.splitext(os.path.basename(args.input))[0] or "curve"
            plotting.write_csv(phi, f"{stem}.csv")
            if args.format == "svg":
                plotting.write_svg(phi, f"{stem}.svg")
    except OSError as exc:
        print(f"plot: {exc}", file=sys.stderr)
        return FAILURE
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tamp1d",
        description="Rearrangements of non-negative functions on the half-line.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_io(p):
        p.add_argument("input", help="function file (text or JSON), or - for stdin")
        p.add_argument("-o", "--output", help="write the result here instead of stdout")
        p.add_argument("--json", action="store_true", help="emit JSON instead of text")

    p = sub.add_parser("tamp", help="rearrange by tamping")
    p.add_argument(
        "--method",
        choices=("level", "voxel", "double-schwarz", "check-all"),
        default="level",
    )
    p.add_argument("--trace", metavar="FILE", help="write the voxel pivot trace as JSON")
    add_io(p)
    p.set_defaults(func=cmd_tamp)

    p = sub.add_parser("schwarz", help="non-increasing rearrangement")
    add_io(p)
    p.set_defaults(func=cmd_schwarz)

    p = sub.add_parser("upper-bound", help="best non-decreasing upper bound")
    p.add_argument("input")
    p.set_defaults(func=cmd_upper_bound)

    p = sub.add_parser("hollows", help="hollows of the function below a level")
    p.add_argument("input")
    p.add_argument("--level", help="positive rational level (default: all levels)")
    p.set_defaults(func=cmd_hollows)

    p = sub.add_parser("norm", help="Lp norm")
    p.add_argument("--p", type=float, default=2.0)
    p.add_argument("input")
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("hs-norm", help="fractional H^s half-norm (squared and plain)")
    p.add_argument("--s", type=float, required=True)
    p.add_argument("input")
    p.set_defaults(func=cmd_hs_norm)

    p = sub.add_parser("verify", help="run deterministic property suites")
    p.add_argument("--suite", choices=verify_mod.SUITES + ("all",), default="all")
    p.add_argument("--cases", type=int, default=100)
    p.add_argument(
        "--seed",
        type=int,
        default=int(os.environ.get("TAMP1D_SEED", "0")),
        help="defaults to $TAMP1D_SEED or 0",
    )
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("counterexample", help="reproduce the classical failure instances")
    p.add_argument("which", choices=("riesz", "hs", "hardy-littlewood"))
    p.set_defaults(func=cmd_counterexample)

    p = sub.add_parser("plot", help="emit CSV (and SVG) for a function")
    p.add_argument("input", nargs="?", help="function file; omit with --demo")
    p.add_argument("--demo", choices=("xsin2",), help="built-in demo profile")
    p.add_argument("--samples", type=int, default=512, help="demo resolution")
    p.add_argument("--format", choices=("csv", "svg"), default="csv")
    p.add_argument("--out", help="output stem (default: input name or demo name)")
    p.set_defaults(func=cmd_plot)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
