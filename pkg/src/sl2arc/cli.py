"""Command-line surface for the pipeline.

Subcommands:

  trace     compile a free-group word to its trace polynomial
  verify    run the exact family verification report for one n or a range
  arc       continue a representation arc and serialize it as CSV
  locus     continue an arc and write the holonomy-locus CSV (and SVG)
  interval  continue an arc and print the orderable-slope interval near 0

Exit codes: 0 success / all assertions pass, 1 verification failure,
2 usage error, 3 numerical failure.  All output is deterministic for a
fixed flag set: no timestamps, no environment lookups, stable ordering.
"""

from __future__ import annotations

import argparse
import re
import sys

import numpy as np

from .arc import ContinuationError, GluingError, analyze_curve, continue_arc
from .locus import (
    LocusError,
    csv_text,
    emit_csv,
    emit_svg,
    locus_points,
    orderable_interval,
)
from .pretzel import gradient_at, make_family, verify_lemma
from .tracepoly import trace_polynomial
from .words import WordSyntaxError, parse_word

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3


class _UsageError(Exception):
    pass


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sl2arc",
        description="Trace polynomials, representation arcs, and holonomy loci.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_trace = sub.add_parser("trace", help="compile a word to a trace polynomial")
    p_trace.add_argument("--word", required=True,
                         help="free-group word over a, b (inverses A, B or ^-k)")

    p_verify = sub.add_parser("verify", help="verify the family assertions")
    p_verify.add_argument("--n", type=int, help="single family index (>= 1)")
    p_verify.add_argument("--range", dest="n_range", metavar="A..B",
                          help="inclusive index range, e.g. 1..50")
    p_verify.add_argument("--exact", action=argparse.BooleanOptionalAction,
                          default=True,
                          help="rational arithmetic (default on for verify)")

    for name, needs_out in (("arc", False), ("locus", True), ("interval", False)):
        p = sub.add_parser(name)
        p.add_argument("--n", type=int, required=True, help="family index (>= 1)")
        p.add_argument("--steps", type=int, default=2000, help="max steps")
        p.add_argument("--step-size", dest="step_size", type=float, default=1e-3)
        p.add_argument("--direction", type=int, choices=(1, -1), default=1)
        p.add_argument("--ceiling", type=float, default=1e6,
                       help="meridian trace termination ceiling")
        p.add_argument("--exact", action=argparse.BooleanOptionalAction,
                       default=False,
                       help="audit the curve analysis in rational arithmetic "
                            "before continuing (default off for continuation)")
        if name == "arc":
            p.add_argument("--out", default=None,
                           help="CSV path (stdout when omitted)")
        if name == "locus":
            p.add_argument("--out", required=needs_out, help="CSV path")
            p.add_argument("--svg", default=None, help="SVG path")
    return parser


def _cmd_trace(args) -> int:
    word = parse_word(args.word)
    print(trace_polynomial(word))
    return EXIT_OK


def _parse_range(text: str) -> tuple:
    m = re.fullmatch(r"(\d+)\.\.(\d+)", text)
    if not m:
        raise _UsageError(f"malformed range {text!r}: expected A..B")
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo < 1 or hi < lo:
        raise _UsageError(f"range {text!r} must satisfy 1 <= A <= B")
    return lo, hi


def _cmd_verify(args) -> int:
    if (args.n is None) == (args.n_range is None):
        raise _UsageError("verify needs exactly one of --n or --range")
    if args.n is not None:
        if args.n < 1:
            raise _UsageError(f"--n must be >= 1, got {args.n}")
        report = verify_lemma(args.n, exact=args.exact)
        print(report.text())
        return EXIT_OK if report.all_pass else EXIT_VERIFICATION
    lo, hi = _parse_range(args.n_range)
    all_ok = True
    for n in range(lo, hi + 1):
        report = verify_lemma(n, exact=args.exact)
        verdict = "PASS" if report.all_pass else "FAIL"
        print(f"n={n} {verdict} ({len(report.assertions)} assertions)")
        all_ok = all_ok and report.all_pass
    return EXIT_OK if all_ok else EXIT_VERIFICATION


def _exactness_audit(fam) -> None:
    """Exact curve analysis cross-checked against the float Jacobian."""
    analysis = analyze_curve(fam)
    if analysis.rank != 2:
        raise ContinuationError(
            f"exact curve rank at the base character is {analysis.rank}, need 2")
    exact_jac = np.array([[float(x) for x in row] for row in analysis.jacobian])
    chi_f = tuple(float(c) for c in fam.chi)
    float_jac = np.array([[float(g.evaluate(*chi_f)) for g in
                           (eq.derivative(0), eq.derivative(1), eq.derivative(2))]
                          for eq in fam.curve_eqs])
    scale = max(1.0, float(np.max(np.abs(exact_jac))))
    gap = float(np.max(np.abs(exact_jac - float_jac))) / scale
    if gap > 1e-12:
        raise ContinuationError(
            f"exact/float Jacobian agreement audit failed (relative gap {gap:.3e})")


def _run_continuation(args):
    if args.n < 1:
        raise _UsageError(f"--n must be >= 1, got {args.n}")
    if args.steps < 0:
        raise _UsageError(f"--steps must be >= 0, got {args.steps}")
    if not 1e-6 <= args.step_size <= 1e-1:
        raise _UsageError(
            f"--step-size must lie in [1e-6, 1e-1], got {args.step_size}")
    fam = make_family(args.n)
    if args.exact:
        _exactness_audit(fam)
    arc = continue_arc(fam, step_size=args.step_size, max_steps=args.steps,
                       direction=args.direction, trace_ceiling=args.ceiling)
    return fam, arc


def _cmd_arc(args) -> int:
    _, arc = _run_continuation(args)
    locus_arc = locus_points(arc)
    if args.out is None:
        sys.stdout.write(csv_text(arc, locus_arc))
    else:
        emit_csv(arc, locus_arc, args.out)
        print(f"samples={len(arc.samples)} accepted={len(locus_arc.first)} "
              f"termination={arc.termination_reason}")
    return EXIT_OK


def _cmd_locus(args) -> int:
    _, arc = _run_continuation(args)
    locus_arc = locus_points(arc)
    emit_csv(arc, locus_arc, args.out)
    if args.svg is not None:
        emit_svg(locus_arc, args.svg)
    print(f"samples={len(arc.samples)} accepted={len(locus_arc.first)} "
          f"termination={arc.termination_reason}")
    return EXIT_OK


def _cmd_interval(args) -> int:
    _, arc = _run_continuation(args)
    locus_arc = locus_points(arc)
    lo, hi = orderable_interval(locus_arc)
    print("interval: (%.6g, %.6g)" % (lo, hi))
    return EXIT_OK


_HANDLERS = {
    "trace": _cmd_trace,
    "verify": _cmd_verify,
    "arc": _cmd_arc,
    "locus": _cmd_locus,
    "interval": _cmd_interval,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except (ContinuationError, GluingError, LocusError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (WordSyntaxError, _UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
