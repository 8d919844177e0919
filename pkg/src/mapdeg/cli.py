"""Command line entry point.

Exit codes: 0 success, 1 internal error, 2 parse error or unreadable
input, 3 no witness exists for the target.
"""

from __future__ import annotations

import argparse
import sys

from . import dsl, report
from .errors import NoWitnessError
from .witness import DEFAULT_L_VALUES

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_PARSE = 2
EXIT_NO_WITNESS = 3


def parse_l_range(text: str) -> list[int]:
    """``"a..b"`` (inclusive), ``"a,b,c"`` or a single integer."""
    text = text.strip()
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
            if hi < lo:
                raise ValueError
            return list(range(lo, hi + 1))
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad l range {text!r}; use a..b or a,b,c") from None


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return n


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="mapdeg",
        description="Decide finiteness of mapping degree sets of closed oriented 3-manifolds "
                    "and emit explicit witness degrees.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--json", action="store_true", help="emit JSON instead of text")
        return p

    for name, help_text in (
        ("classify", "geometry and degree class of each prime factor"),
        ("decide", "decide whether some M has infinite D(M, N), and whether D(N) is infinite"),
    ):
        p = add(name, help_text)
        p.add_argument("expr")
        p.add_argument("--max-enum", type=_positive, metavar="K",
                       help="list the K smallest nonnegative members of each factor family")

    p = add("witness", "emit the witness degrees realized by maps N # N -> N")
    p.add_argument("expr")
    p.add_argument("--l", dest="l_values", type=parse_l_range, default=None, metavar="A..B",
                   help="family parameters to sample (default 0..4)")
    p.add_argument("--max-enum", type=_positive, metavar="K")

    p = add("check", "test a candidate degree against each factor family and the four forms")
    p.add_argument("expr")
    p.add_argument("degree_pos", nargs="?", type=int, metavar="DEGREE")
    p.add_argument("--degree", type=int)
    p.add_argument("--max-enum", type=_positive, metavar="K")

    p = add("batch", "classify and decide every expression in a file")
    p.add_argument("path")
    return ap


def _emit(rep: dict, as_json: bool, out) -> None:
    out.write((report.to_json(rep) if as_json else report.to_text(rep)) + "\n")


def _parse_or_report(command, text, args, out, err):
    try:
        return dsl.parse(text)
    except dsl.ParseError as exc:
        if args.json:
            _emit(report.error_report(command, text, exc), True, out)
        err.write(dsl.format_error(text, exc) + "\n")
        return None


def batch_reports(lines) -> list[dict]:
    reports = []
    for raw in lines:
        text = raw.strip()
        if not text or text.startswith("--"):
            continue
        try:
            m = dsl.parse(text)
        except dsl.ParseError as exc:
            reports.append(report.error_report("batch", text, exc))
            continue
        reports.append(report.decide_report(text, m, command="batch"))
    return reports


def _run_batch(args, out, err) -> int:
    try:
        with open(args.path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except (OSError, UnicodeDecodeError) as exc:
        err.write(f"cannot read {args.path}: {exc}\n")
        return EXIT_PARSE
    reports = batch_reports(lines)
    summary = report.batch_summary(reports)
    if args.json:
        for rep in reports:
            out.write(report.to_json(rep, compact=True) + "\n")
        out.write(report.to_json({"summary": summary}, compact=True) + "\n")
    else:
        for rep in reports:
            out.write(report.to_text(rep) + "\n\n")
        out.write(report.to_text({"summary": summary}) + "\n")
    return EXIT_OK


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)

    if args.command == "batch":
        return _run_batch(args, out, err)

    m = _parse_or_report(args.command, args.expr, args, out, err)
    if m is None:
        return EXIT_PARSE

    if args.command == "classify":
        rep = report.classify_report(args.expr, m, args.max_enum)
    elif args.command == "decide":
        rep = report.decide_report(args.expr, m, args.max_enum)
    elif args.command == "witness":
        l_values = args.l_values if args.l_values is not None else DEFAULT_L_VALUES
        try:
            rep = report.witness_report(args.expr, m, l_values, args.max_enum)
        except NoWitnessError as exc:
            _emit(report.blocked_report(args.expr, m), args.json, out)
            err.write(f"{exc}\n")
            return EXIT_NO_WITNESS
    else:
        degree = args.degree if args.degree is not None else args.degree_pos
        if degree is None:
            err.write("check needs a degree (positional or --degree)\n")
            return EXIT_PARSE
        rep = report.check_report(args.expr, m, degree, args.max_enum)
    _emit(rep, args.json, out)
    return EXIT_OK


def main(argv=None) -> int:
    try:
        return run(argv)
    except SystemExit:
        raise
    except Exception as exc:  # invariant violations surface as exit 1
        sys.stderr.write(f"internal error: {type(exc).__name__}: {exc}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
