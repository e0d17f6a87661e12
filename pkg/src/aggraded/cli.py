"""Command-line entry point: ``aggraded run SESSION [options]``."""

from __future__ import annotations

import argparse
import sys

from .session import SessionError, execute, parse_session, render_report, summarize


def build_parser():
    parser = argparse.ArgumentParser(
        prog="aggraded",
        description="Associated graded modules, tangent cones and purity verdicts, exactly.",
    )
    sub = parser.add_subparsers(dest="action", required=True)
    run = sub.add_parser("run", help="run a session file")
    run.add_argument("session", help="path to the session file")
    run.add_argument("--out", help="write the machine-readable JSON report here")
    run.add_argument("--char", type=int, default=None, help="override the characteristic")
    run.add_argument("--truncation", type=int, default=None, help="override the oracle truncation")
    run.add_argument("--max-homdeg", type=int, default=None, help="override the homological cutoff")
    run.add_argument("--verbose", action="store_true", help="echo the parsed session")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with open(args.session, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        ses = parse_session(text)
    except SessionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.verbose:
        print(f"# parsed session: {ses.describe()}")
    report, status = execute(
        ses, char_override=args.char, truncation=args.truncation, max_homdeg=args.max_homdeg
    )
    if report["results"]:
        print(summarize(report))
    if "error" in report.get("provenance", {}):
        print(f"error: {report['provenance']['error']}", file=sys.stderr)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(render_report(report))
            fh.write("\n")
    return status


if __name__ == "__main__":
    sys.exit(main())
