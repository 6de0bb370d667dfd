"""Command line entry point: ``qbat run|report|plotdata|list-problems``."""

from __future__ import annotations

import argparse
import logging
import sys

from . import harness
from .problems import format_problem_table, suite


def _cmd_run(args) -> int:
    try:
        cfg = harness.load_config(args.config)
    except (OSError, harness.ConfigParseError, harness.ConfigValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.output_dir:
        cfg.output_dir = type(cfg.output_dir)(args.output_dir)
    result = harness.execute(cfg, workers=args.workers)
    print(f"{len(result.records)} runs recorded in {cfg.output_dir}")
    for (alg, prob), msg in sorted(result.failures.items()):
        print(f"FAILED {alg}/{prob}: {msg}", file=sys.stderr)
    return 0 if result.ok else 1


def _cmd_report(args) -> int:
    try:
        rep = harness.report_dir(args.results_dir, reference=args.reference, alpha=args.alpha)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(rep.to_text())
    return 0


def _cmd_plotdata(args) -> int:
    try:
        paths = harness.emit_convergence(harness.load_records(args.results_dir), args.out_dir)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for p in paths:
        print(p)
    return 0


def _cmd_list(args) -> int:
    print(format_problem_table(suite(args.dim)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qbat", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run an experiment config")
    p.add_argument("config")
    p.add_argument("--workers", type=int, default=None, help="override the config's worker count")
    p.add_argument("--output-dir", default=None)
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("report", help="summarise a results directory")
    p.add_argument("results_dir")
    p.add_argument("--reference", default="qba")
    p.add_argument("--alpha", type=float, default=0.05)
    p.set_defaults(func=_cmd_report)

    p = sub.add_parser("plotdata", help="write mean convergence curves as CSV")
    p.add_argument("results_dir")
    p.add_argument("out_dir")
    p.set_defaults(func=_cmd_plotdata)

    p = sub.add_parser("list-problems", help="show the benchmark suite")
    p.add_argument("--dim", type=int, default=10)
    p.set_defaults(func=_cmd_list)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
