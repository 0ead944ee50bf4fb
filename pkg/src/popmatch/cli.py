"""Command line entry point: solve, verify, gen, bench."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from popmatch.bench import run_bench
from popmatch.core import InstanceError, NoPopularMatching
from popmatch.formats import ParseError, parse, parse_matching, render, render_assignment, \
    render_matching
from popmatch.generate import GenParams, generate
from popmatch.oracle import DEFAULT_LIMIT, OracleSizeError, is_popular
from popmatch.strict import solve_strict
from popmatch.ties import solve_ties, solve_ties_max_cardinality

EXIT_OK, EXIT_ERROR, EXIT_NONE = 0, 1, 2


class UsageError(Exception):
    pass


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _read(path: str) -> str:
    return sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")


def cmd_solve(args: argparse.Namespace) -> int:
    instance = parse(_read(args.file))
    engine = args.engine
    if engine == "auto":
        engine = "strict" if instance.is_strict and not args.max_cardinality else "ties"
    if engine == "strict":
        if args.max_cardinality:
            raise UsageError("--max-cardinality needs the ties engine")
        if not instance.is_strict:
            raise UsageError("instance has ties; the strict engine cannot solve it")
        result = solve_strict(instance)
    elif args.max_cardinality:
        result = solve_ties_max_cardinality(instance)
    else:
        result = solve_ties(instance)
    if isinstance(result, NoPopularMatching):
        sys.stdout.write(render_matching(instance, None))
        print(f"# {result.reason}", file=sys.stderr)
        return EXIT_NONE
    sys.stdout.write(render_matching(instance, result))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    instance = parse(_read(args.file))
    matching = parse_matching(_read(args.matching), instance)
    verdict = is_popular(matching, instance, args.limit)
    if verdict.popular:
        print("POPULAR")
        return EXIT_OK
    print("BEATEN")
    print("\n".join(render_assignment(instance, verdict.witness)))
    print(f"# margin {verdict.margin}")
    return EXIT_NONE


def cmd_gen(args: argparse.Namespace) -> int:
    params = GenParams(args.applicants, args.jobs, args.list_len, args.tie_prob,
                       args.categories, args.seed, args.weights, args.min_list_len)
    sys.stdout.write(render(generate(params)))
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    print("n,m,engine,millis")
    for row in run_bench(args.sizes, args.seed, args.list_len, args.categories,
                         repeats=args.repeats):
        print(row.csv(), flush=True)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="popmatch",
                                     description="Weighted popular matchings.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="find a popular matching")
    p.add_argument("file", help="instance file, '-' for stdin")
    p.add_argument("--max-cardinality", action="store_true",
                   help="among popular matchings, leave the fewest applicants unmatched")
    p.add_argument("--engine", choices=("strict", "ties", "auto"), default="auto")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a matching against every alternative")
    p.add_argument("file")
    p.add_argument("matching")
    p.add_argument("--limit", type=int, default=DEFAULT_LIMIT,
                   help="refuse instances with more than this many candidate matchings")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="print a random instance")
    p.add_argument("--applicants", type=int, required=True)
    p.add_argument("--jobs", type=int, required=True)
    p.add_argument("--list-len", type=int, required=True)
    p.add_argument("--tie-prob", type=float, default=0.0)
    p.add_argument("--categories", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--weights", type=_int_list, default=None)
    p.add_argument("--min-list-len", type=int, default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="time both engines, CSV on stdout")
    p.add_argument("--sizes", type=_int_list, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--list-len", type=int, default=5)
    p.add_argument("--categories", type=int, default=3)
    p.add_argument("--repeats", type=int, default=1)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, InstanceError, OracleSizeError, UsageError, ValueError, OSError) as exc:
        print(f"popmatch: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
