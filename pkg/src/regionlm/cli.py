"""Command-line interface.

Exit status is 0 on success, 1 on bad input or a failed verification, and 2
when an internal invariant is violated.
"""

from __future__ import annotations

import argparse
import sys

from .errors import RegionLMError
from .index import build_index_from_file, load_index, read_stored_set, save_index
from .lm import compile_lm, load_spec
from .nexi import translate_nexi
from .query import evaluate, format_query, format_ranked, parse_query, rank
from .rewrite import check_equivalent, rewrite_all
from .verify import SUITES


def _stored_arg(value):
    name, sep, path = value.partition("=")
    if not sep or not name or not path:
        raise argparse.ArgumentTypeError(f"expected NAME=PATH, got {value!r}")
    return name, path


def cmd_index(args):
    index = build_index_from_file(args.corpus)
    for name, path in args.stored:
        index = index.register_stored_set(name, read_stored_set(path))
    save_index(index, args.output)
    print(
        f"indexed {index.word_count} words, {sum(map(len, index.elements.values()))} elements, "
        f"{len(index.stored_sets)} stored sets into {args.output}",
        file=sys.stderr,
    )


def _run(expr, index_dir, k):
    index = load_index(index_dir)
    sys.stdout.write(format_ranked(rank(evaluate(expr, index), k)))


def cmd_query(args):
    expr = parse_query(args.query)
    _run(expr, args.index, args.k)


def cmd_compile_lm(args):
    expr = compile_lm(load_spec(args.spec))
    print(format_query(expr))
    if args.evaluate:
        _run(expr, args.evaluate, args.k)


def cmd_nexi(args):
    expr = translate_nexi(args.query)
    print(format_query(expr))
    if args.evaluate:
        _run(expr, args.evaluate, args.k)


def cmd_rewrite(args):
    expr = parse_query(args.query)
    alternatives = rewrite_all(expr)
    for alt in alternatives:
        line = format_query(alt)
        if args.check:
            verdict = check_equivalent(expr, alt, args.check, args.seed)
            line += f"\t{'equivalent' if verdict else 'DIFFERENT'} on {verdict.trials} trials"
        print(line)


def cmd_verify(args):
    report = SUITES[args.mode](args.trials, args.seed)
    print(f"verify {args.mode}: trials={args.trials} seed={args.seed}")
    sys.stdout.write(report.text())
    return 0 if report.passed else 1


def build_parser():
    parser = argparse.ArgumentParser(prog="regionlm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("index", help="index an XML corpus")
    p.add_argument("corpus")
    p.add_argument("-o", "--output", required=True, help="index directory")
    p.add_argument(
        "--stored", action="append", default=[], type=_stored_arg, metavar="NAME=PATH",
        help="register a start<TAB>end<TAB>score file as $NAME (repeatable)",
    )
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("query", help="evaluate a region query")
    p.add_argument("index")
    p.add_argument("-q", "--query", required=True)
    p.add_argument("-k", type=int, default=10)
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("compile-lm", help="compile a language-model spec to a region query")
    p.add_argument("spec")
    p.add_argument("--evaluate", metavar="INDEX")
    p.add_argument("-k", type=int, default=10)
    p.set_defaults(func=cmd_compile_lm)

    p = sub.add_parser("nexi", help="translate a NEXI query to a region query")
    p.add_argument("-q", "--query", required=True)
    p.add_argument("--evaluate", metavar="INDEX")
    p.add_argument("-k", type=int, default=10)
    p.set_defaults(func=cmd_nexi)

    p = sub.add_parser("rewrite", help="list equivalent alternative forms of a query")
    p.add_argument("-q", "--query", required=True)
    p.add_argument("--check", type=int, default=0, metavar="TRIALS")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_rewrite)

    p = sub.add_parser("verify", help="run an oracle-equivalence suite")
    p.add_argument("mode", choices=sorted(SUITES))
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "k", 0) < 0:
        print("error: -k must be non-negative", file=sys.stderr)
        return 1
    try:
        return args.func(args) or 0
    except (RegionLMError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (AssertionError, ValueError, TypeError) as exc:
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
