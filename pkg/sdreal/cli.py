"""
Command-line entry point.

    python -m sdreal eval "<expr>" --digits N
    python -m sdreal bench constant|geometric|mult --digits N [--trials T] [--seed S] [--csv PATH] [--reference]

Exit codes: 0 on success, 1 on a syntax, range or precondition error,
2 when an oracle check fails or anything else goes wrong.
"""
import argparse
import logging
import sys
from typing import List, Optional

from dotenv import load_dotenv

from .benchmarks import CONSTANT_MODULI, SUITES, load_reference_tables, print_bench_table, save_csv
from .errors import EXIT_INTERNAL_ERROR, EXIT_OK, EXIT_USER_ERROR, SdRealError, exit_code_for
from .expression import eval_digits, parse_expr
from .settings import Settings, load_settings

logger = logging.getLogger(__name__)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USER_ERROR, f"{self.prog}: error: {message}\n")


def build_parser(settings: Settings) -> argparse.ArgumentParser:
    parser = _Parser(prog="sdreal", description="Exact real arithmetic on signed-digit streams")
    commands = parser.add_subparsers(dest="command", required=True)

    eval_parser = commands.add_parser("eval", help="Print the first digits of an expression")
    eval_parser.add_argument("expression", help='e.g. "sqrt(1/4)" or "mul_direct(1/2, -3/4)"')
    eval_parser.add_argument("--digits", type=int, default=settings.digits)
    eval_parser.set_defaults(handler=run_eval)

    bench_parser = commands.add_parser("bench", help="Run a benchmark suite")
    bench_parser.add_argument("suite", choices=sorted(SUITES))
    bench_parser.add_argument("--digits", type=int, default=settings.digits)
    bench_parser.add_argument("--trials", type=int, default=settings.trials)
    bench_parser.add_argument("--seed", type=int, default=settings.seed)
    bench_parser.add_argument(
        "--moduli",
        default=",".join(CONSTANT_MODULI),
        help="Comma-separated moduli for the constant suite",
    )
    bench_parser.add_argument("--csv", metavar="PATH", help="Write results as CSV ('-' for stdout)")
    bench_parser.add_argument("--reference", action="store_true", help="Show the published timings next to the measured ones")
    bench_parser.set_defaults(handler=run_bench)
    return parser


def run_eval(args: argparse.Namespace, settings: Settings) -> int:
    if args.digits < 0:
        raise ValueError(f"--digits must be non-negative, got {args.digits}")
    expression = parse_expr(args.expression)
    digits, value = eval_digits(
        expression, args.digits,
        recursion_limit=settings.recursion_limit,
        stack_mb=settings.stack_mb,
    )
    print(digits)
    print(f"{value} ≈ {float(value):.12g}")
    return EXIT_OK


def run_bench(args: argparse.Namespace, settings: Settings) -> int:
    if args.digits < 1:
        raise ValueError(f"--digits must be positive, got {args.digits}")
    if args.suite == "constant":
        moduli = [name.strip() for name in args.moduli.split(",") if name.strip()]
        results = SUITES["constant"](args.digits, moduli, args.trials, settings)
    else:
        results = SUITES[args.suite](args.digits, args.trials, args.seed, settings)

    reference = None
    if args.reference:
        try:
            reference = load_reference_tables()
        except FileNotFoundError as e:
            print(f"\n⚠️  {e}")

    print_bench_table(results, args.suite, reference)
    if args.csv:
        save_csv(results, args.csv)
        if args.csv != "-":
            print(f"\n✅ CSV written to {args.csv}")
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    load_dotenv()
    settings = load_settings()
    logging.basicConfig(
        level=settings.log_level,
        format="%(asctime)s %(name)s %(levelname)s %(message)s",
    )
    args = build_parser(settings).parse_args(argv)

    try:
        return args.handler(args, settings)
    except SdRealError as e:
        print(f"❌ {e}", file=sys.stderr)
        return exit_code_for(e)
    except ValueError as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_USER_ERROR
    except Exception as e:
        logger.exception("Unexpected failure")
        print(f"❌ Internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL_ERROR
