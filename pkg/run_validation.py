"""
Validation script to check computed digits against exact rational oracles.

This script:
1. Draws seeded random rationals satisfying each operation's preconditions
2. Runs the stream operations on them
3. Compares the first digits with the exact result and collects records
4. Prints a validation report per suite

Usage:
    python run_validation.py oracle sqrt     # selected suites
    python run_validation.py --all           # every suite
"""
import random
import sys
from fractions import Fraction
from typing import Callable, Dict, List, Sequence, Tuple

from dotenv import load_dotenv

from sdreal.applications import heron_rational, mult_via_cauchy, mult_via_limit, poslog, sqrt_stream
from sdreal.cauchy import IDENTITY_MODULUS, complete, const_modulus, power_modulus, shift_modulus
from sdreal.convert import cauchy_to_stream, stream_of_rational, stream_to_cauchy
from sdreal.digits import ReadProbe, approx, const_stream, prefix, run_deep, sd_times
from sdreal.limits import LimitVariant, direct_limit, indirect_limit
from sdreal.oracle import (
    calculate_agreement_metrics,
    check_record,
    heron_upper_bound,
    print_validation_report,
    random_rationals,
    sqrt_rational,
)
from sdreal.settings import Settings, load_settings
from sdreal.stream_ops import average, divide, double, quarter_shift, shift_one

load_dotenv()

Record = Dict[str, object]
HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)


def _one(rng, lo=-1, hi=1) -> Fraction:
    return random_rationals(rng, 1, lo, hi)[0]


def _division_pair(rng) -> Tuple[Fraction, Fraction]:
    y = _one(rng, QUARTER, 1)
    return _one(rng, -y, y), y


S = stream_of_rational

# name -> (sample inputs, build the stream, exact value)
OPERATIONS: Dict[str, Tuple[Callable, Callable, Callable]] = {
    "average": (
        lambda rng: (_one(rng), _one(rng)),
        lambda x, y: average(S(x), S(y)),
        lambda x, y: (x + y) / 2,
    ),
    "divide": (
        _division_pair,
        lambda x, y: divide(S(x), S(y)),
        lambda x, y: x / y,
    ),
    "sd_times": (
        lambda rng: (rng.choice([-1, 0, 1]), _one(rng)),
        lambda d, x: sd_times(d, S(x)),
        lambda d, x: d * x,
    ),
    "double": (
        lambda rng: (_one(rng, -HALF, HALF),),
        lambda x: double(S(x)),
        lambda x: 2 * x,
    ),
    "shift_one(+1)": (
        lambda rng: (_one(rng, -1, 0),),
        lambda x: shift_one(S(x), 1),
        lambda x: x + 1,
    ),
    "shift_one(-1)": (
        lambda rng: (_one(rng, 0, 1),),
        lambda x: shift_one(S(x), -1),
        lambda x: x - 1,
    ),
    "quarter_shift(+1)": (
        lambda rng: (_one(rng),),
        lambda x: quarter_shift(S(x), 1),
        lambda x: x / 2 + QUARTER,
    ),
    "quarter_shift(-1)": (
        lambda rng: (_one(rng),),
        lambda x: quarter_shift(S(x), -1),
        lambda x: x / 2 - QUARTER,
    ),
    "mult(lim, direct)": (
        lambda rng: (_one(rng), _one(rng)),
        lambda x, y: mult_via_limit(S(x), S(y), LimitVariant.DIRECT),
        lambda x, y: x * y,
    ),
    "mult(lim, indirect)": (
        lambda rng: (_one(rng), _one(rng)),
        lambda x, y: mult_via_limit(S(x), S(y), LimitVariant.INDIRECT),
        lambda x, y: x * y,
    ),
    "mult(cauchy)": (
        lambda rng: (_one(rng), _one(rng)),
        lambda x, y: mult_via_cauchy(S(x), S(y)),
        lambda x, y: x * y,
    ),
    "round trip": (
        lambda rng: (_one(rng),),
        lambda x: cauchy_to_stream(stream_to_cauchy(S(x))),
        lambda x: x,
    ),
}


def validate_operations(settings: Settings) -> List[Record]:
    """Every stream operation on random rationals, checked to oracle_depth digits."""
    rng = random.Random(settings.seed)
    depth = settings.oracle_depth
    records = []
    for name, (sample, build, exact) in OPERATIONS.items():
        print(f"🔄 {name}...")
        for _ in range(settings.oracle_samples):
            args = sample(rng)
            label = f"{name}{tuple(str(a) for a in args)}"
            records.append(check_record(label, approx(build(*args), depth), exact(*args), depth))
    return records


def validate_sqrt(settings: Settings) -> List[Record]:
    """sqrt_stream on rationals in [0, 1] against a 2**-(depth+10) square root."""
    rng = random.Random(settings.seed + 1)
    depth = max(1, settings.oracle_depth // 2)
    samples = max(1, settings.oracle_samples // 5)
    guard = depth + 10
    records = []
    for q in random_rationals(rng, samples, 0, 1):
        print(f"🔄 sqrt({q})...")
        computed = approx(sqrt_stream(S(q)), depth)
        records.append(check_record(
            f"sqrt({q})", computed, sqrt_rational(q, guard), depth, Fraction(1, 1 << guard)
        ))
    return records


def _heron_record(label: str, x: Fraction, upper: Fraction, exact_lower_check: bool, tolerance: Fraction) -> Record:
    lower = sqrt_rational(x, 128)
    # upper >= H(x, n) >= sqrt(x) >= lower
    record = check_record(label, upper, lower, 0)
    record["is_correct"] = upper - lower <= tolerance and (not exact_lower_check or upper * upper >= x)
    record["error"] = upper - lower
    return record


def validate_heron(settings: Settings) -> List[Record]:
    """
    Heron bracketing: sqrt(x) <= H(x, n) and H(x, n) - sqrt(x) <= 2**-n for
    x in [0, 1], n <= 20; and <= 2**-(2**n) for x in [1/4, 1], n <= 6.
    """
    rng = random.Random(settings.seed + 2)
    records = []
    for x in random_rationals(rng, settings.oracle_samples, 0, 1):
        for n in range(21):
            if n <= 10:
                h = heron_rational(x, n)
                records.append(_heron_record(f"H({x}, {n})", x, h, True, Fraction(1, 1 << n)))
            else:
                upper = heron_upper_bound(x, n)
                records.append(_heron_record(f"H({x}, {n})", x, upper, False, Fraction(1, 1 << n)))
    for x in random_rationals(rng, settings.oracle_samples, QUARTER, 1):
        for n in range(7):
            h = heron_rational(x, n)
            records.append(_heron_record(f"H({x}, {n}) fast", x, h, True, Fraction(1, 1 << (1 << n))))
    return records


def validate_lookahead(settings: Settings, digits: int = 100) -> List[Record]:
    """Digits read from any single F(n) while producing `digits` digits of the constant zero limit."""
    records = []
    bounds = {LimitVariant.DIRECT: 3 * digits + 3, LimitVariant.INDIRECT: (digits + 4) + 4}
    for variant, limit_op in ((LimitVariant.DIRECT, direct_limit), (LimitVariant.INDIRECT, indirect_limit)):
        probe = ReadProbe()
        stream = limit_op(IDENTITY_MODULUS, probe.sequence(lambda n: const_stream(0)))
        prefix(stream, digits)
        record = check_record(f"{variant.value} lookahead", Fraction(probe.max_reads), Fraction(0), 0)
        record["is_correct"] = probe.max_reads <= bounds[variant]
        record["expected"] = f"<= {bounds[variant]}"
        record["error"] = Fraction(0)
        print(f"   {variant.value}: {probe.max_reads} digits read (bound {bounds[variant]})")
        records.append(record)
    return records


def validate_completeness(settings: Settings) -> List[Record]:
    """complete's modulus is max(M(p+1), p+2)."""
    records = []
    moduli = {
        "id": IDENTITY_MODULUS,
        "zero": const_modulus(0),
        "square": power_modulus(2),
        "cube": power_modulus(3),
        "shifted": shift_modulus(IDENTITY_MODULUS, 5),
    }
    xs = lambda n: stream_to_cauchy(const_stream(0))
    for name, modulus in moduli.items():
        x = complete(xs, modulus)
        for p in range(1, 21):
            expected = max(modulus(p + 1), p + 2)
            records.append(check_record(f"complete mod {name} p={p}", Fraction(x.mod(p)), Fraction(expected), 0))
    return records


def validate_poslog(settings: Settings, limit: int = 10 ** 6) -> List[Record]:
    """p <= 2**poslog(p) and minimality, for every p <= limit; one record per power-of-two block."""
    records = []
    p = 1
    while p <= limit:
        n = poslog(p)
        block_end = min(1 << n, limit)
        ok = True
        for q in range(p, block_end + 1):
            m = poslog(q)
            if not (q <= (1 << m) and (m == 0 or q > (1 << (m - 1)))):
                ok = False
        record = check_record(f"poslog {p}..{block_end}", Fraction(n), Fraction(n), 0)
        record["is_correct"] = ok
        records.append(record)
        p = block_end + 1
    return records


SUITES: Dict[str, Callable[[Settings], List[Record]]] = {
    "oracle": validate_operations,
    "sqrt": validate_sqrt,
    "heron": validate_heron,
    "lookahead": validate_lookahead,
    "completeness": validate_completeness,
    "poslog": validate_poslog,
}


def run_suites(names: Sequence[str], settings: Settings) -> bool:
    """Run the named suites and print one report each. Returns True when all checks pass."""
    all_passed = True
    summary = []
    for name in names:
        print(f"\n{'='*80}")
        print(f"Validating: {name}")
        print(f"{'='*80}")
        records = run_deep(
            SUITES[name], settings,
            recursion_limit=settings.recursion_limit,
            stack_mb=settings.stack_mb,
        )
        metrics = calculate_agreement_metrics(records)
        print_validation_report(metrics, title=f"SUITE: {name}", verbose=True)
        summary.append((name, metrics))
        all_passed = all_passed and metrics["failed_checks"] == 0

    if len(summary) > 1:
        print(f"\n\n{'='*80}")
        print("VALIDATION SUMMARY")
        print(f"{'='*80}\n")
        for name, metrics in summary:
            marker = "✓" if metrics["failed_checks"] == 0 else "✗"
            print(f"{marker} {name:14} | Accuracy: {metrics['accuracy'] * 100:6.2f}% | Checks: {metrics['total_checks']}")
        print(f"\n{'='*80}")
    return all_passed


if __name__ == "__main__":
    settings = load_settings()
    if len(sys.argv) > 1 and sys.argv[1] == "--all":
        selected = list(SUITES)
    else:
        selected = sys.argv[1:]
    unknown = [name for name in selected if name not in SUITES]
    if not selected or unknown:
        if unknown:
            print(f"⚠️  Unknown suite(s): {', '.join(unknown)}")
        print(f"Usage: python run_validation.py --all | {' '.join(SUITES)}")
        sys.exit(1)
    sys.exit(0 if run_suites(selected, settings) else 1)
