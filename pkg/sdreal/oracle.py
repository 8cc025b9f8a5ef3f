"""
Rational oracles and agreement metrics for validating computed digits.

This module provides exact reference values (square roots, Heron bounds,
random rationals) and the functions that compare stream approximations
against them, aggregate the results and print a report.
"""
import math
import random
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Tuple


def sqrt_rational(q, bits: int = 80) -> Fraction:
    """
    Largest multiple of 2**-bits whose square is <= q.

    Returns:
        Fraction: a lower bound L with sqrt(q) - 2**-bits < L <= sqrt(q)
    """
    q = Fraction(q)
    if q < 0:
        raise ValueError(f"sqrt_rational needs q >= 0, got {q}")
    scaled = (q.numerator << (2 * bits)) // q.denominator
    return Fraction(math.isqrt(scaled), 1 << bits)


def heron_upper_bound(x, n: int, bits: int = 128) -> Fraction:
    """
    An upper bound for H(x, n) that keeps denominators at 2**bits.

    The Heron step h -> (h + x/h)/2 is increasing for h >= sqrt(x), so rounding
    every iterate up keeps it above the exact one.
    """
    x = Fraction(x)
    scale = 1 << bits
    h = Fraction(1)
    for _ in range(n):
        h = (h + x / h) / 2
        h = Fraction(-((-h.numerator * scale) // h.denominator), scale)
    return h


def random_rationals(
    rng: random.Random,
    count: int,
    lo=-1,
    hi=1,
    max_denominator: int = 1024,
) -> List[Fraction]:
    """`count` random rationals in [lo, hi] with denominators up to max_denominator."""
    lo, hi = Fraction(lo), Fraction(hi)
    values = []
    while len(values) < count:
        denominator = rng.randint(1, max_denominator)
        low = math.ceil(lo * denominator)
        high = math.floor(hi * denominator)
        if low > high:
            continue
        values.append(Fraction(rng.randint(low, high), denominator))
    return values


def error_bits(error: Fraction) -> float:
    """-log2 of an error; infinite for an exact match."""
    if error == 0:
        return math.inf
    return -math.log2(error)


def compare_to_oracle(
    approximation: Fraction,
    expected: Fraction,
    depth: int,
    slack: Fraction = Fraction(0),
) -> Tuple[bool, Fraction]:
    """
    Check one approximation against the exact value.

    Args:
        approximation: approx(stream, depth)
        expected: the exact rational the stream should denote
        depth: number of digits the approximation used
        slack: extra tolerance on top of 2**-depth (e.g. oracle precision)

    Returns:
        Tuple of (is_match: bool, error: Fraction)
    """
    error = abs(Fraction(approximation) - Fraction(expected))
    return error <= Fraction(1, 1 << depth) + slack, error


def check_record(check: str, approximation, expected, depth: int, slack=Fraction(0)) -> Dict[str, Any]:
    """compare_to_oracle packaged as a report record."""
    is_correct, error = compare_to_oracle(approximation, expected, depth, slack)
    return {
        "check": check,
        "is_correct": is_correct,
        "error": error,
        "depth": depth,
        "computed": approximation,
        "expected": expected,
    }


def calculate_agreement_metrics(records: Iterable[Dict[str, Any]]) -> Dict[str, Any]:
    """
    Aggregate oracle records.

    Returns:
        Dictionary containing:
        - accuracy: share of records within tolerance
        - total_checks / correct_checks / failed_checks
        - worst_error_bits: the smallest number of correct bits seen
        - check_metrics: the records themselves
        - summary: printable strings
    """
    records = list(records)
    total = len(records)
    correct = sum(1 for r in records if r["is_correct"])
    accuracy = correct / total if total > 0 else 0.0
    worst = min((error_bits(r["error"]) for r in records), default=math.inf)
    return {
        "accuracy": accuracy,
        "total_checks": total,
        "correct_checks": correct,
        "failed_checks": total - correct,
        "worst_error_bits": worst,
        "check_metrics": records,
        "summary": {
            "accuracy_percentage": f"{accuracy * 100:.2f}%",
            "worst_error": "exact" if worst == math.inf else f"2^-{worst:.1f}",
        },
    }


def print_validation_report(metrics: Dict[str, Any], title: str = "SDREAL ORACLE VALIDATION", verbose: bool = True):
    """
    Print a formatted validation report.

    Args:
        metrics: Metrics dictionary from calculate_agreement_metrics
        title: Heading line
        verbose: If True, list every failed check
    """
    print("\n" + "=" * 80)
    print(title)
    print("=" * 80)

    print("\n📊 Overall Metrics:")
    print(f"   Accuracy:     {metrics['summary']['accuracy_percentage']}")
    print(f"   Worst error:  {metrics['summary']['worst_error']}")

    print("\n📈 Check Statistics:")
    print(f"   Total Checks:   {metrics['total_checks']}")
    print(f"   Passed Checks:  {metrics['correct_checks']} ✓")
    print(f"   Failed Checks:  {metrics['failed_checks']} ✗")

    failures = [r for r in metrics.get("check_metrics", []) if not r["is_correct"]]
    if verbose and failures:
        print("\n📋 Failed Checks:")
        print("-" * 80)
        for record in failures:
            print(f"\n✗ {record['check']} (depth {record['depth']})")
            print(f"   Expected:  {record['expected']}")
            print(f"   Computed:  {record['computed']}")
            print(f"   Error:     2^-{error_bits(record['error']):.1f}")

    print("\n" + "=" * 80)
