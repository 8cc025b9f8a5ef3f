"""
Benchmark suites comparing the direct and indirect limit operators.

- constant:  F(n) = 000... under the moduli p, p^2, p^3
- geometric: us(0) = 0::u, us(n+1) = (0::u) * us(n) for a seeded random u
- mult:      the three multiplications on seeded random streams

Every run is checked against a rational oracle before its timing is kept;
a wrong answer raises InvariantViolation instead of producing a row.
"""
import csv
import json
import logging
import statistics
import sys
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, Iterable, List, Optional, Sequence, TextIO, Tuple

from .applications import mult_via_cauchy, mult_via_limit
from .cauchy import IDENTITY_MODULUS, Modulus, power_modulus
from .digits import DigitStream, ReadProbe, approx, cons_digit, const_stream, run_deep, unfold
from .errors import InvariantViolation
from .limits import LimitVariant, direct_limit, indirect_limit
from .settings import Settings

logger = logging.getLogger(__name__)

CSV_FIELDS = ["algorithm", "param", "digits", "seconds", "max_lookahead", "trials"]

REFERENCE_TABLES_PATH = Path(__file__).resolve().parent.parent / "ground_truth" / "runtime_tables.json"

# 64-bit linear congruential generator; digit = ((state >> 33) mod 3) - 1
LCG_MULTIPLIER = 6364136223846793005
LCG_INCREMENT = 1442695040888963407
LCG_MASK = (1 << 64) - 1

CONSTANT_MODULI: Dict[str, Modulus] = {
    "p": IDENTITY_MODULUS,
    "p^2": power_modulus(2),
    "p^3": power_modulus(3),
}

_LIMITS = {
    LimitVariant.DIRECT: direct_limit,
    LimitVariant.INDIRECT: indirect_limit,
}

# (stream to measure, probe over its input streams)
Build = Callable[[], Tuple[DigitStream, ReadProbe]]


@dataclass
class BenchResult:
    algorithm: str
    param: str
    digits: int
    seconds: float
    max_lookahead: int
    trials: int
    approximation: Fraction = field(default=Fraction(0), compare=False, repr=False)

    def as_row(self) -> Dict[str, object]:
        row = asdict(self)
        row.pop("approximation")
        row["seconds"] = f"{self.seconds:.6f}"
        return row


def _lcg_step(state: int) -> Tuple[int, int]:
    state = (LCG_MULTIPLIER * state + LCG_INCREMENT) & LCG_MASK
    return ((state >> 33) % 3) - 1, state


def random_stream(seed: int) -> DigitStream:
    """A reproducible pseudo-random digit stream. Fresh cells on every call."""
    return unfold(_lcg_step, seed & LCG_MASK)


def _timed_run(build: Build, digits: int) -> Tuple[float, Fraction, int]:
    stream, probe = build()
    start = time.perf_counter()
    value = approx(stream, digits)
    elapsed = time.perf_counter() - start
    return elapsed, value, probe.max_reads


def measure(
    build: Build,
    digits: int,
    trials: int,
    settings: Optional[Settings] = None,
    warmup: bool = True,
) -> Tuple[float, Fraction, int]:
    """
    Median wall time of `trials` runs (after one discarded warm-up run), each
    on freshly built streams.

    Returns:
        Tuple of (median seconds, approximation of the last run, max lookahead)
    """
    if trials < 1:
        raise ValueError(f"Trial count must be at least 1, got {trials}")
    settings = settings or Settings()
    runs = []
    for _ in range(trials + (1 if warmup else 0)):
        runs.append(run_deep(
            _timed_run, build, digits,
            recursion_limit=settings.recursion_limit,
            stack_mb=settings.stack_mb,
        ))
    if warmup:
        runs = runs[1:]
    seconds = statistics.median(run[0] for run in runs)
    return seconds, runs[-1][1], max(run[2] for run in runs)


def check_oracle(label: str, approximation: Fraction, expected: Fraction, tolerance: Fraction) -> None:
    """Raise InvariantViolation when |approximation - expected| > tolerance."""
    error = abs(approximation - expected)
    if error > tolerance:
        raise InvariantViolation(
            f"{label}: computed {approximation}, expected {expected} within {tolerance}, error {error}"
        )


def _constant_build(variant: LimitVariant, modulus: Modulus) -> Build:
    def build():
        probe = ReadProbe()
        return _LIMITS[variant](modulus, probe.sequence(lambda n: const_stream(0))), probe
    return build


def bench_constant(
    digits: int,
    moduli: Sequence[str] = ("p", "p^2", "p^3"),
    trials: int = 3,
    settings: Optional[Settings] = None,
) -> List[BenchResult]:
    """Both limit operators on the constant zero sequence, once per modulus."""
    results = []
    for name in moduli:
        if name not in CONSTANT_MODULI:
            raise ValueError(f"Unknown modulus '{name}', expected one of {', '.join(CONSTANT_MODULI)}")
        for variant in (LimitVariant.INDIRECT, LimitVariant.DIRECT):
            seconds, value, lookahead = measure(
                _constant_build(variant, CONSTANT_MODULI[name]), digits, trials, settings
            )
            check_oracle(f"constant {variant.value} {name}", value, Fraction(0), Fraction(1, 1 << digits))
            logger.info("constant %s %s: %.4fs, lookahead %d", variant.value, name, seconds, lookahead)
            results.append(BenchResult(variant.value, name, digits, seconds, lookahead, trials, value))
    return results


def geometric_sequence(x: DigitStream) -> Callable[[int], DigitStream]:
    """us(0) = x, us(n+1) = x * us(n), built on demand and kept."""
    powers: List[DigitStream] = [x]

    def get(n: int) -> DigitStream:
        while len(powers) <= n:
            powers.append(mult_via_cauchy(x, powers[-1]))
        return powers[n]

    return get


def _geometric_build(variant: LimitVariant, seed: int) -> Build:
    def build():
        probe = ReadProbe()
        sequence = geometric_sequence(cons_digit(0, random_stream(seed)))
        return _LIMITS[variant](IDENTITY_MODULUS, probe.sequence(sequence)), probe
    return build


def bench_geometric(digits: int, trials: int = 3, seed: int = 2021, settings: Optional[Settings] = None) -> List[BenchResult]:
    """Both limit operators on the powers of 0::u, which converge to 0 with modulus p."""
    results = []
    for variant in (LimitVariant.INDIRECT, LimitVariant.DIRECT):
        seconds, value, lookahead = measure(_geometric_build(variant, seed), digits, trials, settings)
        check_oracle(f"geometric {variant.value}", value, Fraction(0), Fraction(1, 1 << digits))
        logger.info("geometric %s: %.4fs, lookahead %d", variant.value, seconds, lookahead)
        results.append(BenchResult(variant.value, str(digits), digits, seconds, lookahead, trials, value))
    return results


MULT_ALGORITHMS: Dict[str, Callable[[DigitStream, DigitStream], DigitStream]] = {
    "cauchy": mult_via_cauchy,
    "lim-direct": lambda u, v: mult_via_limit(u, v, LimitVariant.DIRECT),
    "lim-indirect": lambda u, v: mult_via_limit(u, v, LimitVariant.INDIRECT),
}


def _mult_build(algorithm: str, seed: int) -> Build:
    def build():
        probe = ReadProbe()
        u = probe.watch(random_stream(seed))
        v = probe.watch(random_stream(seed + 1))
        return MULT_ALGORITHMS[algorithm](u, v), probe
    return build


def bench_mult(digits: int, trials: int = 3, seed: int = 2021, settings: Optional[Settings] = None) -> List[BenchResult]:
    """The three multiplications on the same pair of seeded random streams."""
    # |uv - ab| <= |u - a| + |v - b| <= 2 * 2**-guard
    guard = digits + 8
    expected = approx(random_stream(seed), guard) * approx(random_stream(seed + 1), guard)
    tolerance = Fraction(1, 1 << digits) + Fraction(2, 1 << guard)

    results = []
    for algorithm in MULT_ALGORITHMS:
        seconds, value, lookahead = measure(_mult_build(algorithm, seed), digits, trials, settings)
        check_oracle(f"mult {algorithm}", value, expected, tolerance)
        logger.info("mult %s: %.4fs, lookahead %d", algorithm, seconds, lookahead)
        results.append(BenchResult(algorithm, str(digits), digits, seconds, lookahead, trials, value))

    agreement = Fraction(2, 1 << digits)
    for first, second in zip(results, results[1:] + results[:1]):
        check_oracle(
            f"mult {first.algorithm} vs {second.algorithm}",
            first.approximation, second.approximation, agreement,
        )
    return results


SUITES = {
    "constant": bench_constant,
    "geometric": bench_geometric,
    "mult": bench_mult,
}


def write_csv(results: Iterable[BenchResult], target: TextIO) -> None:
    writer = csv.DictWriter(target, fieldnames=CSV_FIELDS)
    writer.writeheader()
    for result in results:
        writer.writerow(result.as_row())


def save_csv(results: Iterable[BenchResult], path: str) -> None:
    """Write results to `path`, or to stdout for '-'."""
    if path == "-":
        write_csv(results, sys.stdout)
        return
    with open(path, "w", newline="", encoding="utf-8") as f:
        write_csv(results, f)


def load_reference_tables(path: Optional[Path] = None) -> dict:
    """Load the published runtime tables."""
    path = Path(path) if path is not None else REFERENCE_TABLES_PATH
    if not path.exists():
        raise FileNotFoundError(f"Reference tables not found: {path}")
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)


def reference_seconds(tables: dict, suite: str, result: BenchResult) -> Optional[float]:
    row = tables.get(suite, {}).get(str(result.digits), {})
    if suite == "constant":
        row = row.get(result.param, {})
    return row.get(result.algorithm)


def print_bench_table(
    results: Sequence[BenchResult],
    suite: str,
    reference: Optional[dict] = None,
):
    """
    Print benchmark results as a table.

    Args:
        results: Rows from one of the bench_* functions
        suite: Suite name, used for the heading and the reference lookup
        reference: Published tables from load_reference_tables, or None
    """
    print("\n" + "=" * 80)
    print(f"BENCHMARK: {suite}")
    print("=" * 80)

    header = f"{'algorithm':14} | {'param':6} | {'digits':>6} | {'seconds':>10} | {'lookahead':>9}"
    if reference is not None:
        header += f" | {'published':>9}"
    print(f"\n{header}")
    print("-" * 80)
    for result in results:
        line = (
            f"{result.algorithm:14} | {result.param:6} | {result.digits:>6} | "
            f"{result.seconds:>10.4f} | {result.max_lookahead:>9}"
        )
        if reference is not None:
            published = reference_seconds(reference, suite, result)
            line += f" | {'-' if published is None else published:>9}"
        print(line)

    trials = results[0].trials if results else 0
    print(f"\n✓ All values checked against the oracle (median of {trials} trials)")
    print("=" * 80)
