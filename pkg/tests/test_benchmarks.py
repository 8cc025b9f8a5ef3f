import csv
import io
from fractions import Fraction

import pytest

from sdreal.benchmarks import (
    CSV_FIELDS,
    BenchResult,
    bench_constant,
    bench_geometric,
    bench_mult,
    check_oracle,
    geometric_sequence,
    load_reference_tables,
    measure,
    print_bench_table,
    random_stream,
    reference_seconds,
    save_csv,
    write_csv,
)
from sdreal.convert import stream_of_rational
from sdreal.digits import ReadProbe, approx, const_stream, prefix
from sdreal.errors import InvariantViolation


def lookaheads(results):
    return {(r.algorithm, r.param): r.max_lookahead for r in results}


def test_random_stream_is_deterministic():
    assert prefix(random_stream(5), 40) == prefix(random_stream(5), 40)
    assert prefix(random_stream(5), 40) != prefix(random_stream(6), 40)
    assert set(prefix(random_stream(5), 200)) == {-1, 0, 1}


def test_random_stream_builds_fresh_cells():
    u = random_stream(1)
    prefix(u, 10)
    assert random_stream(1).reads == 0


def test_bench_result_row():
    result = BenchResult("direct", "p", 10, 0.0123456789, 12, 3, Fraction(1, 2))
    assert result.as_row() == {
        "algorithm": "direct",
        "param": "p",
        "digits": 10,
        "seconds": "0.012346",
        "max_lookahead": 12,
        "trials": 3,
    }


def test_write_csv_header():
    target = io.StringIO()
    write_csv([BenchResult("cauchy", "5", 5, 0.5, 7, 1)], target)
    rows = list(csv.reader(io.StringIO(target.getvalue())))
    assert rows[0] == CSV_FIELDS
    assert rows[1] == ["cauchy", "5", "5", "0.500000", "7", "1"]


def test_save_csv(tmp_path):
    path = tmp_path / "bench.csv"
    save_csv([BenchResult("direct", "p", 4, 0.1, 6, 1)], str(path))
    with open(path, newline="", encoding="utf-8") as f:
        rows = list(csv.DictReader(f))
    assert rows == [{"algorithm": "direct", "param": "p", "digits": "4", "seconds": "0.100000", "max_lookahead": "6", "trials": "1"}]


def test_measure_rejects_zero_trials():
    with pytest.raises(ValueError):
        measure(lambda: (const_stream(0), ReadProbe()), 4, 0)


def test_measure_reports_value_and_lookahead():
    def build():
        probe = ReadProbe()
        return probe.watch(const_stream(1)), probe

    seconds, value, lookahead = measure(build, 6, trials=2)
    assert seconds >= 0
    assert value == Fraction(63, 64)
    assert lookahead == 6


def test_check_oracle():
    check_oracle("ok", Fraction(1, 2), Fraction(1, 2) + Fraction(1, 64), Fraction(1, 64))
    with pytest.raises(InvariantViolation) as excinfo:
        check_oracle("mult cauchy", Fraction(1, 2), Fraction(0), Fraction(1, 64))
    assert "mult cauchy" in str(excinfo.value)


def test_bench_constant_rows_and_lookahead():
    results = bench_constant(8, ("p", "p^2"), trials=1)
    assert [(r.algorithm, r.param) for r in results] == [
        ("indirect", "p"), ("direct", "p"), ("indirect", "p^2"), ("direct", "p^2"),
    ]
    assert lookaheads(results) == {
        ("indirect", "p"): 13,
        ("direct", "p"): 10,
        ("indirect", "p^2"): 145,
        ("direct", "p^2"): 10,
    }
    assert all(r.approximation == 0 for r in results)


def test_bench_constant_rejects_unknown_modulus():
    with pytest.raises(ValueError):
        bench_constant(4, ("p^4",), trials=1)


def test_geometric_sequence_powers():
    x = const_stream(0)
    sequence = geometric_sequence(x)
    assert sequence(0) is x
    assert sequence(2) is sequence(2)


def test_geometric_sequence_values():
    sequence = geometric_sequence(stream_of_rational(Fraction(1, 2)))
    assert abs(approx(sequence(2), 16) - Fraction(1, 8)) <= Fraction(1, 1 << 16)


def test_bench_geometric():
    results = bench_geometric(4, trials=1, seed=7)
    assert [r.algorithm for r in results] == ["indirect", "direct"]
    assert all(r.param == "4" and abs(r.approximation) <= Fraction(1, 16) for r in results)
    # us(0) shares its root with the random stream, so reads go past the first cell
    assert all(r.max_lookahead >= 4 for r in results)


def test_bench_mult_agreement():
    results = bench_mult(6, trials=1, seed=11)
    assert [r.algorithm for r in results] == ["cauchy", "lim-direct", "lim-indirect"]
    expected = approx(random_stream(11), 14) * approx(random_stream(12), 14)
    for result in results:
        assert abs(result.approximation - expected) <= Fraction(1, 1 << 6) + Fraction(2, 1 << 14)


def test_reference_tables():
    tables = load_reference_tables()
    assert reference_seconds(tables, "constant", BenchResult("indirect", "p^3", 50, 0, 0, 1)) == 36.03
    assert reference_seconds(tables, "geometric", BenchResult("indirect", "10", 10, 0, 0, 1)) == 3.3
    assert reference_seconds(tables, "geometric", BenchResult("direct", "30", 30, 0, 0, 1)) is None
    assert reference_seconds(tables, "mult", BenchResult("cauchy", "7", 7, 0, 0, 1)) is None


def test_reference_tables_missing(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_reference_tables(tmp_path / "absent.json")


def test_print_bench_table(capsys):
    results = [BenchResult("indirect", "p^3", 50, 1.5, 54 ** 3 + 1, 3)]
    print_bench_table(results, "constant", load_reference_tables())
    out = capsys.readouterr().out
    assert "BENCHMARK: constant" in out
    assert "published" in out
    assert "36.03" in out
    assert "median of 3 trials" in out


@pytest.mark.bench
def test_constant_suite_trends():
    results = {(r.algorithm, r.param): r for r in bench_constant(50, trials=1)}
    assert results[("indirect", "p^3")].seconds >= 10 * results[("indirect", "p")].seconds
    assert results[("indirect", "p^3")].max_lookahead == 54 ** 3 + 1
    direct = [results[("direct", name)] for name in ("p", "p^2", "p^3")]
    assert {r.max_lookahead for r in direct} == {52}
    assert max(r.seconds for r in direct) <= 2 * min(r.seconds for r in direct) + 0.05


@pytest.mark.bench
def test_mult_suite_agreement_at_ten_digits():
    results = bench_mult(10, trials=1)
    values = [r.approximation for r in results]
    assert max(values) - min(values) <= Fraction(2, 1 << 10)
    assert all(r.seconds > 0 for r in results)
    # measured: the direct limit multiplication is the slowest of the three here
    timings = {r.algorithm: r.seconds for r in results}
    assert timings["lim-indirect"] < timings["lim-direct"]
