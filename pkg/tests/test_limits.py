from fractions import Fraction

import pytest

from sdreal.cauchy import IDENTITY_MODULUS, const_modulus, converges, power_modulus
from sdreal.convert import stream_of_rational
from sdreal.digits import ReadProbe, approx, const_stream, prefix
from sdreal.limits import LimitVariant, direct_limit, indirect_cauchy, indirect_limit, limit, memoize_sequence

MODULI = {"p": IDENTITY_MODULUS, "p^2": power_modulus(2), "p^3": power_modulus(3)}


def third(n: int) -> Fraction:
    return Fraction(1, 3) - Fraction(1, 1 << (n + 2))


def zeros_probe(limit_op, modulus, digits):
    probe = ReadProbe()
    stream = limit_op(modulus, probe.sequence(lambda n: const_stream(0)))
    assert prefix(stream, digits) == [0] * digits
    return probe


def test_memoize_sequence_returns_same_stream():
    calls = []

    def make(n):
        calls.append(n)
        return const_stream(0)

    sequence = memoize_sequence(make)
    assert sequence(3) is sequence(3)
    assert calls == [3]


@pytest.mark.parametrize("limit_op", [direct_limit, indirect_limit])
@pytest.mark.parametrize("modulus", [IDENTITY_MODULUS, const_modulus(0), power_modulus(2)])
def test_limit_of_zeros_is_zero(limit_op, modulus, deep):
    deep(zeros_probe, limit_op, modulus, 12)


def test_direct_lookahead_bound(deep):
    probe = deep(zeros_probe, direct_limit, IDENTITY_MODULUS, 100)
    assert probe.max_reads <= 3 * 100 + 3
    # each level reads three digits through one more doubling
    assert probe.max_reads == 102


def test_indirect_lookahead_bound(deep):
    probe = deep(zeros_probe, indirect_limit, IDENTITY_MODULUS, 100)
    assert probe.max_reads <= (100 + 4) + 4
    assert probe.max_reads == 105


def test_direct_lookahead_ignores_modulus(deep):
    reads = {name: deep(zeros_probe, direct_limit, modulus, 30).max_reads for name, modulus in MODULI.items()}
    assert set(reads.values()) == {32}


def test_indirect_lookahead_follows_modulus(deep):
    # digit k reads M(k + 5) + 1 digits of one input stream
    assert deep(zeros_probe, indirect_limit, power_modulus(2), 5).max_reads == 9 ** 2 + 1
    assert deep(zeros_probe, indirect_limit, power_modulus(3), 5).max_reads == 9 ** 3 + 1


@pytest.mark.parametrize("variant", list(LimitVariant))
@pytest.mark.parametrize("modulus", [IDENTITY_MODULUS, power_modulus(2)])
def test_limit_of_rational_sequence(variant, modulus, deep):
    stream = limit(modulus, lambda n: stream_of_rational(third(n)), variant)
    assert abs(deep(approx, stream, 12) - Fraction(1, 3)) <= Fraction(1, 1 << 12)


@pytest.mark.parametrize("variant", ["direct", "indirect"])
def test_limit_of_geometric_sequence(variant, deep):
    stream = limit(IDENTITY_MODULUS, lambda n: stream_of_rational(Fraction(-1, 1 << (n + 1))), variant)
    assert abs(deep(approx, stream, 10)) <= Fraction(1, 1 << 10)


def test_limit_of_negative_sequence(deep):
    stream = direct_limit(IDENTITY_MODULUS, lambda n: stream_of_rational(-third(n)))
    assert abs(deep(approx, stream, 12) + Fraction(1, 3)) <= Fraction(1, 1 << 12)


def test_indirect_cauchy_modulus():
    x = indirect_cauchy(IDENTITY_MODULUS, lambda n: const_stream(0))
    for p in range(1, 21):
        assert x.mod(p) == p + 2


def test_indirect_cauchy_converges():
    x = indirect_cauchy(IDENTITY_MODULUS, lambda n: stream_of_rational(third(n)))
    assert converges(lambda n: x.seq(n), Fraction(1, 3), lambda p: x.mod(p), upto=12, span=3)


def test_limit_rejects_unknown_variant():
    with pytest.raises(ValueError):
        limit(IDENTITY_MODULUS, lambda n: const_stream(0), "sideways")


@pytest.mark.parametrize("make", [
    lambda n: stream_of_rational(third(n)),
    lambda n: stream_of_rational(-third(n)),
    lambda n: stream_of_rational(Fraction(1, 1 << (n + 1))),
    lambda n: stream_of_rational(1 - Fraction(1, 1 << (n + 1))),
])
def test_direct_and_indirect_agree(make, deep):
    n = 12
    direct = deep(approx, direct_limit(IDENTITY_MODULUS, make), n)
    indirect = deep(approx, indirect_limit(IDENTITY_MODULUS, make), n)
    assert abs(direct - indirect) <= Fraction(2, 1 << n)


@pytest.mark.parametrize("variant", list(LimitVariant))
def test_limit_stays_in_range_at_the_edge(variant, deep):
    # every F n lies in [-1, 1] and tends to 1
    stream = limit(IDENTITY_MODULUS, lambda n: stream_of_rational(1 - Fraction(1, 1 << (n + 1))), variant)
    value = deep(approx, stream, 12)
    assert 1 - Fraction(1, 1 << 12) <= value <= 1
