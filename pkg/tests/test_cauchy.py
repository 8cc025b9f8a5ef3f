from fractions import Fraction

import pytest

from sdreal.cauchy import (
    DIV_FLOOR,
    IDENTITY_MODULUS,
    LEFT,
    RIGHT,
    CauchyReal,
    add_c,
    approx_split_rat,
    cauchy_of_rational,
    complete,
    const_modulus,
    converges,
    div_c,
    is_cauchy,
    is_monotone,
    mul_c,
    neg_c,
    pos_of,
    power_modulus,
    scale2_c,
    shift_modulus,
    sub_c,
)
from sdreal.convert import stream_of_rational, stream_to_cauchy
from sdreal.digits import const_stream
from sdreal.errors import PreconditionError, RangeError
from sdreal.oracle import random_rationals


def halving() -> CauchyReal:
    """seq(n) = 2**-(n+1), converging to 0 with the identity modulus."""
    return CauchyReal(seq=lambda n: Fraction(1, 1 << (n + 1)), mod=IDENTITY_MODULUS)


def test_cauchy_of_rational_range():
    assert cauchy_of_rational(Fraction(-1)).at_precision(10) == -1
    with pytest.raises(RangeError):
        cauchy_of_rational(Fraction(5, 4))


def test_moduli_helpers():
    assert IDENTITY_MODULUS(7) == 7
    assert const_modulus(3)(100) == 3
    assert power_modulus(3)(4) == 64
    assert shift_modulus(power_modulus(2), 1)(2) == 9
    assert pos_of(0) == 1 and pos_of(5) == 5


def test_is_monotone():
    assert is_monotone(IDENTITY_MODULUS)
    assert is_monotone(power_modulus(3), upto=30)
    assert not is_monotone(lambda p: 10 - p)


def test_approx_split_rat_decisions():
    zero = cauchy_of_rational(0)
    assert approx_split_rat(zero, Fraction(-1, 4), Fraction(1, 4)) is LEFT
    assert approx_split_rat(cauchy_of_rational(Fraction(1, 2)), 0, Fraction(1, 4)) is RIGHT
    assert approx_split_rat(cauchy_of_rational(-1), Fraction(-1, 2), Fraction(1, 2)) is LEFT


def test_approx_split_rat_on_streams(rational_grid):
    for q in rational_grid:
        x = stream_to_cauchy(stream_of_rational(q))
        a, b = Fraction(-1, 8), Fraction(1, 8)
        if approx_split_rat(x, a, b) is LEFT:
            assert q <= b
        else:
            assert q >= a


def test_approx_split_rat_needs_ordered_bounds():
    with pytest.raises(PreconditionError):
        approx_split_rat(cauchy_of_rational(0), Fraction(1, 2), Fraction(1, 2))


@pytest.mark.parametrize("modulus", [IDENTITY_MODULUS, const_modulus(0), power_modulus(2), power_modulus(3)])
def test_complete_modulus_bookkeeping(modulus):
    x = complete(lambda n: cauchy_of_rational(0), modulus)
    for p in range(1, 21):
        assert x.mod(p) == max(modulus(p + 1), p + 2)


def test_complete_takes_diagonal():
    xs = lambda n: CauchyReal(seq=lambda m: Fraction(n, 100) + Fraction(m, 10000), mod=IDENTITY_MODULUS)
    x = complete(xs, IDENTITY_MODULUS)
    # seq(n) = xs(n).seq(xs(n).mod(pos_of(n)))
    assert x.seq(0) == Fraction(1, 10000)
    assert x.seq(3) == Fraction(3, 100) + Fraction(3, 10000)


def test_add_neg_sub():
    x, y = cauchy_of_rational(Fraction(1, 2)), cauchy_of_rational(Fraction(-1, 4))
    assert add_c(x, y).seq(4) == Fraction(1, 4)
    assert sub_c(x, y).seq(4) == Fraction(3, 4)
    assert add_c(x, neg_c(x)).seq(9) == 0
    assert add_c(halving(), halving()).mod(3) == 4


def test_scale2_flattens_repeated_doubling():
    x = cauchy_of_rational(Fraction(3, 4))
    y = scale2_c(x, 1)
    z = scale2_c(y, 0)
    assert y.seq(0) == Fraction(1, 2)
    assert z.seq(0) == 1
    assert z.origin == (x, 2, 2)


def test_scale2_shifts_modulus():
    x = stream_to_cauchy(const_stream(0))
    y = scale2_c(scale2_c(scale2_c(x, 0), 0), 0)
    assert y.mod(5) == 8


def test_div_c_exact_on_rationals():
    q = div_c(cauchy_of_rational(Fraction(1, 8)), cauchy_of_rational(Fraction(1, 2)))
    assert q.seq(0) == Fraction(1, 4)
    assert q.mod(2) == 0


def test_div_c_clamps_small_divisors():
    q = div_c(cauchy_of_rational(Fraction(1, 16)), cauchy_of_rational(Fraction(1, 16)))
    assert q.seq(0) == Fraction(1, 16) / DIV_FLOOR


def test_div_c_on_streams(rng):
    for y in random_rationals(rng, 10, Fraction(1, 4), 1):
        x = random_rationals(rng, 1, -y, y)[0]
        q = div_c(stream_to_cauchy(stream_of_rational(x)), stream_to_cauchy(stream_of_rational(y)))
        for p in range(1, 16):
            assert abs(q.at_precision(p) - x / y) < Fraction(1, 1 << (p + 1))


def test_mul_c_on_streams(rng):
    for x, y in zip(random_rationals(rng, 10), random_rationals(rng, 10)):
        prod = mul_c(stream_to_cauchy(stream_of_rational(x)), stream_to_cauchy(stream_of_rational(y)))
        for p in range(1, 16):
            assert abs(prod.at_precision(p) - x * y) < Fraction(1, 1 << (p + 1))


def test_converges_and_is_cauchy():
    seq = halving().seq
    assert converges(seq, 0, IDENTITY_MODULUS)
    assert not converges(seq, 0, const_modulus(0))
    assert not converges(seq, Fraction(1, 2), IDENTITY_MODULUS)
    assert is_cauchy(seq, IDENTITY_MODULUS)
    assert not is_cauchy(lambda n: Fraction(n % 2), IDENTITY_MODULUS)


def test_shifted_sequence_keeps_limit():
    seq = halving().seq
    for k in range(5):
        assert converges(lambda n: seq(n + k), 0, IDENTITY_MODULUS)


def test_limits_are_unique_up_to_sampling():
    seq = lambda n: Fraction(1, 3) - Fraction(1, 1 << (n + 2))
    candidates = [Fraction(1, 3) + Fraction(k, 1 << 14) for k in range(-40, 41)]
    accepted = [c for c in candidates if converges(seq, c, IDENTITY_MODULUS, upto=12, span=4)]
    assert Fraction(1, 3) in accepted
    assert max(accepted) - min(accepted) <= Fraction(2, 1 << 12)


def test_limit_of_bounded_sequence_is_bounded():
    seq = lambda n: 1 - Fraction(1, 1 << (n + 1))
    assert all(abs(seq(n)) <= 1 for n in range(40))
    candidates = [1 + Fraction(k, 1 << 14) for k in range(-20, 21)]
    accepted = [c for c in candidates if converges(seq, c, IDENTITY_MODULUS, upto=12, span=4)]
    assert 1 in accepted
    assert all(abs(c) <= 1 + Fraction(1, 1 << 12) for c in accepted)
