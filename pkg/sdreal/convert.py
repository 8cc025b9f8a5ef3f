"""
Translations between signed-digit streams and modulated Cauchy reals.
"""
from fractions import Fraction
from typing import Optional, Tuple

from .cauchy import CauchyReal, IDENTITY_MODULUS, cauchy_of_rational, scale2_c
from .digits import FORCE_LOCK, DigitList, DigitStream, ReadCounter, SignedDigit, prefix

QUARTER = Fraction(1, 4)


def stream_to_cauchy(u: DigitStream) -> CauchyReal:
    """
    seq(n) = sum of the first n+1 digits, modulus the identity.

    Partial sums are extended incrementally; asking for an earlier index
    re-sums the (already memoized) prefix.
    """
    state = {"length": 0, "numerator": 0, "cursor": u}

    def seq(n: int) -> Fraction:
        wanted = n + 1
        with FORCE_LOCK:
            if wanted < state["length"]:
                numerator = 0
                for d in prefix(u, wanted):
                    numerator = 2 * numerator + d
                return Fraction(numerator, 1 << wanted)
            numerator, cursor = state["numerator"], state["cursor"]
            for _ in range(wanted - state["length"]):
                d, cursor = cursor.destruct()
                numerator = 2 * numerator + d
            state.update(length=wanted, numerator=numerator, cursor=cursor)
            return Fraction(numerator, 1 << wanted)

    return CauchyReal(seq=seq, mod=IDENTITY_MODULUS)


def stream_to_cauchy_natrec(u: DigitStream) -> CauchyReal:
    """The literal recursion: as(0) = d1/2, as(n+1) = as(n) + d(n+2)/2**(n+2)."""
    def seq(n: int) -> Fraction:
        digits = prefix(u, n + 1)
        value = Fraction(digits[0], 2)
        for i in range(1, n + 1):
            value += Fraction(digits[i], 1 << (i + 1))
        return value

    return CauchyReal(seq=seq, mod=IDENTITY_MODULUS)


def extract_digit(x: CauchyReal) -> Tuple[SignedDigit, CauchyReal]:
    """
    Split x = (y + d) / 2 with |y| <= 1 by comparing seq(mod(3)) with -1/4 and 1/4.
    """
    a = x.seq(x.mod(3))
    if a <= -QUARTER:
        d = SignedDigit.MINUS
    elif a <= QUARTER:
        d = SignedDigit.ZERO
    else:
        d = SignedDigit.PLUS
    return d, scale2_c(x, d)


def cauchy_to_stream(x: CauchyReal, counter: Optional[ReadCounter] = None) -> DigitStream:
    counter = counter if counter is not None else ReadCounter()

    def thunk() -> Tuple[int, DigitStream]:
        d, y = extract_digit(x)
        return d, cauchy_to_stream(y, counter)

    return DigitStream(thunk, counter)


def stream_of_rational(q) -> DigitStream:
    """The canonical stream of a rational in [-1, 1]; remembers q for debug checks."""
    q = Fraction(q)
    stream = cauchy_to_stream(cauchy_of_rational(q))
    stream.known = q
    return stream


def conv_seq(v: DigitStream, n: int) -> DigitList:
    """The first n digits of v; their sums converge to value(v) with modulus identity."""
    return prefix(v, n)
