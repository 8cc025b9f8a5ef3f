"""
Applications of the limit operators: Heron's square root iteration, the
square root of a stream, and multiplication through digit-sum limits.
"""
import logging
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Sequence

from .cauchy import IDENTITY_MODULUS, mul_c
from .convert import cauchy_to_stream, stream_to_cauchy
from .digits import (
    FORCE_LOCK,
    DigitStream,
    ReadCounter,
    const_stream,
    cons_digit,
    follow,
    prefix,
    sd_times,
)
from .errors import PreconditionError
from .limits import LimitVariant, StreamSequence, direct_limit, limit
from .stream_ops import average, check_known, divide

logger = logging.getLogger(__name__)


def poslog(p: int) -> int:
    """Least n with p <= 2**n."""
    if p < 1:
        raise PreconditionError(f"poslog is defined for positive integers, got {p}")
    n = 0
    while (1 << n) < p:
        n += 1
    return n


def heron_rational(x, n: int) -> Fraction:
    """H(x, 0) = 1, H(x, k+1) = (H(x, k) + x / H(x, k)) / 2, exactly."""
    x = Fraction(x)
    if x < 0:
        raise PreconditionError(f"Heron's iteration needs x >= 0, got {x}")
    h = Fraction(1)
    for _ in range(n):
        h = (h + x / h) / 2
    return h


def heron_sequence(u: DigitStream) -> StreamSequence:
    """
    n -> stream of H(value(u), n), for 1/16 <= value(u) <= 1.

    Iterates are built once and kept, so asking for H(x, n) after H(x, m)
    reuses every shared iterate and its computed digits.
    """
    if u.known is not None:
        check_known("heron", lambda x: Fraction(1, 16) <= x <= 1, u)
    iterates: List[DigitStream] = [const_stream(1)]

    def get(n: int) -> DigitStream:
        with FORCE_LOCK:
            while len(iterates) <= n:
                previous = iterates[-1]
                iterates.append(average(previous, divide(u, previous)))
            return iterates[n]

    return get


def heron(u: DigitStream, n: int) -> DigitStream:
    return heron_sequence(u)(n)


def heron_poslog_stream(u: DigitStream, p: int) -> DigitStream:
    """H(value(u), poslog(p)): within 2**-p of the square root when value(u) is in [1/4, 1]."""
    if u.known is not None:
        check_known("heron_poslog", lambda x: Fraction(1, 4) <= x <= 1, u)
    return heron(u, poslog(p))


def sqrt_stream(u: DigitStream, counter: Optional[ReadCounter] = None) -> DigitStream:
    """
    The square root of value(u) >= 0 (negative inputs give 0).

    Rules, first match wins:
        -u    -> 000...
        0-u   -> 000...
        00u   -> 0 sqrt(u)
        0+-u  -> 0 sqrt(+u)
        +--u  -> 0 sqrt(+u)
        u     -> direct limit of the Heron iterates, modulus identity
    """
    counter = counter if counter is not None else ReadCounter()

    def thunk():
        d1, rest1 = u.destruct()
        if d1 == -1:
            return 0, const_stream(0, counter)
        d2, rest2 = rest1.destruct()
        if d1 == 0 and d2 == -1:
            return 0, const_stream(0, counter)
        if d1 == 0 and d2 == 0:
            return 0, sqrt_stream(rest2, counter)
        d3, rest3 = rest2.destruct()
        if (d1, d2, d3) in ((0, 1, -1), (1, -1, -1)):
            return 0, sqrt_stream(cons_digit(1, rest3, ReadCounter()), counter)
        if u.known is not None:
            check_known("sqrt_limit", lambda x: x >= Fraction(1, 8), u)
        logger.debug("sqrt falls back to the Heron limit after digits %d%d%d", d1, d2, d3)
        d, rest = direct_limit(IDENTITY_MODULUS, heron_sequence(u)).destruct()
        return d, follow(rest, counter)

    return DigitStream(thunk, counter)


def mult_sum(u: DigitStream, digits: Sequence[int]) -> DigitStream:
    """value(u) * sum_digits(digits): average(d u, mult_sum(u, rest)), folded from the end."""
    result = const_stream(0)
    for d in reversed(list(digits)):
        result = average(sd_times(d, u), result)
    return result


def mult_via_limit(u: DigitStream, v: DigitStream, variant=LimitVariant.DIRECT) -> DigitStream:
    """value(u) * value(v) as the limit of u * Sum(first n digits of v), modulus identity."""
    return limit(IDENTITY_MODULUS, lambda n: mult_sum(u, prefix(v, n)), variant)


def mult_via_cauchy(u: DigitStream, v: DigitStream) -> DigitStream:
    """value(u) * value(v) through rational products of partial sums."""
    return cauchy_to_stream(mul_c(stream_to_cauchy(u), stream_to_cauchy(v)))


class MultVariant(str, Enum):
    CAUCHY = "cauchy"
    DIRECT = "direct"
    INDIRECT = "indirect"


def multiply(u: DigitStream, v: DigitStream, variant=MultVariant.CAUCHY) -> DigitStream:
    variant = MultVariant(variant)
    if variant is MultVariant.CAUCHY:
        return mult_via_cauchy(u, v)
    return mult_via_limit(u, v, LimitVariant(variant.value))
