"""
Stream transformers: shifting by one, doubling, quarter shifts, average,
division, and the three-digit R/M/L classification used by the direct limit.

Each transformer returns a lazy stream; nothing is read from the inputs until
a digit of the result is asked for. Preconditions are semantic (they talk
about the real a stream denotes) and cannot be checked in general; when debug
mode is on (SDREAL_DEBUG) and the inputs were built from known rationals they
are cross-checked and violations are logged and counted.
"""
import logging
from collections import Counter
from enum import Enum
from fractions import Fraction
from typing import Callable, Dict, Iterator, Optional, Tuple

from .cauchy import div_c
from .convert import cauchy_to_stream, stream_to_cauchy
from .digits import (
    DigitStream,
    ReadCounter,
    as_digit,
    cons_digit,
    const_stream,
    follow,
    prefix,
)
from .settings import debug_enabled

logger = logging.getLogger(__name__)

_violations: Counter = Counter()


def check_known(operation: str, predicate: Callable[..., bool], *streams: DigitStream) -> None:
    """Debug cross-check of a precondition on the rationals behind the inputs."""
    values = [stream.known for stream in streams]
    if any(value is None for value in values) or not debug_enabled():
        return
    if not predicate(*values):
        _violations[operation] += 1
        logger.warning(
            "Precondition of %s violated for inputs %s",
            operation,
            ", ".join(str(value) for value in values),
        )


def precondition_violations() -> Dict[str, int]:
    return dict(_violations)


def reset_precondition_violations() -> None:
    _violations.clear()


def _sign(direction: int) -> int:
    if direction not in (1, -1):
        raise ValueError(f"Direction must be +1 or -1, got {direction!r}")
    return direction


def _shift_step(u: DigitStream, sign: int, counter: ReadCounter) -> Tuple[int, DigitStream]:
    d, v = u.destruct()
    if d == -sign:
        return sign, follow(v, counter)
    if d == 0:
        return sign, shift_one(v, sign, counter)
    return sign, const_stream(sign, counter)


def shift_one(u: DigitStream, direction: int, counter: Optional[ReadCounter] = None) -> DigitStream:
    """
    value(u) + 1 for direction +1 (needs value(u) <= 0), value(u) - 1 for
    direction -1 (needs value(u) >= 0).

    Rules for +1: f(-v) = +v, f(0v) = + f(v), f(+v) = +++... ;
    the -1 rules are the mirror image.
    """
    sign = _sign(direction)
    if u.known is not None:
        check_known("shift_one", lambda x: sign * x <= 0, u)
    counter = counter if counter is not None else ReadCounter()
    return DigitStream(lambda: _shift_step(u, sign, counter), counter)


def double(u: DigitStream) -> DigitStream:
    """2 * value(u), assuming |value(u)| <= 1/2. D(-u) = g(u), D(0u) = u, D(+u) = f(u)."""
    if u.known is not None:
        check_known("double", lambda x: abs(x) <= Fraction(1, 2), u)
    counter = ReadCounter()

    def thunk() -> Tuple[int, DigitStream]:
        d, v = u.destruct()
        if d == 0:
            e, w = v.destruct()
            return e, follow(w, counter)
        return _shift_step(v, d, counter)

    return DigitStream(thunk, counter)


# (direction, head) -> the two digits written in front of the tail
_QUARTER_RULES = {
    (1, -1): (0, 0),
    (1, 0): (0, 1),
    (1, 1): (1, 0),
    (-1, -1): (-1, 0),
    (-1, 0): (0, -1),
    (-1, 1): (0, 0),
}


def quarter_shift(u: DigitStream, direction: int) -> DigitStream:
    """value(u)/2 + 1/4 (direction +1) or value(u)/2 - 1/4 (direction -1)."""
    sign = _sign(direction)
    counter = ReadCounter()

    def thunk() -> Tuple[int, DigitStream]:
        d, v = u.destruct()
        first, second = _QUARTER_RULES[(sign, d)]
        return first, cons_digit(second, follow(v, counter))

    return DigitStream(thunk, counter)


def average_digit(carry: int, d: int, e: int) -> Tuple[int, int]:
    """One carry step: (emitted digit, new carry) for carry in -2..2."""
    total = 2 * carry + d + e
    if total >= 2:
        digit = 1
    elif total <= -2:
        digit = -1
    else:
        digit = 0
    return digit, total - 4 * digit


def _average_step(carry: int, u: DigitStream, v: DigitStream, counter: ReadCounter) -> Tuple[int, DigitStream]:
    # (carry + value(u) + value(v)) / 4
    d, u_rest = u.destruct()
    e, v_rest = v.destruct()
    digit, next_carry = average_digit(carry, d, e)
    return digit, _average_from(next_carry, u_rest, v_rest, counter)


def _average_from(carry: int, u: DigitStream, v: DigitStream, counter: ReadCounter) -> DigitStream:
    return DigitStream(lambda: _average_step(carry, u, v, counter), counter)


def average(u: DigitStream, v: DigitStream) -> DigitStream:
    """(value(u) + value(v)) / 2 by carry corecursion; digit n reads n+1 digits of each input."""
    counter = ReadCounter()

    def thunk() -> Tuple[int, DigitStream]:
        d, u_rest = u.destruct()
        e, v_rest = v.destruct()
        return _average_step(d + e, u_rest, v_rest, counter)

    return DigitStream(thunk, counter)


def average_carries(u: DigitStream, v: DigitStream, n: int) -> Iterator[int]:
    """The carries `average` goes through while emitting n digits: n + 1 values, the initial one first."""
    (d, *u_rest), (e, *v_rest) = prefix(u, n + 1), prefix(v, n + 1)
    carry = d + e
    yield carry
    for d, e in zip(u_rest, v_rest):
        _, carry = average_digit(carry, d, e)
        yield carry


def divide(u: DigitStream, v: DigitStream) -> DigitStream:
    """value(u) / value(v), assuming |value(u)| <= value(v) and value(v) >= 1/4."""
    if u.known is not None and v.known is not None:
        check_known("divide", lambda x, y: y >= Fraction(1, 4) and abs(x) <= y, u, v)
    return cauchy_to_stream(div_c(stream_to_cauchy(u), stream_to_cauchy(v)))


class TripleCase(Enum):
    R = "R"  # value in [1/8, 1]
    M = "M"  # value in [-1/4, 1/4]
    L = "L"  # value in [-1, -1/8]


_R_PAIRS = {(1, 1), (1, 0)}
_R_TRIPLES = {(1, -1, 1), (1, -1, 0), (0, 1, 1), (0, 1, 0)}


def classify_prefix(d1: int, d2: int, d3: int) -> TripleCase:
    digits = (as_digit(d1), as_digit(d2), as_digit(d3))
    mirrored = tuple(-d for d in digits)
    if digits[:2] in _R_PAIRS or digits in _R_TRIPLES:
        return TripleCase.R
    if mirrored[:2] in _R_PAIRS or mirrored in _R_TRIPLES:
        return TripleCase.L
    return TripleCase.M


def triple_cases(u: DigitStream) -> TripleCase:
    """Classify value(u) into R, M or L from exactly three digits."""
    return classify_prefix(*prefix(u, 3))


__all__ = [
    "TripleCase",
    "average",
    "average_carries",
    "average_digit",
    "check_known",
    "classify_prefix",
    "divide",
    "double",
    "precondition_violations",
    "quarter_shift",
    "reset_precondition_violations",
    "shift_one",
    "triple_cases",
]
