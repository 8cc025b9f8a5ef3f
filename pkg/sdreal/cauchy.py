"""
Modulated Cauchy reals: a rational sequence together with a monotone modulus.

A CauchyReal (seq, mod) denotes x when |x - seq(n)| < 2**-(p+1) for every
n >= mod(p). The operations here do rational arithmetic on the sequence and
bookkeeping on the modulus; nothing is ever compared for real equality.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Tuple

from .errors import PreconditionError, RangeError

logger = logging.getLogger(__name__)

Modulus = Callable[[int], int]
RationalSequence = Callable[[int], Fraction]

# approx_split_rat answers
LEFT = True   # x <= b
RIGHT = False  # a <= x

DIV_SHIFT = 7
DIV_FLOOR = Fraction(1, 8)
MUL_SHIFT = 2


@dataclass(frozen=True)
class CauchyReal:
    seq: RationalSequence
    mod: Modulus
    # (base, k, c) when this real is 2**k * base - c, so repeated doubling
    # stays one closure deep instead of k.
    origin: Optional[Tuple["CauchyReal", int, int]] = field(default=None, compare=False, repr=False)

    def at_precision(self, p: int) -> Fraction:
        """seq(mod(p)): a rational within 2**-(p+1) of the real."""
        return self.seq(self.mod(p))


def identity_modulus(p: int) -> int:
    return p


IDENTITY_MODULUS: Modulus = identity_modulus


def const_modulus(c: int) -> Modulus:
    return lambda p: c


def power_modulus(k: int) -> Modulus:
    """p -> p**k."""
    return lambda p: p ** k


def shift_modulus(modulus: Modulus, k: int) -> Modulus:
    """p -> M(p + k)."""
    return lambda p: modulus(p + k)


def is_monotone(modulus: Modulus, upto: int = 64) -> bool:
    """Sampled check of p <= q => M(p) <= M(q) for 1 <= p <= upto."""
    values = [modulus(p) for p in range(1, upto + 1)]
    return all(a <= b for a, b in zip(values, values[1:]))


def pos_of(n: int) -> int:
    """Natural index to positive precision: 0 maps to 1."""
    return max(n, 1)


def cauchy_of_rational(q) -> CauchyReal:
    q = Fraction(q)
    if abs(q) > 1:
        raise RangeError(f"Rational {q} lies outside [-1, 1]")
    return CauchyReal(seq=lambda n: q, mod=const_modulus(0))


def approx_split_rat(x: CauchyReal, a, b) -> bool:
    """
    Decide x <= b (LEFT) or a <= x (RIGHT) for rationals a < b.

    Both may hold in the overlap; only the returned claim is guaranteed.
    """
    a, b = Fraction(a), Fraction(b)
    if a >= b:
        raise PreconditionError(f"approx_split_rat needs a < b, got a={a}, b={b}")
    gap = b - a
    p = 1
    while Fraction(1, 1 << p) >= gap:
        p += 1
    middle = (a + b) / 2
    return LEFT if x.seq(x.mod(p + 1)) <= middle else RIGHT


def complete(xs: Callable[[int], CauchyReal], modulus: Modulus) -> CauchyReal:
    """
    The limit of a Cauchy sequence of Cauchy reals with modulus M.

    seq(n) = xs(n).seq(xs(n).mod(pos_of(n))), mod(p) = max(M(p+1), p+2).
    """
    def seq(n: int) -> Fraction:
        x = xs(n)
        return x.seq(x.mod(pos_of(n)))

    def mod(p: int) -> int:
        return max(modulus(p + 1), p + 2)

    return CauchyReal(seq=seq, mod=mod)


def add_c(x: CauchyReal, y: CauchyReal) -> CauchyReal:
    return CauchyReal(
        seq=lambda n: x.seq(n) + y.seq(n),
        mod=lambda p: max(x.mod(p + 1), y.mod(p + 1)),
    )


def neg_c(x: CauchyReal) -> CauchyReal:
    return CauchyReal(seq=lambda n: -x.seq(n), mod=x.mod)


def sub_c(x: CauchyReal, y: CauchyReal) -> CauchyReal:
    return add_c(x, neg_c(y))


def scale2_c(x: CauchyReal, d: int) -> CauchyReal:
    """2x - d, with mod(p) -> mod(p+1)."""
    base, k, c = x.origin if x.origin is not None else (x, 0, 0)
    k, c = k + 1, 2 * c + d
    factor = 1 << k
    return CauchyReal(
        seq=lambda n: factor * base.seq(n) - c,
        mod=lambda p: base.mod(p + k),
        origin=(base, k, c),
    )


def div_c(x: CauchyReal, y: CauchyReal) -> CauchyReal:
    """
    x / y, assuming |x| <= y and y >= 1/4 (not checked).

    With y >= 1/4 and the divisor clamped at 1/8,
    |x/y - a/b| <= 4|x - a| + 32|a||y - b|; seven guard bits keep that below
    2**-(p+1).
    """
    def seq(n: int) -> Fraction:
        m = n + DIV_SHIFT
        return x.seq(m) / max(y.seq(m), DIV_FLOOR)

    return CauchyReal(
        seq=seq,
        mod=lambda p: max(x.mod(p + DIV_SHIFT), y.mod(p + DIV_SHIFT)),
    )


def mul_c(x: CauchyReal, y: CauchyReal) -> CauchyReal:
    """x * y on [-1, 1]: |xy - ab| <= |x - a| + |y - b| up to a guard bit."""
    def seq(n: int) -> Fraction:
        m = n + MUL_SHIFT
        return x.seq(m) * y.seq(m)

    return CauchyReal(
        seq=seq,
        mod=lambda p: max(x.mod(p + MUL_SHIFT), y.mod(p + MUL_SHIFT)),
    )


def converges(seq: RationalSequence, limit, modulus: Modulus, upto: int = 20, span: int = 8) -> bool:
    """
    Sampled Conv(seq, limit, M): |seq(n) - limit| <= 2**-p for n >= M(p),
    checked for p in 1..upto and n in M(p)..M(p)+span.
    """
    limit = Fraction(limit)
    for p in range(1, upto + 1):
        bound = Fraction(1, 1 << p)
        start = modulus(p)
        for n in range(start, start + span + 1):
            if abs(seq(n) - limit) > bound:
                logger.debug("Conv fails at p=%d n=%d", p, n)
                return False
    return True


def is_cauchy(seq: RationalSequence, modulus: Modulus, upto: int = 20, span: int = 8) -> bool:
    """Sampled Cauchy(seq, M): |seq(n) - seq(m)| <= 2**-p for n, m >= M(p)."""
    for p in range(1, upto + 1):
        bound = Fraction(1, 1 << p)
        start = modulus(p)
        window = [seq(n) for n in range(start, start + span + 1)]
        if max(window) - min(window) > bound:
            return False
    return True
