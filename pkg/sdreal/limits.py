"""
Limits of convergent sequences of signed-digit streams.

Both operators take a modulus M and a sequence F of streams such that
|value(F n) - x| <= 2**-p whenever n >= M(p), and return a stream for x.

direct_limit works on digits only: it classifies F(M(4)) by three digits,
emits one digit and continues with a rescaled sequence. Its lookahead does
not depend on M. indirect_limit goes through the Cauchy representation and
reads about M(n+4) digits for the n-th output digit.
"""
import logging
from enum import Enum
from typing import Callable, Dict

from .cauchy import CauchyReal, Modulus, complete, shift_modulus
from .convert import cauchy_to_stream, stream_to_cauchy
from .digits import DigitStream, ReadCounter
from .stream_ops import TripleCase, double, quarter_shift, triple_cases

logger = logging.getLogger(__name__)

StreamSequence = Callable[[int], DigitStream]


class LimitVariant(str, Enum):
    DIRECT = "direct"
    INDIRECT = "indirect"


_CASE_DIGIT = {TripleCase.R: 1, TripleCase.M: 0, TripleCase.L: -1}

_RESCALE: Dict[TripleCase, Callable[[DigitStream], DigitStream]] = {
    TripleCase.R: lambda s: double(double(quarter_shift(s, -1))),
    TripleCase.M: double,
    TripleCase.L: lambda s: double(double(quarter_shift(s, 1))),
}


def memoize_sequence(make: StreamSequence) -> StreamSequence:
    """Same index, same stream object, so memoized digits are shared."""
    cache: Dict[int, DigitStream] = {}

    def get(n: int) -> DigitStream:
        stream = cache.get(n)
        if stream is None:
            stream = cache.setdefault(n, make(n))
        return stream

    return get


def direct_limit(modulus: Modulus, sequence: StreamSequence) -> DigitStream:
    return _direct_from(modulus, 0, memoize_sequence(sequence), ReadCounter())


def _direct_from(modulus: Modulus, shift: int, sequence: StreamSequence, counter: ReadCounter) -> DigitStream:
    # The modulus at this level is p -> M(p + shift).
    def thunk():
        base = modulus(4 + shift)
        case = triple_cases(sequence(base))
        logger.debug("direct limit level %d reads index %d: case %s", shift, base, case.value)
        rescale = _RESCALE[case]
        following = memoize_sequence(lambda n: rescale(sequence(base + n)))
        return _CASE_DIGIT[case], _direct_from(modulus, shift + 1, following, counter)

    return DigitStream(thunk, counter)


def indirect_cauchy(modulus: Modulus, sequence: StreamSequence) -> CauchyReal:
    """The Cauchy real the indirect limit converts back; its modulus is p -> max(M(p+2), p+2)."""
    return complete(lambda n: stream_to_cauchy(sequence(n)), shift_modulus(modulus, 1))


def indirect_limit(modulus: Modulus, sequence: StreamSequence) -> DigitStream:
    logger.debug("indirect limit through the Cauchy representation")
    return cauchy_to_stream(indirect_cauchy(modulus, sequence))


def limit(modulus: Modulus, sequence: StreamSequence, variant=LimitVariant.DIRECT) -> DigitStream:
    variant = LimitVariant(variant)
    if variant is LimitVariant.DIRECT:
        return direct_limit(modulus, sequence)
    return indirect_limit(modulus, sequence)
