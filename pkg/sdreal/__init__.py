"""
Exact real arithmetic on [-1, 1] with signed-digit streams and modulated
Cauchy reals: conversions, two limit operators, square root and
multiplication, plus an expression evaluator and benchmark suites.
"""
from .applications import MultVariant, heron, multiply, mult_via_cauchy, mult_via_limit, poslog, sqrt_stream
from .cauchy import CauchyReal, add_c, approx_split_rat, complete, div_c, mul_c, scale2_c
from .convert import cauchy_to_stream, stream_of_rational, stream_to_cauchy
from .digits import DigitStream, SignedDigit, approx, const_stream, cons_digit, prefix, run_deep
from .errors import ExpressionSyntaxError, InvariantViolation, PreconditionError, RangeError, SdRealError
from .limits import LimitVariant, direct_limit, indirect_limit, limit
from .stream_ops import average, divide, double, quarter_shift, shift_one, triple_cases

__all__ = [
    "CauchyReal",
    "DigitStream",
    "ExpressionSyntaxError",
    "InvariantViolation",
    "LimitVariant",
    "MultVariant",
    "PreconditionError",
    "RangeError",
    "SdRealError",
    "SignedDigit",
    "add_c",
    "approx",
    "approx_split_rat",
    "average",
    "cauchy_to_stream",
    "complete",
    "cons_digit",
    "const_stream",
    "direct_limit",
    "div_c",
    "divide",
    "double",
    "heron",
    "indirect_limit",
    "limit",
    "mul_c",
    "mult_via_cauchy",
    "mult_via_limit",
    "multiply",
    "poslog",
    "prefix",
    "quarter_shift",
    "run_deep",
    "scale2_c",
    "shift_one",
    "sqrt_stream",
    "stream_of_rational",
    "stream_to_cauchy",
    "triple_cases",
]
