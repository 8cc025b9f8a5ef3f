"""
The expression language of `sdreal eval`.

    expr := rat
          | "sqrt(" expr ")"
          | "avg(" expr "," expr ")"
          | "mul" ["_" variant] "(" expr "," expr ")"     variant: cauchy | direct | indirect
          | "div(" expr "," expr ")"
          | "limit(" sequence "," modulus ["," variant] ")"
    rat  := ["-"] int "/" int | ["-"] int

Whitespace is insignificant. Literals must lie in [-1, 1]. Division
preconditions are checked before anything is computed, using rational interval
bounds of every subexpression.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, FrozenSet, Tuple, Union

from pyparsing import (
    Forward,
    Keyword,
    Literal as Token,
    MatchFirst,
    Optional as Maybe,
    ParseBaseException,
    Regex,
    Suppress,
    Word,
    nums,
)

from .applications import MultVariant, multiply, sqrt_stream
from .cauchy import IDENTITY_MODULUS, Modulus, const_modulus, power_modulus
from .convert import stream_of_rational
from .digits import DEFAULT_RECURSION_LIMIT, DEFAULT_STACK_MB, DigitStream, approx, prefix, render_digits, run_deep
from .errors import ExpressionSyntaxError, PreconditionError, RangeError
from .limits import LimitVariant, limit
from .oracle import sqrt_rational
from .stream_ops import average, divide

logger = logging.getLogger(__name__)

QUARTER = Fraction(1, 4)
SQRT_BOUND_BITS = 64


@dataclass(frozen=True)
class Literal:
    numerator: int
    denominator: int
    position: int = 0

    @property
    def value(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def render(self) -> str:
        if self.denominator == 1:
            return str(self.numerator)
        return f"{self.numerator}/{self.denominator}"


@dataclass(frozen=True)
class Sqrt:
    argument: "Expr"
    position: int = 0

    def render(self) -> str:
        return f"sqrt({self.argument.render()})"


@dataclass(frozen=True)
class Average:
    left: "Expr"
    right: "Expr"
    position: int = 0

    def render(self) -> str:
        return f"avg({self.left.render()}, {self.right.render()})"


@dataclass(frozen=True)
class Multiply:
    left: "Expr"
    right: "Expr"
    variant: MultVariant = MultVariant.CAUCHY
    position: int = 0

    def render(self) -> str:
        return f"mul_{self.variant.value}({self.left.render()}, {self.right.render()})"


@dataclass(frozen=True)
class Divide:
    left: "Expr"
    right: "Expr"
    position: int = 0

    def render(self) -> str:
        return f"div({self.left.render()}, {self.right.render()})"


@dataclass(frozen=True)
class Limit:
    sequence: str
    modulus: str
    variant: LimitVariant = LimitVariant.DIRECT
    position: int = 0

    def render(self) -> str:
        return f"limit({self.sequence}, {self.modulus}, {self.variant.value})"


Expr = Union[Literal, Sqrt, Average, Multiply, Divide, Limit]


@dataclass(frozen=True)
class BuiltinSequence:
    """A rational sequence F with its limit and the moduli it converges with."""
    term: Callable[[int], Fraction]
    limit: Fraction
    moduli: FrozenSet[str]


_ALL_MODULI = frozenset({"id", "zero", "square", "cube"})
_GROWING_MODULI = frozenset({"id", "square", "cube"})

SEQUENCES: Dict[str, BuiltinSequence] = {
    "zero": BuiltinSequence(lambda n: Fraction(0), Fraction(0), _ALL_MODULI),
    # |F n - 1/3| = 2**-(n+2)
    "third": BuiltinSequence(lambda n: Fraction(1, 3) - Fraction(1, 1 << (n + 2)), Fraction(1, 3), _GROWING_MODULI),
    "geometric": BuiltinSequence(lambda n: Fraction(1, 1 << (n + 1)), Fraction(0), _GROWING_MODULI),
}

MODULI: Dict[str, Modulus] = {
    "id": IDENTITY_MODULUS,
    "zero": const_modulus(0),
    "square": power_modulus(2),
    "cube": power_modulus(3),
}


def make_grammar():
    """Build the pyparsing grammar; parse actions produce Expr nodes."""
    lparen = Suppress("(")
    rparen = Suppress(")")
    comma = Suppress(",")
    integer = Word(nums)

    expr = Forward()

    rat = Maybe(Token("-"))("sign") + integer("numerator") + Maybe(Suppress("/") + integer("denominator"))

    def make_literal(s, loc, toks):
        sign = -1 if toks.get("sign") else 1
        denominator = int(toks["denominator"]) if "denominator" in toks else 1
        return Literal(sign * int(toks["numerator"]), denominator, loc)

    rat.setParseAction(make_literal)

    sqrt = Keyword("sqrt") + lparen + expr + rparen
    sqrt.setParseAction(lambda s, loc, toks: Sqrt(toks[1], loc))

    avg = Keyword("avg") + lparen + expr + comma + expr + rparen
    avg.setParseAction(lambda s, loc, toks: Average(toks[1], toks[2], loc))

    mul_name = Regex(r"mul(_(cauchy|direct|indirect))?(?![A-Za-z0-9_])")
    mul = mul_name + lparen + expr + comma + expr + rparen

    def make_multiply(s, loc, toks):
        variant = toks[0].partition("_")[2] or MultVariant.CAUCHY.value
        return Multiply(toks[1], toks[2], MultVariant(variant), loc)

    mul.setParseAction(make_multiply)

    div = Keyword("div") + lparen + expr + comma + expr + rparen
    div.setParseAction(lambda s, loc, toks: Divide(toks[1], toks[2], loc))

    sequence_name = MatchFirst([Keyword(name) for name in SEQUENCES])
    modulus_name = MatchFirst([Keyword(name) for name in MODULI])
    limit_variant = MatchFirst([Keyword(v.value) for v in LimitVariant])
    limit_call = (
        Keyword("limit") + lparen + sequence_name + comma + modulus_name
        + Maybe(comma + limit_variant) + rparen
    )

    def make_limit(s, loc, toks):
        variant = LimitVariant(toks[3]) if len(toks) > 3 else LimitVariant.DIRECT
        return Limit(toks[1], toks[2], variant, loc)

    limit_call.setParseAction(make_limit)

    expr <<= sqrt | avg | mul | div | limit_call | rat
    return expr


_GRAMMAR = make_grammar()


def _check_literals(node: Expr) -> None:
    if isinstance(node, Literal):
        if node.denominator == 0:
            raise RangeError(f"Zero denominator in literal '{node.render()}'", node.position)
        if abs(node.value) > 1:
            raise RangeError(f"Literal {node.render()} lies outside [-1, 1]", node.position)
        return
    if isinstance(node, Limit):
        if node.modulus not in SEQUENCES[node.sequence].moduli:
            raise PreconditionError(
                f"Sequence '{node.sequence}' does not converge with modulus '{node.modulus}'",
                node.render(),
            )
        return
    for child in _children(node):
        _check_literals(child)


def _children(node: Expr) -> Tuple[Expr, ...]:
    if isinstance(node, Sqrt):
        return (node.argument,)
    if isinstance(node, (Average, Multiply, Divide)):
        return (node.left, node.right)
    return ()


def parse_expr(text: str) -> Expr:
    """
    Parse an expression.

    Raises:
        ExpressionSyntaxError: the text does not match the grammar
        RangeError: a literal lies outside [-1, 1] or has a zero denominator
        PreconditionError: a built-in limit is paired with a modulus it does not converge with
    """
    try:
        node = _GRAMMAR.parseString(text, parseAll=True)[0]
    except ParseBaseException as exc:
        raise ExpressionSyntaxError(f"Invalid expression: {exc.msg}", exc.loc, text) from exc
    _check_literals(node)
    return node


@dataclass(frozen=True)
class Bounds:
    """A rational interval known to contain the value of an expression."""
    lo: Fraction
    hi: Fraction

    @property
    def magnitude(self) -> Fraction:
        return max(abs(self.lo), abs(self.hi))


def _sqrt_upper(q: Fraction) -> Fraction:
    root = sqrt_rational(q, SQRT_BOUND_BITS)
    if root * root == q:
        return root
    return root + Fraction(1, 1 << SQRT_BOUND_BITS)


def bounds(node: Expr) -> Bounds:
    """
    Interval bounds of an expression, checking division preconditions on the way.

    Raises:
        PreconditionError: a division could not be shown to satisfy
            |x| <= y and y >= 1/4
    """
    if isinstance(node, Literal):
        return Bounds(node.value, node.value)
    if isinstance(node, Limit):
        value = SEQUENCES[node.sequence].limit
        return Bounds(value, value)
    if isinstance(node, Sqrt):
        inner = bounds(node.argument)
        lo, hi = max(inner.lo, Fraction(0)), max(inner.hi, Fraction(0))
        return Bounds(sqrt_rational(lo, SQRT_BOUND_BITS), _sqrt_upper(hi))
    left, right = bounds(node.left), bounds(node.right)
    if isinstance(node, Average):
        return Bounds((left.lo + right.lo) / 2, (left.hi + right.hi) / 2)
    if isinstance(node, Multiply):
        corners = [a * b for a in (left.lo, left.hi) for b in (right.lo, right.hi)]
        return Bounds(min(corners), max(corners))
    if isinstance(node, Divide):
        if right.lo < QUARTER:
            raise PreconditionError(
                f"Division needs a divisor >= 1/4, divisor may be as small as {right.lo}",
                node.render(),
            )
        if left.magnitude > right.lo:
            raise PreconditionError(
                f"Division needs |dividend| <= divisor, got |dividend| up to {left.magnitude} "
                f"and divisor down to {right.lo}",
                node.render(),
            )
        quotients = [a / b for a in (left.lo, left.hi) for b in (right.lo, right.hi)]
        return Bounds(min(quotients), max(quotients))
    raise TypeError(f"Not an expression node: {node!r}")


def evaluate(node: Expr) -> DigitStream:
    """The stream an expression denotes. Preconditions are not checked here; see bounds()."""
    if isinstance(node, Literal):
        return stream_of_rational(node.value)
    if isinstance(node, Limit):
        sequence = SEQUENCES[node.sequence]
        return limit(MODULI[node.modulus], lambda n: stream_of_rational(sequence.term(n)), node.variant)
    if isinstance(node, Sqrt):
        return sqrt_stream(evaluate(node.argument))
    left, right = evaluate(node.left), evaluate(node.right)
    if isinstance(node, Average):
        return average(left, right)
    if isinstance(node, Multiply):
        return multiply(left, right, node.variant)
    if isinstance(node, Divide):
        return divide(left, right)
    raise TypeError(f"Not an expression node: {node!r}")


def _digits_of(node: Expr, n: int) -> Tuple[str, Fraction]:
    stream = evaluate(node)
    digits = prefix(stream, n)
    return render_digits(digits), approx(stream, n)


def eval_digits(
    node: Expr,
    n: int,
    recursion_limit: int = DEFAULT_RECURSION_LIMIT,
    stack_mb: int = DEFAULT_STACK_MB,
) -> Tuple[str, Fraction]:
    """
    The first n digits of an expression and their rational value.

    Returns:
        Tuple of (digits over '+0-': str, approximation within 2**-n: Fraction)
    """
    if n < 0:
        raise ValueError(f"Digit count must be non-negative, got {n}")
    bounds(node)
    logger.debug("Evaluating %s to %d digits", node.render(), n)
    return run_deep(_digits_of, node, n, recursion_limit=recursion_limit, stack_mb=stack_mb)
