"""
Signed digits and lazy, memoized signed-digit streams.

A stream d1 d2 d3 ... over {-1, 0, +1} denotes the real sum(d_i / 2**i), which
always lies in [-1, 1]. Streams are chains of cells: each cell computes its
(head, tail) pair the first time it is destructed and caches it, so corecursive
definitions share suffixes instead of recomputing them. Every cell belongs to a
root whose ReadCounter counts how many distinct cells were forced; that count is
the "lookahead" reported by the limit operators and benchmarks.
"""
import sys
import threading
from enum import IntEnum
from fractions import Fraction
from typing import Callable, Iterable, Iterator, List, Optional, Tuple, TypeVar


S = TypeVar("S")
R = TypeVar("R")
DEFAULT_RECURSION_LIMIT = 200_000
DEFAULT_STACK_MB = 512

# One re-entrant lock for all forcing: a thunk may force other cells, and a cell
# must be computed at most once even when several threads race on it.
FORCE_LOCK = threading.RLock()


class SignedDigit(IntEnum):
    MINUS = -1
    ZERO = 0
    PLUS = 1

    @property
    def symbol(self) -> str:
        return _SYMBOLS[self]

    @classmethod
    def from_symbol(cls, char: str) -> "SignedDigit":
        try:
            return _FROM_SYMBOL[char]
        except KeyError:
            raise ValueError(f"Not a signed digit symbol: {char!r} (expected '+', '0' or '-')")


_SYMBOLS = {SignedDigit.PLUS: "+", SignedDigit.ZERO: "0", SignedDigit.MINUS: "-"}
_FROM_SYMBOL = {symbol: digit for digit, symbol in _SYMBOLS.items()}
_DIGIT_OF = {-1: SignedDigit.MINUS, 0: SignedDigit.ZERO, 1: SignedDigit.PLUS}

DigitList = List[SignedDigit]


def as_digit(value: int) -> SignedDigit:
    """Convert an integer in {-1, 0, 1} to a SignedDigit."""
    try:
        return _DIGIT_OF[value]
    except (KeyError, TypeError):
        raise ValueError(f"Signed digits are -1, 0 or 1, got {value!r}")


class ReadCounter:
    """Number of distinct cells forced below one stream root."""

    __slots__ = ("count",)

    def __init__(self):
        self.count = 0

    def __repr__(self) -> str:
        return f"ReadCounter({self.count})"


Cell = Tuple[SignedDigit, "DigitStream"]


class DigitStream:
    """
    An infinite signed-digit stream cell.

    Args:
        thunk: Zero-argument function returning (head digit, tail stream).
            Called at most once.
        counter: The root counter this cell reports to. A fresh one is made
            when omitted, i.e. the cell starts a new root.
        known: The rational the stream denotes, when it was built from one.
            Only used by debug precondition checks.
    """

    __slots__ = ("_thunk", "_cell", "counter", "known", "__weakref__")

    def __init__(
        self,
        thunk: Callable[[], Tuple[int, "DigitStream"]],
        counter: Optional[ReadCounter] = None,
        known: Optional[Fraction] = None,
    ):
        self._thunk = thunk
        self._cell: Optional[Cell] = None
        self.counter = counter if counter is not None else ReadCounter()
        self.known = known

    def destruct(self) -> Cell:
        """Return (head, tail), forcing and caching this cell on first use."""
        cell = self._cell
        if cell is None:
            with FORCE_LOCK:
                cell = self._cell
                if cell is None:
                    head, tail = self._thunk()
                    cell = (as_digit(head), tail)
                    self._cell = cell
                    self._thunk = None
                    self.counter.count += 1
        return cell

    def head(self) -> SignedDigit:
        return self.destruct()[0]

    def tail(self) -> "DigitStream":
        return self.destruct()[1]

    @property
    def reads(self) -> int:
        return self.counter.count

    @property
    def is_forced(self) -> bool:
        return self._cell is not None

    def forced_digits(self) -> DigitList:
        """The digits already computed, without forcing anything."""
        digits = []
        cell = self._cell
        while cell is not None:
            digits.append(cell[0])
            cell = cell[1]._cell
        return digits

    def __iter__(self) -> Iterator[SignedDigit]:
        stream = self
        while True:
            digit, stream = stream.destruct()
            yield digit

    def __repr__(self) -> str:
        shown = render_digits(self.forced_digits()[:32])
        return f"DigitStream({shown}...)"


def cons_digit(d: int, u: DigitStream, counter: Optional[ReadCounter] = None) -> DigitStream:
    """
    The stream d u, denoting (d + value(u)) / 2. The tail is u itself.

    The new cell reports to u's root unless another counter is given, so the
    result's reads cover the tail as well.
    """
    digit = as_digit(d)
    return DigitStream(lambda: (digit, u), counter if counter is not None else u.counter)


def follow(u: DigitStream, counter: ReadCounter) -> DigitStream:
    """A view of u whose cells report to `counter`; forcing it forces u's cells too."""
    def thunk() -> Tuple[int, DigitStream]:
        d, v = u.destruct()
        return d, follow(v, counter)

    return DigitStream(thunk, counter, known=u.known)


def destruct(u: DigitStream) -> Cell:
    return u.destruct()


def const_stream(d: int, counter: Optional[ReadCounter] = None) -> DigitStream:
    """d d d ..., denoting d. Each position is its own cell so reads stay countable."""
    digit = as_digit(d)
    counter = counter if counter is not None else ReadCounter()
    return DigitStream(lambda: (digit, const_stream(digit, counter)), counter, known=Fraction(digit))


def unfold(step: Callable[[S], Tuple[int, S]], state: S, counter: Optional[ReadCounter] = None) -> DigitStream:
    """Corecursion: build a stream from a step function emitting one digit per state."""
    counter = counter if counter is not None else ReadCounter()

    def thunk() -> Tuple[int, DigitStream]:
        digit, next_state = step(state)
        return digit, unfold(step, next_state, counter)

    return DigitStream(thunk, counter)


def stream_of_digits(digits: Iterable[int], tail: Optional[DigitStream] = None) -> DigitStream:
    """A finite digit list followed by `tail` (all zeros by default), counted on the tail's root."""
    stream = tail if tail is not None else const_stream(0)
    for d in reversed(list(digits)):
        stream = cons_digit(d, stream)
    return stream


def negate(u: DigitStream, counter: Optional[ReadCounter] = None) -> DigitStream:
    """Digit-wise sign flip, denoting -value(u)."""
    counter = counter if counter is not None else ReadCounter()

    def thunk() -> Tuple[int, DigitStream]:
        d, v = u.destruct()
        return -d, negate(v, counter)

    known = -u.known if u.known is not None else None
    return DigitStream(thunk, counter, known=known)


def sd_times(d: int, u: DigitStream) -> DigitStream:
    """d * value(u) for a signed digit d."""
    digit = as_digit(d)
    if digit is SignedDigit.PLUS:
        return u
    if digit is SignedDigit.ZERO:
        return const_stream(0)
    return negate(u)


def prefix(u: DigitStream, n: int) -> DigitList:
    """The first n digits of u."""
    if n < 0:
        raise ValueError(f"Prefix length must be non-negative, got {n}")
    digits = []
    stream = u
    for _ in range(n):
        digit, stream = stream.destruct()
        digits.append(digit)
    return digits


def sum_digits(digits: Iterable[int]) -> Fraction:
    """sum(l_i / 2**i) over the list, exactly."""
    numerator = 0
    length = 0
    for d in digits:
        numerator = 2 * numerator + d
        length += 1
    return Fraction(numerator, 1 << length)


def approx(u: DigitStream, n: int) -> Fraction:
    """A rational within 2**-n of value(u)."""
    return sum_digits(prefix(u, n))


def render_digits(digits: Iterable[int]) -> str:
    return "".join(_SYMBOLS[as_digit(d)] for d in digits)


def parse_digits(text: str) -> DigitList:
    return [SignedDigit.from_symbol(char) for char in text]


class ReadProbe:
    """
    Watches the counters of many input streams, e.g. every F(n) a limit
    operator asks for. Only counters are kept, never the streams themselves.
    """

    def __init__(self):
        self._counters: List[ReadCounter] = []

    def watch(self, stream: DigitStream) -> DigitStream:
        self._counters.append(stream.counter)
        return stream

    def sequence(self, make: Callable[[int], DigitStream]) -> Callable[[int], DigitStream]:
        """Wrap a stream sequence so every stream it hands out is watched."""
        return lambda n: self.watch(make(n))

    @property
    def max_reads(self) -> int:
        return max((counter.count for counter in self._counters), default=0)

    @property
    def total_reads(self) -> int:
        return sum(counter.count for counter in self._counters)

    @property
    def streams_watched(self) -> int:
        return len(self._counters)


def run_deep(
    fn: Callable[..., R],
    *args,
    recursion_limit: int = DEFAULT_RECURSION_LIMIT,
    stack_mb: int = DEFAULT_STACK_MB,
) -> R:
    """
    Run fn(*args) on a worker thread with a large stack and a raised recursion
    limit. Forcing a digit of a deeply nested limit or Heron iterate recurses
    through every layer below it.

    Exceptions raised by fn are re-raised in the caller.
    """
    outcome = {}

    def target():
        try:
            outcome["value"] = fn(*args)
        except BaseException as exc:
            outcome["error"] = exc

    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, recursion_limit))
    try:
        old_size = threading.stack_size(stack_mb * 1024 * 1024)
        try:
            worker = threading.Thread(target=target, name="sdreal-deep")
            worker.start()
        finally:
            threading.stack_size(old_size)
        worker.join()
    finally:
        sys.setrecursionlimit(old_limit)

    if "error" in outcome:
        raise outcome["error"]
    return outcome["value"]
