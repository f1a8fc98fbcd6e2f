"""Digit-level Kaprekar arithmetic on fixed-width base-10 numbers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

DEFAULT_ORBIT_LIMIT = 1000


class KaprekarError(ValueError):
    pass


class RepdigitInput(KaprekarError):
    pass


class NonDigit(KaprekarError):
    pass


class TooWide(KaprekarError):
    pass


class WidthMismatch(KaprekarError):
    pass


@dataclass(frozen=True, order=True)
class DigitNumber:
    """A width-``w`` decimal digit vector, most significant digit first.

    Leading zeros are significant: ``0009`` and ``009`` are different
    elements because they live in different widths.  Repdigits are rejected
    on construction so every downstream operation is total.
    """

    digits: tuple[int, ...]

    def __post_init__(self):
        digits = tuple(int(d) for d in self.digits)
        object.__setattr__(self, "digits", digits)
        if len(digits) < 2:
            raise KaprekarError(f"width must be >= 2, got {len(digits)}")
        if any(d < 0 or d > 9 for d in digits):
            raise NonDigit(f"digits out of range 0..9: {digits}")
        if len(set(digits)) == 1:
            raise RepdigitInput(f"repdigit {''.join(map(str, digits))} is excluded")

    @property
    def width(self) -> int:
        return len(self.digits)

    @classmethod
    def from_int(cls, value: int, width: int) -> "DigitNumber":
        if value < 0:
            raise NonDigit(f"negative value {value}")
        return make_number(str(value), width)

    def __int__(self) -> int:
        return int(str(self))

    def __str__(self) -> str:
        return "".join(map(str, self.digits))

    def __repr__(self) -> str:
        return f"DigitNumber('{self}')"

    def is_multiple_of_nine(self) -> bool:
        return sum(self.digits) % 9 == 0


@dataclass(frozen=True)
class SortedPair:
    descending: tuple[int, ...]
    ascending: tuple[int, ...]

    def __post_init__(self):
        if tuple(reversed(self.descending)) != self.ascending:
            raise ValueError("ascending must be the reversal of descending")
        if any(a < b for a, b in zip(self.descending, self.descending[1:])):
            raise ValueError("descending digits are not non-increasing")

    @property
    def x(self) -> str:
        return "".join(map(str, self.descending))

    @property
    def y(self) -> str:
        return "".join(map(str, self.ascending))


FIXED_POINT = "fixed-point"
ENTERED_CYCLE = "entered-cycle"
TRUNCATED = "truncated"


@dataclass(frozen=True)
class Orbit:
    """Iterates of ``start``; ``steps[0]`` is ``start`` itself.

    ``terminal`` is one of ``fixed-point``, ``entered-cycle`` or
    ``truncated``.  For the first two, ``cycle_length`` is the period of the
    attractor and the last ``cycle_length`` entries of ``steps`` are its
    members in orbit order.
    """

    start: DigitNumber
    steps: tuple[DigitNumber, ...]
    terminal: str
    cycle_length: int = 0
    limit: int = field(default=DEFAULT_ORBIT_LIMIT, compare=False)

    @property
    def cycle(self) -> tuple[DigitNumber, ...]:
        if self.terminal == TRUNCATED:
            return ()
        return self.steps[-self.cycle_length:]

    @property
    def attractor(self) -> DigitNumber | None:
        """The fixed point, or the first cycle member reached."""
        if self.terminal == TRUNCATED:
            return None
        return self.cycle[0]

    @property
    def tail_length(self) -> int:
        return len(self.steps) - self.cycle_length


def make_number(text: str | int, width: int) -> DigitNumber:
    """Parse ``text`` and left-pad it with zeros to ``width`` digits."""
    text = str(text).strip()
    if width < 2:
        raise KaprekarError(f"width must be >= 2, got {width}")
    if not text or not text.isdigit() or not text.isascii():
        raise NonDigit(f"not a decimal digit string: {text!r}")
    if len(text) > width:
        raise TooWide(f"{text} has more than {width} digits")
    return DigitNumber(tuple(int(c) for c in text.rjust(width, "0")))


def sort_pair(n: DigitNumber) -> SortedPair:
    desc = tuple(sorted(n.digits, reverse=True))
    return SortedPair(desc, desc[::-1])


def subtract_digits(x: Sequence[int], y: Sequence[int]) -> tuple[int, ...]:
    """Schoolbook ``x - y`` on equal-length digit vectors, requiring x >= y."""
    out = [0] * len(x)
    borrow = 0
    for i in range(len(x) - 1, -1, -1):
        d = x[i] - y[i] - borrow
        if d < 0:
            d += 10
            borrow = 1
        else:
            borrow = 0
        out[i] = d
    if borrow:
        raise ValueError("subtraction underflow: x < y")
    return tuple(out)


def kaprekar_step(n: DigitNumber) -> DigitNumber:
    """One application of the routine: descending sort minus ascending sort."""
    pair = sort_pair(n)
    return DigitNumber(subtract_digits(pair.descending, pair.ascending))


def iterate(n: DigitNumber, r: int) -> DigitNumber:
    if r < 0:
        raise ValueError(f"iteration count must be >= 0, got {r}")
    for _ in range(r):
        n = kaprekar_step(n)
    return n


def orbit(n: DigitNumber, limit: int = DEFAULT_ORBIT_LIMIT) -> Orbit:
    """Follow ``n`` until a value repeats or ``limit`` steps have been taken."""
    if limit < 1:
        raise ValueError(f"limit must be >= 1, got {limit}")
    steps = [n]
    index = {n: 0}
    current = n
    for _ in range(limit):
        current = kaprekar_step(current)
        if current in index:
            period = len(steps) - index[current]
            tag = FIXED_POINT if period == 1 else ENTERED_CYCLE
            return Orbit(n, tuple(steps), tag, period, limit)
        index[current] = len(steps)
        steps.append(current)
    return Orbit(n, tuple(steps), TRUNCATED, 0, limit)


def half_width(width: int) -> int:
    return width // 2


def param_tuple(n: DigitNumber) -> tuple[int, ...]:
    """Differences of position-symmetric digits of the descending sort."""
    x = sort_pair(n).descending
    w = len(x)
    return tuple(x[s] - x[w - 1 - s] for s in range(w // 2))


def params(n: DigitNumber):
    """The parameter vector of ``n`` (a :class:`~kaprekar.parametric.ParamVector`)."""
    from .parametric import ParamVector

    return ParamVector(param_tuple(n), n.width)


def all_numbers(width: int) -> Iterable[DigitNumber]:
    """Every element of the width's domain in increasing numeric order."""
    for value in range(10 ** width):
        digits = tuple(int(c) for c in str(value).rjust(width, "0"))
        if len(set(digits)) > 1:
            yield DigitNumber(digits)
