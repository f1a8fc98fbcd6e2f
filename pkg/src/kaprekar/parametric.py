"""Parameter vectors, the three image families and image-shape membership."""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Optional

from .core import DigitNumber, KaprekarError

# apply_f re-checks its own output when this is set (the test suite sets it)
SELF_CHECK = bool(os.environ.get("KAPREKAR_SELF_CHECK"))


class InvalidParams(KaprekarError):
    pass


@dataclass(frozen=True, order=True)
class ParamVector:
    """Parameters ``alpha^1 .. alpha^h`` of a parametric class of ``width``.

    Invariants: ``1 <= alpha^1 <= 9``, ``0 <= alpha^s <= 9`` and the tuple
    is non-increasing.
    """

    alphas: tuple[int, ...]
    width: int

    def __post_init__(self):
        alphas = tuple(int(a) for a in self.alphas)
        object.__setattr__(self, "alphas", alphas)
        if self.width < 2:
            raise InvalidParams(f"width must be >= 2, got {self.width}")
        if len(alphas) != self.width // 2:
            raise InvalidParams(
                f"width {self.width} needs {self.width // 2} parameters, got {len(alphas)}"
            )
        if not 1 <= alphas[0] <= 9 or any(a < 0 or a > 9 for a in alphas):
            raise InvalidParams(f"parameters out of range: {alphas}")
        if any(a < b for a, b in zip(alphas, alphas[1:])):
            raise InvalidParams(f"parameters must be non-increasing: {alphas}")

    @classmethod
    def parse(cls, text: str, width: int) -> "ParamVector":
        """``"632"`` -> (6, 3, 2); separators (commas, spaces) are allowed."""
        digits = [int(c) for c in str(text) if c.isdigit()]
        return cls(tuple(digits), width)

    @property
    def h(self) -> int:
        return len(self.alphas)

    @property
    def parity(self) -> str:
        return "even" if self.width % 2 == 0 else "odd"

    @property
    def nonzero(self) -> int:
        """Number of leading nonzero parameters."""
        return sum(1 for a in self.alphas if a > 0)

    def __str__(self) -> str:
        return "".join(map(str, self.alphas))

    def __repr__(self) -> str:
        return f"ParamVector({str(self)}, w={self.width})"

    def __getitem__(self, i):
        return self.alphas[i]

    def __len__(self):
        return len(self.alphas)

    def representative(self) -> DigitNumber:
        """The smallest-looking member: parameter digits followed by zeros."""
        return DigitNumber(self.alphas + (0,) * (self.width - self.h))


@dataclass(frozen=True)
class FamilyTag:
    """Which image family a class falls in.

    ``F1``: every parameter nonzero; ``F2``: a nonzero prefix of length
    ``r - 1 >= 2`` followed by zeros; ``F3``: only the first parameter is
    nonzero.  With a single parameter the three shapes coincide and the
    class is tagged ``F3``.
    """

    kind: str
    parity: str
    r: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("F1", "F2", "F3"):
            raise ValueError(f"unknown family {self.kind!r}")
        if self.parity not in ("even", "odd"):
            raise ValueError(f"unknown parity {self.parity!r}")
        if (self.kind == "F2") != (self.r is not None):
            raise ValueError("r is given exactly for F2")
        if self.r is not None and self.r < 3:
            raise ValueError(f"F2 needs r >= 3, got {self.r}")

    def nonzero_count(self, width: int) -> int:
        if self.kind == "F1":
            return width // 2
        if self.kind == "F3":
            return 1
        return self.r - 1

    def check_width(self, width: int) -> None:
        parity = "even" if width % 2 == 0 else "odd"
        if parity != self.parity:
            raise ValueError(f"{self} does not apply to width {width}")
        h = width // 2
        if self.kind == "F1" and h < 2:
            raise ValueError(f"F1 needs at least two parameters (width {width})")
        if self.kind == "F2" and not self.r <= h:
            raise ValueError(f"F2(r={self.r}) needs h >= r, width {width}")

    def __str__(self) -> str:
        kind = f"F2({self.r})" if self.kind == "F2" else self.kind
        return f"{kind}/{self.parity}"


@dataclass(frozen=True)
class BwMembership:
    satisfied: bool
    failed_condition: Optional[str] = None

    def __bool__(self):
        return self.satisfied


def family_tags(width: int) -> list[FamilyTag]:
    """All tags that occur at ``width``, F3 first, then F2 by r, then F1."""
    parity = "even" if width % 2 == 0 else "odd"
    h = width // 2
    tags = [FamilyTag("F3", parity)]
    tags += [FamilyTag("F2", parity, r) for r in range(3, h + 1)]
    if h >= 2:
        tags.append(FamilyTag("F1", parity))
    return tags


def classify(alpha: ParamVector) -> FamilyTag:
    k = alpha.nonzero
    if k == 1:
        return FamilyTag("F3", alpha.parity)
    if k == alpha.h:
        return FamilyTag("F1", alpha.parity)
    return FamilyTag("F2", alpha.parity, k + 1)


def image_digits(alphas: tuple[int, ...], width: int) -> tuple[int, ...]:
    """Image digits for raw parameters (no validation).

    With ``k`` leading nonzero parameters the image is
    ``a1 .. a(k-1), ak - 1, 9 * (w - 2k), 9 - ak, .., 9 - a2, 10 - a1``,
    which covers all three families at both parities.
    """
    k = sum(1 for a in alphas if a > 0)
    head = list(alphas[: k - 1]) + [alphas[k - 1] - 1]
    tail = [9 - alphas[s] for s in range(k - 1, 0, -1)] + [10 - alphas[0]]
    return tuple(head + [9] * (width - 2 * k) + tail)


def apply_f(alpha: ParamVector) -> DigitNumber:
    """The common image of every number whose parameters are ``alpha``."""
    image = DigitNumber(image_digits(alpha.alphas, alpha.width))
    if SELF_CHECK:
        membership = check_bw(image, classify(alpha))
        assert membership, f"f({alpha}) = {image} fails {membership.failed_condition}"
    return image


def check_bw(n: DigitNumber, tag: FamilyTag) -> BwMembership:
    """Check the positional digit conditions an image of family ``tag`` obeys.

    Pairs are taken from the outside in on ``n``'s own digit positions: the
    outer pair sums to 10 (9 for F3), the inner pairs of the nonzero block
    sum to 9, the innermost pair sums to 8, and the middle is all nines.
    """
    w = n.width
    tag.check_width(w)
    a = n.digits
    k = tag.nonzero_count(w)
    if sum(a) % 9:
        return BwMembership(False, "sum9")
    if tag.kind == "F3":
        if a[0] + a[-1] != 9 or any(d != 9 for d in a[1:-1]):
            return BwMembership(False, "f3-shape")
        return BwMembership(True)
    if a[0] + a[-1] != 10:
        return BwMembership(False, "ends10")
    for s in range(1, k - 1):
        if a[s] + a[w - 1 - s] != 9:
            return BwMembership(False, "pairs9")
    if a[k - 1] + a[w - k] != 8:
        return BwMembership(False, "middle8")
    if any(d != 9 for d in a[k: w - k]):
        return BwMembership(False, "middle9s")
    return BwMembership(True)


def class_count(width: int) -> int:
    """Non-increasing h-tuples over 0..9 minus the all-zero tuple."""
    from math import comb

    h = width // 2
    return comb(h + 9, 9) - 1


def enumerate_class_tuples(width: int) -> list[tuple[int, ...]]:
    h = width // 2
    out = [
        c
        for c in combinations_with_replacement(range(9, -1, -1), h)
        if c[0] > 0
    ]
    out.sort(reverse=True)
    return out


def enumerate_classes(width: int) -> list[ParamVector]:
    """Every parametric class of ``width`` in descending lexicographic order."""
    if width < 2:
        raise InvalidParams(f"width must be >= 2, got {width}")
    return [ParamVector(t, width) for t in enumerate_class_tuples(width)]
