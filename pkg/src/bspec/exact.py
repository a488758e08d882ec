"""Exact rational arithmetic helpers, prime valuations and digit expansions.

Rationals are :class:`fractions.Fraction` objects, which are always stored
in lowest terms with a positive denominator.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import InvalidArgument

RationalLike = Union[Fraction, int, str]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*([+-]?\d+))?\s*$")


def reduce(num: int, den: int) -> Fraction:
    """Return ``num/den`` in lowest terms, sign carried by the numerator."""
    if den == 0:
        raise InvalidArgument("zero denominator")
    return Fraction(int(num), int(den))


def parse_rational(text: RationalLike) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; non-reduced input such as ``"4/12"`` is accepted.

    Decimal strings are rejected: frequencies are exact objects.
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise InvalidArgument(f"cannot interpret {text!r} as a rational")
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise InvalidArgument(f"malformed rational {text!r}; expected p/q")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    return reduce(num, den)


def format_rational(r: Fraction) -> str:
    """Serialize as ``num/den``, omitting the denominator when it is 1."""
    r = Fraction(r)
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"


def valuation(n: int, p: int) -> int:
    """Largest ``e`` such that ``p**e`` divides ``n``."""
    if n == 0:
        raise InvalidArgument("valuation of 0 is infinite")
    if p < 2:
        raise InvalidArgument(f"{p} is not a prime")
    n = abs(n)
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def split_power(n: int, p: int) -> tuple[int, int]:
    """Return ``(e, m)`` with ``n = p**e * m`` and ``p`` not dividing ``m``."""
    e = valuation(n, p)
    return e, n // p**e


@dataclass(frozen=True)
class DigitExpansion:
    """Base-``base`` digits of a nonnegative integer, least significant first."""

    base: int
    digits: tuple[int, ...]

    @property
    def value(self) -> int:
        return from_digits(self.digits, self.base)

    def __iter__(self):
        return iter(self.digits)

    def __len__(self) -> int:
        return len(self.digits)


def to_digits(m: int, base: int) -> DigitExpansion:
    if base < 2:
        raise InvalidArgument(f"base must be >= 2, got {base}")
    if m < 0:
        raise InvalidArgument("digit expansions are defined for m >= 0")
    digits = []
    while m:
        m, d = divmod(m, base)
        digits.append(d)
    return DigitExpansion(base, tuple(digits))


def from_digits(digits, base: int) -> int:
    value = 0
    for d in reversed(tuple(digits)):
        value = value * base + d
    return value


def spread_bits(m: int, base: int = 4) -> int:
    """Reinterpret the binary digits of ``m`` as base-``base`` digits.

    Enumerating ``m = 0, 1, 2, ...`` lists every integer whose base-``base``
    digits lie in {0, 1}, in increasing order.
    """
    value = 0
    scale = 1
    while m:
        if m & 1:
            value += scale
        m >>= 1
        scale *= base
    return value


@dataclass(frozen=True)
class LambdaParam:
    """A contraction ratio ``a/b`` in lowest terms with ``0 < a < b``."""

    a: int
    b: int

    def __post_init__(self):
        if not (isinstance(self.a, int) and isinstance(self.b, int)):
            raise InvalidArgument("lambda numerator and denominator must be integers")
        if not 0 < self.a < self.b:
            raise InvalidArgument(f"lambda = {self.a}/{self.b} is not in (0, 1)")
        if math.gcd(self.a, self.b) != 1:
            raise InvalidArgument(f"lambda = {self.a}/{self.b} is not reduced")

    @classmethod
    def of(cls, value: "LambdaParam | RationalLike") -> "LambdaParam":
        """Coerce ``value`` (a LambdaParam, Fraction or ``"a/b"``) into a LambdaParam.

        Non-reduced strings are reduced first, so ``"6/8"`` means 3/4.
        """
        if isinstance(value, LambdaParam):
            return value
        r = parse_rational(value)
        return cls(r.numerator, r.denominator)

    @property
    def value(self) -> Fraction:
        return Fraction(self.a, self.b)

    def __float__(self) -> float:
        return self.a / self.b

    def __str__(self) -> str:
        return f"{self.a}/{self.b}"
