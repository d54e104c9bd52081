"""Exact nonnegative rationals and directed-rounded enclosures.

Values are plain :class:`fractions.Fraction` instances; the helpers here
enforce the nonnegative domain and the ``"num/den"`` wire format.  An
:class:`Enclosure` is a pair of dyadic numbers with ``precision``-bit
mantissas that brackets an exact quantity.
"""
from __future__ import annotations

import decimal
import math
from dataclasses import dataclass
from fractions import Fraction

Rational = Fraction

DEFAULT_PRECISION = 128
MIN_PRECISION = 16


class DomainError(ValueError):
    """Raised when a value leaves the nonnegative rationals."""


def rat_make(n: int, d: int = 1) -> Fraction:
    if d == 0:
        raise ZeroDivisionError("zero denominator")
    x = Fraction(n, d)
    if x < 0:
        raise DomainError(f"negative value {n}/{d}")
    return x


def _check(x: Fraction) -> Fraction:
    if x < 0:
        raise DomainError(f"negative value {x}")
    return x


def rat_arith(a: Fraction, b: Fraction, op: str) -> Fraction:
    if op == "add":
        return a + b
    if op == "sub":
        if a < b:
            raise DomainError(f"{a} - {b} is negative")
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b == 0:
            raise ZeroDivisionError("division by zero rational")
        return a / b
    raise ValueError(f"unknown op {op!r}")


def rat_split(x: Fraction) -> tuple[int, Fraction]:
    """Return ``(floor(x), x - floor(x))``."""
    q, r = divmod(x.numerator, x.denominator)
    return q, Fraction(r, x.denominator)


def rat_cmp(a: Fraction, b: Fraction) -> int:
    """Three-way comparison by cross multiplication: -1, 0 or 1."""
    lhs = a.numerator * b.denominator
    rhs = b.numerator * a.denominator
    return (lhs > rhs) - (lhs < rhs)


def rat_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse ``"A/B"`` or a bare integer ``"A"``; decimals are rejected."""
    s = text.strip()
    if "/" in s:
        num, _, den = s.partition("/")
        try:
            n, d = int(num), int(den)
        except ValueError:
            raise ValueError(f"not a rational: {text!r}") from None
    else:
        try:
            n, d = int(s), 1
        except ValueError:
            raise ValueError(f"not a rational: {text!r}") from None
    return rat_make(n, d)


# -- directed rounding -------------------------------------------------------

def round_dyadic(num: int, den: int, precision: int, upward: bool) -> Fraction:
    """Round ``num/den >= 0`` to a ``precision``-bit mantissa, toward -inf or +inf."""
    if num == 0:
        return Fraction(0)
    # shift so that the quotient has precision or precision+1 bits
    shift = precision - (num.bit_length() - den.bit_length())
    if shift >= 0:
        q, r = divmod(num << shift, den)
    else:
        q, r = divmod(num, den << -shift)
    if q.bit_length() > precision:
        extra = q.bit_length() - precision
        r = r or (q & ((1 << extra) - 1))
        q >>= extra
        shift -= extra
    if upward and r:
        q += 1
    if shift >= 0:
        return Fraction(q, 1 << shift)
    return Fraction(q << -shift)


@dataclass(frozen=True)
class Enclosure:
    """Certified interval ``[lo, hi]`` with dyadic endpoints."""

    lo: Fraction
    hi: Fraction
    precision: int = DEFAULT_PRECISION

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("enclosure with lo > hi")

    @classmethod
    def from_bounds(cls, lo: Fraction, hi: Fraction, precision: int) -> "Enclosure":
        """Round exact bounds outward to ``precision`` bits."""
        return cls(_round_signed(lo, precision, False),
                   _round_signed(hi, precision, True), precision)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def __add__(self, other):
        if isinstance(other, Enclosure):
            p = min(self.precision, other.precision)
            return Enclosure.from_bounds(self.lo + other.lo, self.hi + other.hi, p)
        x = Fraction(other)
        return Enclosure.from_bounds(self.lo + x, self.hi + x, self.precision)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Enclosure):
            p = min(self.precision, other.precision)
            return Enclosure.from_bounds(self.lo - other.hi, self.hi - other.lo, p)
        x = Fraction(other)
        return Enclosure.from_bounds(self.lo - x, self.hi - x, self.precision)

    def __rsub__(self, other):
        x = Fraction(other)
        return Enclosure.from_bounds(x - self.hi, x - self.lo, self.precision)

    def scale_pow2(self, k: int) -> "Enclosure":
        """Multiply by ``2**k``; exact on dyadic endpoints."""
        f = Fraction(2) ** k
        return Enclosure(self.lo * f, self.hi * f, self.precision)

    def to_json(self) -> dict:
        digits = math.ceil(self.precision * math.log10(2)) + 2
        return {
            "lo": _decimal_str(self.lo, digits, decimal.ROUND_FLOOR),
            "hi": _decimal_str(self.hi, digits, decimal.ROUND_CEILING),
            "precision_bits": self.precision,
        }

    def __str__(self):
        d = self.to_json()
        return f"[{d['lo']}, {d['hi']}]"


def _round_signed(x: Fraction, precision: int, upward: bool) -> Fraction:
    if x >= 0:
        return round_dyadic(x.numerator, x.denominator, precision, upward)
    return -round_dyadic(-x.numerator, x.denominator, precision, not upward)


def _decimal_str(x: Fraction, digits: int, rounding: str) -> str:
    ctx = decimal.Context(prec=digits, rounding=rounding)
    q = ctx.divide(decimal.Decimal(x.numerator), decimal.Decimal(x.denominator))
    return format(q, "f") if abs(q.adjusted()) < digits else str(q)


def rat_to_enclosure(x: Fraction, precision: int = DEFAULT_PRECISION) -> Enclosure:
    if precision < MIN_PRECISION:
        raise ValueError(f"precision must be >= {MIN_PRECISION} bits")
    _check(x)
    n, d = x.numerator, x.denominator
    return Enclosure(round_dyadic(n, d, precision, False),
                     round_dyadic(n, d, precision, True), precision)
