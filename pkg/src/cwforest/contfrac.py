"""Finite continued fractions ``[q0, q1, ..., qr]`` as tuples of ints.

Every positive rational has exactly two expansions: the short (canonical)
one whose last coefficient is at least 2 (or ``[1]`` for one), and the long
one ending in 1.  Zero is ``[0]`` and has no long form.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Sequence

from .rational import DomainError


def cf_encode(x: Fraction) -> tuple[int, ...]:
    """Canonical short expansion of ``x >= 0`` by the Euclidean algorithm."""
    a, b = x.numerator, x.denominator
    if a < 0:
        raise DomainError(f"negative value {x}")
    coeffs = []
    while True:
        q, r = divmod(a, b)
        coeffs.append(q)
        if r == 0:
            return tuple(coeffs)
        a, b = b, r


def _validate(coeffs: Sequence[int]) -> None:
    if not coeffs:
        raise ValueError("empty continued fraction")
    if coeffs[0] < 0:
        raise ValueError(f"negative leading coefficient in {list(coeffs)}")
    for q in coeffs[1:]:
        if q < 1:
            raise ValueError(f"interior coefficient {q} < 1 in {list(coeffs)}")


def cf_decode(coeffs: Sequence[int]) -> Fraction:
    _validate(coeffs)
    num, den = coeffs[-1], 1
    for q in reversed(coeffs[:-1]):
        num, den = q * num + den, num
    return Fraction(num, den)


def is_canonical(coeffs: Sequence[int]) -> bool:
    return len(coeffs) == 1 or coeffs[-1] >= 2


def cf_long_form(coeffs: Sequence[int]) -> tuple[int, ...]:
    """``[..., qr] -> [..., qr - 1, 1]`` for a canonical nonzero expansion."""
    _validate(coeffs)
    if not is_canonical(coeffs):
        raise ValueError(f"{list(coeffs)} is not canonical")
    if len(coeffs) == 1 and coeffs[0] == 0:
        raise ValueError("zero has no long form")
    return tuple(coeffs[:-1]) + (coeffs[-1] - 1, 1)


def cf_short_form(coeffs: Sequence[int]) -> tuple[int, ...]:
    """``[..., q, 1] -> [..., q + 1]``; canonical input is returned unchanged."""
    _validate(coeffs)
    if is_canonical(coeffs):
        return tuple(coeffs)
    return tuple(coeffs[:-2]) + (coeffs[-2] + 1,)


def representations(x: Fraction) -> tuple[tuple[int, ...], ...]:
    """All well-formed expansions of ``x``: ``(short, long)``, or ``(short,)`` for 0."""
    short = cf_encode(x)
    if x == 0:
        return (short,)
    return short, cf_long_form(short)


def cf_compare(a: Sequence[int], b: Sequence[int]) -> int:
    """Compare two expansions coefficient-wise; returns -1, 0 or 1.

    At the first differing index k the larger coefficient wins when k is
    even and loses when k is odd.  When one expansion is a proper prefix of
    the other with last index s, the prefix is smaller iff s is even.
    """
    a, b = cf_short_form(a), cf_short_form(b)
    for k, (p, q) in enumerate(zip(a, b)):
        if p != q:
            sign = -1 if p < q else 1
            return sign if k % 2 == 0 else -sign
    if len(a) == len(b):
        return 0
    if len(a) < len(b):
        return -1 if (len(a) - 1) % 2 == 0 else 1
    return 1 if (len(b) - 1) % 2 == 0 else -1


def common_prefix_index(a: Sequence[int], b: Sequence[int]) -> int:
    """Largest k with ``a[j] == b[j]`` for all ``j <= k``; -1 if ``a[0] != b[0]``."""
    k = -1
    for p, q in zip(a, b):
        if p != q:
            break
        k += 1
    return k


def cf_prefix_bound(a: Sequence[int], b: Sequence[int]) -> Fraction:
    """Product of ``1/p_j**2`` over the shared coefficients ``j = 1..k``.

    Dominates ``|decode(a) - decode(b)|``.  Requires distinct sequences
    with equal integer parts.
    """
    _validate(a)
    _validate(b)
    if tuple(a) == tuple(b):
        raise ValueError("sequences are identical")
    if a[0] != b[0]:
        raise ValueError("integer parts differ; the prefix bound does not apply")
    k = common_prefix_index(a, b)
    den = 1
    for p in a[1:k + 1]:
        den *= p * p
    return Fraction(1, den)


def corbound_decay(k: int, u: int, v: int) -> Fraction:
    """Bound on the prefix product when odd-index coefficients are multiples
    of ``u`` and even-index ones multiples of ``v``: ``u**(-2*ceil(k/2)) * v**(-2*floor(k/2))``."""
    return Fraction(1, u ** (2 * ((k + 1) // 2)) * v ** (2 * (k // 2)))


def cf_length(x: Fraction) -> int:
    """Last index of the canonical expansion of ``x > 0``."""
    if x <= 0:
        raise DomainError("length is defined for positive rationals only")
    return len(cf_encode(x)) - 1


def format_cf(coeffs: Sequence[int]) -> str:
    return "[" + ",".join(str(q) for q in coeffs) + "]"


def parse_cf(text: str) -> tuple[int, ...]:
    """Parse ``"[0,1,1,2]"`` (spaces tolerated)."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        raise ValueError(f"not a continued fraction: {text!r}") from None
    if not isinstance(data, list) or not all(type(q) is int for q in data):
        raise ValueError(f"not a continued fraction: {text!r}")
    coeffs = tuple(data)
    _validate(coeffs)
    return coeffs
