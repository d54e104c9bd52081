"""Vertex navigation in the (u,v)-Calkin-Wilf trees.

A vertex ``a/b`` has left child ``a/(u*a + b)`` and right child
``(a + v*b)/b``.  Left children lie below ``1/u`` and right children above
``v``, so every rational outside ``[1/u, v]`` has exactly one parent and the
rationals inside that interval are roots.  Paths are strings over ``"LR"``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .contfrac import cf_short_form, representations
from .rational import DomainError


@dataclass(frozen=True)
class TreeParams:
    u: int
    v: int

    def __post_init__(self):
        if not (isinstance(self.u, int) and isinstance(self.v, int)):
            raise TypeError("u and v must be integers")
        if self.u < 1 or self.v < 1:
            raise ValueError(f"u and v must be positive, got ({self.u}, {self.v})")

    def __iter__(self):
        return iter((self.u, self.v))


def _positive(x: Fraction) -> None:
    if x <= 0:
        raise DomainError(f"vertex must be positive, got {x}")


def children(x: Fraction, p: TreeParams) -> tuple[Fraction, Fraction]:
    _positive(x)
    a, b = x.numerator, x.denominator
    return Fraction(a, p.u * a + b), Fraction(a + p.v * b, b)


def children_cf(coeffs: Sequence[int], p: TreeParams) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Children computed on the continued fraction directly."""
    coeffs = tuple(coeffs)
    if cf_short_form(coeffs) != coeffs:
        raise ValueError(f"{list(coeffs)} is not canonical")
    if coeffs == (0,):
        raise DomainError("vertex must be positive")
    q0, rest = coeffs[0], coeffs[1:]
    if q0 == 0:
        left = (0, p.u + rest[0]) + rest[1:]
    else:
        left = cf_short_form((0, p.u, q0) + rest)
    right = (p.v + q0,) + rest
    return left, right


def is_orphan(q: Fraction, p: TreeParams) -> bool:
    _positive(q)
    return Fraction(1, p.u) <= q <= p.v


def parent(x: Fraction, p: TreeParams) -> Optional[Fraction]:
    _positive(x)
    if x > p.v:
        return x - p.v
    if x * p.u < 1:
        a, b = x.numerator, x.denominator
        return Fraction(a, b - p.u * a)
    return None


def locate(q: Fraction, p: TreeParams) -> tuple[Fraction, int, str]:
    """Root, depth and path of ``q`` in the forest of trees rooted in ``[1/u, v]``."""
    _positive(q)
    steps = []
    x = q
    size = x.numerator + x.denominator
    while True:
        y = parent(x, p)
        if y is None:
            break
        steps.append("R" if x > p.v else "L")
        new_size = y.numerator + y.denominator
        assert new_size < size, "parent step failed to shrink num+den"
        x, size = y, new_size
    return x, len(steps), "".join(reversed(steps))


def vertex_at_path(root: Fraction, path: str, p: TreeParams) -> Fraction:
    _positive(root)
    a, b = root.numerator, root.denominator
    for step in path:
        if step == "L":
            b = p.u * a + b
        elif step == "R":
            a = a + p.v * b
        else:
            raise ValueError(f"bad path step {step!r}")
    return Fraction(a, b)


def ancestor_distance(z: Fraction, zp: Fraction, p: TreeParams) -> Optional[int]:
    """Number of parent steps from ``zp`` up to ``z``, or None if never hit."""
    _positive(z)
    x, d = zp, 0
    while x is not None:
        if x == z:
            return d
        x = parent(x, p)
        d += 1
    return None


# -- continued-fraction descendant criterion ----------------------------------

def _cfterms_holds(q: Sequence[int], pp: Sequence[int], u: int, v: int) -> bool:
    r, s = len(q) - 1, len(pp) - 1
    if s < r or (s - r) % 2:
        return False
    off = s - r
    for j in range(off):
        if pp[j] % (v if j % 2 == 0 else u):
            return False
    for i in range(2, r + 1):
        if pp[off + i] != q[i]:
            return False
    if q[0] != 0:
        d = pp[off] - q[0]
        if d < 0 or d % v:
            return False
        if r >= 1 and pp[off + 1] != q[1]:
            return False
    else:
        if pp[off] % v:
            return False
        d = pp[off + 1] - q[1]
        if d < 0 or d % u:
            return False
    return True


def _cfdepth(q: Sequence[int], pp: Sequence[int], u: int, v: int) -> Fraction:
    r, s = len(q) - 1, len(pp) - 1
    off = s - r
    even = sum(pp[j] for j in range(0, off, 2))
    odd = sum(pp[j] for j in range(1, off, 2))
    for i in range(r + 1):
        if i % 2 == 0:
            even += pp[off + i] - q[i]
        else:
            odd += pp[off + i] - q[i]
    return Fraction(even, v) + Fraction(odd, u)


def matching_representations(z: Fraction, zp: Fraction, p: TreeParams) -> list[tuple]:
    """Representation pairs ``(cf(z), cf(zp))`` satisfying the descendant conditions."""
    _positive(z)
    _positive(zp)
    return [(q, pp) for q in representations(z) for pp in representations(zp)
            if _cfterms_holds(q, pp, p.u, p.v)]


def is_descendant(z: Fraction, zp: Fraction, p: TreeParams) -> bool:
    """True iff ``zp`` lies in the tree rooted at ``z`` (``zp == z`` included)."""
    return bool(matching_representations(z, zp, p))


def depth_from_cf(z: Fraction, zp: Fraction, p: TreeParams) -> int:
    """Depth of ``zp`` below ``z`` read off the continued fractions."""
    pairs = matching_representations(z, zp, p)
    if not pairs:
        raise ValueError(f"{zp} is not a descendant of {z} for (u,v)=({p.u},{p.v})")
    depths = {_cfdepth(q, pp, p.u, p.v) for q, pp in pairs}
    if len(depths) != 1:
        raise AssertionError(f"representation pairs disagree on depth: {sorted(depths)}")
    n = depths.pop()
    if n.denominator != 1:
        raise AssertionError(f"non-integral depth {n}")
    return int(n)


__all__ = [
    "TreeParams", "children", "children_cf", "parent", "locate", "vertex_at_path",
    "is_descendant", "depth_from_cf", "is_orphan", "ancestor_distance",
    "matching_representations",
]
