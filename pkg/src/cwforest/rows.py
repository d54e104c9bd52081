"""Row enumeration and aggregation.

Row ``n`` of a tree has ``2**n`` vertices, far too many to materialize for
the depths of interest, so every aggregate here is a depth-first fold with
an explicit stack.  Work is split into independent subtrees below a fixed
split depth and optionally farmed out to a process pool.

Two summation modes are supported:

``"exact"``
    reduced rational sums.  Partial sums are combined pairwise (binary
    counter) using ``gmpy2.mpq`` so that operand sizes stay balanced.
``"enclosure"``
    each term ``a/b`` is floored to a fixed-point integer with ``K``
    fractional bits; the integer total is exact and therefore independent
    of the split, and the true sum lies within ``count / 2**K`` above it.
"""
from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterator, Union

from gmpy2 import mpq

from .contfrac import cf_decode, cf_length, representations
from .rational import DEFAULT_PRECISION, MIN_PRECISION, Enclosure, rat_str
from .tree import TreeParams, depth_from_cf, is_descendant

DEFAULT_DIGIT_BUDGET = 10**6

Value = Union[Fraction, Enclosure]


class DigitBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Mode:
    """Summation mode: ``exact`` or ``enclosure`` at ``precision`` bits."""

    kind: str = "exact"
    precision: int = DEFAULT_PRECISION
    digit_budget: int = DEFAULT_DIGIT_BUDGET

    def __post_init__(self):
        if self.kind not in ("exact", "enclosure"):
            raise ValueError(f"unknown mode {self.kind!r}")
        if self.precision < MIN_PRECISION:
            raise ValueError(f"precision must be >= {MIN_PRECISION} bits")

    @property
    def exact(self) -> bool:
        return self.kind == "exact"

    @property
    def budget_bits(self) -> int:
        return math.ceil(self.digit_budget * math.log2(10))


EXACT = Mode()


def as_mode(mode) -> Mode:
    if isinstance(mode, Mode):
        return mode
    if mode in (None, "exact"):
        return EXACT
    if mode == "enclosure":
        return Mode("enclosure")
    raise ValueError(f"unknown mode {mode!r}")


@dataclass(frozen=True)
class RowStats:
    n: int
    count: int
    sum: Value
    mean: Value
    int_part_sum: int
    histogram: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        def enc(x):
            return rat_str(x) if isinstance(x, Fraction) else x.to_json()
        return {
            "n": self.n,
            "count": self.count,
            "sum": enc(self.sum),
            "mean": enc(self.mean),
            "int_part_sum": self.int_part_sum,
            "histogram": {str(m): c for m, c in sorted(self.histogram.items())},
        }


# -- enumeration ---------------------------------------------------------------

def _walk(a: int, b: int, n: int, u: int, v: int) -> Iterator[tuple[int, int]]:
    if n == 0:
        yield a, b
        return
    stack = [(a, b, 0)]
    last = n - 1
    while stack:
        a, b, d = stack.pop()
        if d == last:
            yield a, u * a + b
            yield a + v * b, b
            continue
        d += 1
        stack.append((a + v * b, b, d))
        stack.append((a, u * a + b, d))


def row_iter(root: Fraction, n: int, p: TreeParams) -> Iterator[Fraction]:
    """Vertices of row ``n`` from left to right, in O(n) memory."""
    if root <= 0:
        raise ValueError("root must be positive")
    if n < 0:
        raise ValueError("depth must be nonnegative")
    for a, b in _walk(root.numerator, root.denominator, n, p.u, p.v):
        yield Fraction(a, b)


def _frontier(a: int, b: int, d: int, u: int, v: int) -> list[tuple[int, int]]:
    return list(_walk(a, b, d, u, v))


# -- exact accumulation -------------------------------------------------------

class _ExactSum:
    """Pairwise rational summation with a denominator size cap."""

    def __init__(self, budget_bits: int):
        self.budget_bits = budget_bits
        self.slots: list = []

    def add(self, x) -> None:
        lvl = 0
        slots = self.slots
        while slots and slots[-1][0] == lvl:
            x += slots.pop()[1]
            lvl += 1
        if lvl >= 6 and x.denominator.bit_length() > self.budget_bits:
            raise DigitBudgetExceeded(
                f"exact sum denominator exceeds {self.budget_bits} bits; "
                "use enclosure mode")
        slots.append((lvl, x))

    def total(self):
        s = mpq(0)
        for _, x in reversed(self.slots):
            s += x
        if s.denominator.bit_length() > self.budget_bits:
            raise DigitBudgetExceeded("exact sum exceeds the digit budget")
        return s


def _to_fraction(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


def _fixed_bits(precision: int, n: int) -> int:
    return precision + n + 8


# -- row statistics -----------------------------------------------------------

def _row_task(args):
    a, b, ell, n, u, v, exact, K, budget_bits = args
    int_sum = 0
    hist: Counter = Counter()
    acc = _ExactSum(budget_bits) if exact else None
    fixed = 0
    for a, b, ell in _walk_with_length(a, b, ell, n, u, v):
        int_sum += a // b
        hist[ell] += 1
        if exact:
            acc.add(mpq(a, b))
        else:
            fixed += (a << K) // b
    return (acc.total() if exact else fixed), int_sum, hist


def _walk_with_length(a, b, ell, n, u, v):
    # left child of x adds 2 to the length when x > 1, 1 when x == 1, else 0
    if n == 0:
        yield a, b, ell
        return
    stack = [(a, b, ell, 0)]
    last = n - 1
    while stack:
        a, b, ell, d = stack.pop()
        lell = ell if a < b else (ell + 2 if a != b else ell + 1)
        if d == last:
            yield a, u * a + b, lell
            yield a + v * b, b, ell
            continue
        d += 1
        stack.append((a + v * b, b, ell, d))
        stack.append((a, u * a + b, lell, d))


def _split_depth(n: int, workers: int) -> int:
    if workers <= 1:
        return 0
    return min(n, math.ceil(math.log2(8 * workers)))


def _run(tasks, fn, workers):
    if workers <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks, chunksize=max(1, len(tasks) // (4 * workers))))


def row_stats(root: Fraction, n: int, p: TreeParams, mode=EXACT, workers: int = 1) -> RowStats:
    """Sum, mean, integer-part sum and length histogram of row ``n``.

    Histogram keys are ``cf_length(y) - cf_length(root)``.
    """
    mode = as_mode(mode)
    if n < 0:
        raise ValueError("depth must be nonnegative")
    if workers < 1:
        raise ValueError("workers must be >= 1")
    if root <= 0:
        raise ValueError("root must be positive")
    u, v = p.u, p.v
    d = _split_depth(n, workers)
    K = _fixed_bits(mode.precision, n)
    ell0 = cf_length(root)
    tasks = []
    for a, b in _frontier(root.numerator, root.denominator, d, u, v):
        tasks.append((a, b, cf_length(Fraction(a, b)), n - d,
                      u, v, mode.exact, K, mode.budget_bits))
    parts = _run(tasks, _row_task, workers)

    int_sum = 0
    hist: Counter = Counter()
    for _, isum, h in parts:
        int_sum += isum
        hist.update(h)
    histogram = {ell - ell0: c for ell, c in sorted(hist.items())}
    count = 1 << n
    if mode.exact:
        total = mpq(0)
        for s, _, _ in parts:
            total += s
        s = _to_fraction(total)
        return RowStats(n, count, s, s / count, int_sum, histogram)
    fixed = sum(s for s, _, _ in parts)
    lo = Fraction(fixed, 1 << K)
    hi = Fraction(fixed + count, 1 << K)
    s = Enclosure.from_bounds(lo, hi, mode.precision)
    return RowStats(n, count, s, s.scale_pow2(-n), int_sum, histogram)


# -- incremental row sums -------------------------------------------------------

def _left_sums_task(args):
    """Per-depth sums of left children over a subtree, relative depths ``0..depth-1``."""
    a, b, depth, u, v, exact, K, budget_bits = args
    if exact:
        accs = [_ExactSum(budget_bits) for _ in range(depth)]
    else:
        fixed = [0] * depth
    stack = [(a, b, 0)]
    while stack:
        a, b, d = stack.pop()
        lb = u * a + b
        if exact:
            accs[d].add(mpq(a, lb))
        else:
            fixed[d] += (a << K) // lb
        d += 1
        if d < depth:
            stack.append((a + v * b, b, d))
            stack.append((a, lb, d))
    if exact:
        return [acc.total() for acc in accs]
    return fixed


def mean_series(root: Fraction, n_max: int, p: TreeParams, mode=EXACT,
                workers: int = 1) -> list[tuple[Value, Value]]:
    """``[(S(n), A(n)) for n in 0..n_max]`` built row by row.

    Each row sum is the previous one plus ``2**(n-1) * v`` plus the sum of
    the left children of the previous row.
    """
    mode = as_mode(mode)
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    if root <= 0:
        raise ValueError("root must be positive")
    u, v = p.u, p.v
    # left-child sums are needed for rows 0..n_max-1
    depth = n_max
    d = min(_split_depth(depth, workers), max(depth - 1, 0))
    K = _fixed_bits(mode.precision, depth)
    level: list = [mpq(0) if mode.exact else 0 for _ in range(depth)]

    # rows above the split depth are handled here
    for k in range(d):
        for a, b in _walk(root.numerator, root.denominator, k, u, v):
            if mode.exact:
                level[k] += mpq(a, u * a + b)
            else:
                level[k] += (a << K) // (u * a + b)
    if depth > d:
        tasks = [(a, b, depth - d, u, v, mode.exact, K, mode.budget_bits)
                 for a, b in _frontier(root.numerator, root.denominator, d, u, v)]
        for part in _run(tasks, _left_sums_task, workers):
            for t, s in enumerate(part):
                level[d + t] += s

    out: list = []
    if mode.exact:
        s = Fraction(root)
        out.append((s, s))
        for n in range(1, n_max + 1):
            s = s + (1 << (n - 1)) * v + _to_fraction(level[n - 1])
            out.append((s, s / (1 << n)))
        return out
    s = Enclosure.from_bounds(Fraction(root), Fraction(root), mode.precision)
    out.append((s, s))
    for n in range(1, n_max + 1):
        k = n - 1
        left = Enclosure.from_bounds(Fraction(level[k], 1 << K),
                                     Fraction(level[k] + (1 << k), 1 << K), mode.precision)
        s = s + left + (1 << k) * v
        out.append((s, s.scale_pow2(-n)))
    return out


# -- continued-fraction lengths ---------------------------------------------------

def cf_length_counts(root: Fraction, n: int, p: TreeParams) -> dict[int, int]:
    """Histogram of ``cf_length(y) - cf_length(root)`` over row ``n``, by brute force."""
    ell0 = cf_length(root)
    counts = Counter(cf_length(y) - ell0 for y in row_iter(root, n, p))
    return dict(sorted(counts.items()))


def predicted_cf_length_counts(root: Fraction, n: int, p: TreeParams,
                               variant: str = "corrected") -> dict[int, int]:
    """Binomial prediction of :func:`cf_length_counts`.

    ``paper_literal`` puts the mass of the roots other than 1 on odd ``m``;
    ``corrected`` puts it on even ``m``, which is what enumeration shows.
    """
    if variant not in ("paper_literal", "corrected"):
        raise ValueError(f"unknown variant {variant!r}")
    if root <= 0 or n < 0:
        raise ValueError("need root > 0 and n >= 0")
    if root == 1:
        return {m: comb(n, m) for m in range(n + 1)}
    parity = 1 if variant == "paper_literal" else 0
    shift = 0 if root > 1 else 1
    out = {}
    for m in range(n + 2):
        if m % 2 == parity:
            c = comb(n + 1, m + shift)
            if c:
                out[m] = c
    return out


# -- row bijection and symmetry ---------------------------------------------------

def samelim_bijection(y: Fraction, n: int, p: TreeParams) -> Fraction:
    """Map row ``n`` of the tree rooted at ``v`` onto row ``n`` of the tree at ``1/u``.

    ``y`` is written as ``[a0*v, a1*u, ..., ak*v]`` (last index even); if
    ``ak == 1`` the last coefficient is dropped and the one before it grows
    by ``u``, otherwise the last coefficient shrinks by ``v`` and ``u`` is
    appended.  The root ``v`` itself goes to ``1/u``.
    """
    u, v = p.u, p.v
    root = Fraction(v)
    if not is_descendant(root, y, p) or depth_from_cf(root, y, p) != n:
        raise ValueError(f"{y} is not in row {n} of the tree rooted at {v}")
    rep = next(r for r in representations(y) if (len(r) - 1) % 2 == 0)
    k = len(rep) - 1
    for i, c in enumerate(rep):
        assert c % (v if i % 2 == 0 else u) == 0, (rep, i)
    if rep[-1] == v:
        if k == 0:
            return Fraction(1, u)
        image = rep[:-2] + (rep[-2] + u,)
    else:
        image = rep[:-1] + (rep[-1] - v, u)
    return cf_decode(image)


def symmetric_row_check(n: int) -> bool:
    """Whether row ``n`` of the classical tree is its own mirror under ``x -> 1/x``."""
    row = list(_walk(1, 1, n, 1, 1))
    last = len(row) - 1
    return all(a == row[last - i][1] and b == row[last - i][0]
               for i, (a, b) in enumerate(row))
