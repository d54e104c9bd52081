"""Experiments on mean row values.

The mean of row ``n`` approaches a limit just below ``v + log(2)/u``.  The
routines here tabulate the means, certify their position relative to that
constant, and check the structural identities the limit argument rests on.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .contfrac import format_cf, cf_encode
from .rational import DEFAULT_PRECISION, Enclosure, rat_str
from .rows import (Mode, as_mode, cf_length_counts, mean_series,
                   predicted_cf_length_counts, row_iter, row_stats,
                   symmetric_row_check)
from .tree import TreeParams, is_orphan, locate, vertex_at_path

DEFAULT_GRID = (
    TreeParams(1, 2), TreeParams(2, 1), TreeParams(2, 2),
    TreeParams(1, 3), TreeParams(3, 1), TreeParams(3, 2),
)
PARTITION_GRID = (TreeParams(1, 1), TreeParams(1, 2), TreeParams(2, 1), TreeParams(2, 3))


# -- the limiting constant ----------------------------------------------------

def _log2_bounds(bits: int) -> tuple[Fraction, Fraction]:
    # log 2 = sum_{k>=1} 1/(k 2^k); the tail after K terms is below 1/((K+1) 2^K)
    K = bits + 8
    s = sum(Fraction(1, k << k) for k in range(1, K + 1))
    return s, s + Fraction(1, (K + 1) << K)


def limit_estimate(p: TreeParams, digits: int = 50) -> Enclosure:
    """Certified enclosure of ``v + log(2)/u`` good to ``digits`` significant digits.

    ``.lo`` is the downward-rounded value to use in strict upper-bound tests.
    """
    bits = math.ceil((digits + 2) * math.log2(10)) + 8
    lo, hi = _log2_bounds(bits + 4)
    return Enclosure.from_bounds(p.v + lo / p.u, p.v + hi / p.u, bits)


def heuristic_partial_sums(p: TreeParams, K: int) -> Fraction:
    """``(v/4) sum_{k=0}^K (k+1)/2^k + (1/u) sum_{k=1}^K 1/(k 2^k)``, exactly."""
    if K < 1:
        raise ValueError("K must be >= 1")
    first = sum(Fraction(k + 1, 1 << k) for k in range(K + 1))
    second = sum(Fraction(1, k << k) for k in range(1, K + 1))
    return Fraction(p.v, 4) * first + second / p.u


# -- convergence ----------------------------------------------------------------

def _as_enclosure(x, precision: int) -> Enclosure:
    if isinstance(x, Enclosure):
        return x
    return Enclosure.from_bounds(x, x, precision)


@dataclass
class ConvergenceReport:
    params: TreeParams
    root: Fraction
    mode: Mode
    rows: list = field(default_factory=list)

    @property
    def means(self) -> list:
        return [r["A"] for r in self.rows]

    def to_json(self) -> dict:
        out = []
        for r in self.rows:
            A = r["A"]
            row = {"n": r["n"]}
            if isinstance(A, Enclosure):
                enc = A.to_json()
                row["A_lo"], row["A_hi"] = enc["lo"], enc["hi"]
            else:
                row["A"] = rat_str(A)
            gap = r["gap"].to_json()
            row["gap_lo"], row["gap_hi"] = gap["lo"], gap["hi"]
            out.append(row)
        return {
            "u": self.params.u, "v": self.params.v, "root": rat_str(self.root),
            "mode": self.mode.kind, "precision_bits": self.mode.precision,
            "rows": out,
        }

    def csv_rows(self) -> list[dict]:
        rows = []
        for r in self.to_json()["rows"]:
            A_lo = r.get("A_lo", r.get("A"))
            A_hi = r.get("A_hi", r.get("A"))
            rows.append({"n": r["n"], "A_lo": A_lo, "A_hi": A_hi,
                         "gap_lo": r["gap_lo"], "gap_hi": r["gap_hi"]})
        return rows


def convergence_report(root: Fraction, p: TreeParams, n_max: int, mode=None,
                       workers: int = 1) -> ConvergenceReport:
    mode = as_mode(mode)
    limit = limit_estimate(p)
    report = ConvergenceReport(p, Fraction(root), mode)
    for n, (_, A) in enumerate(mean_series(root, n_max, p, mode, workers)):
        gap = limit - _as_enclosure(A, max(mode.precision, limit.precision))
        report.rows.append({"n": n, "A": A, "gap": gap})
    return report


def monotonicity_check(p: TreeParams, n_max: int, workers: int = 1) -> dict:
    """``{root: S(n+1) > 2 S(n) for all n < n_max}`` for the roots ``1/u`` and ``v``, exactly."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    out = {}
    for root in (Fraction(1, p.u), Fraction(p.v)):
        sums = [s for s, _ in mean_series(root, n_max, p, "exact", workers)]
        out[root] = all(b > 2 * a for a, b in zip(sums, sums[1:]))
    return out


@dataclass
class GapTable:
    rows: list
    violations: list

    @property
    def ok(self) -> bool:
        return not self.violations

    def csv_rows(self) -> list[dict]:
        out = []
        for r in self.rows:
            gap = r["gap"].to_json()
            out.append({"u": r["u"], "v": r["v"], "gap_lo": gap["lo"], "gap_hi": gap["hi"],
                        "normalized": f"{r['normalized']:.12g}"})
        return out


def mean_gap_scaling(grid: Sequence[TreeParams], root_rule: str = "v", n: int = 18,
                     mode="enclosure", workers: int = 1) -> GapTable:
    """Gap ``v + log(2)/u - A(n)`` per grid entry, with its ``u**2 * v`` rescaling.

    Violations list entries whose gap is not certifiably positive, and
    consecutive entries along a chain (fixed v, growing u, or fixed u,
    growing v) whose gap is not certifiably non-increasing.
    """
    if root_rule not in ("1/u", "v"):
        raise ValueError("root_rule must be '1/u' or 'v'")
    rows = []
    for p in grid:
        if p.u * p.v <= 1:
            raise ValueError(f"(u,v)=({p.u},{p.v}) needs uv > 1")
        root = Fraction(1, p.u) if root_rule == "1/u" else Fraction(p.v)
        A = mean_series(root, n, p, mode, workers)[n][1]
        limit = limit_estimate(p)
        gap = limit - _as_enclosure(A, limit.precision)
        mid = (gap.lo + gap.hi) / 2
        rows.append({"u": p.u, "v": p.v, "gap": gap,
                     "normalized": float(mid * p.u * p.u * p.v)})
    violations = [f"gap not positive at (u,v)=({r['u']},{r['v']})"
                  for r in rows if not r["gap"].lo > 0]
    by_key = {(r["u"], r["v"]): r for r in rows}
    for (u, v), r in by_key.items():
        for nxt in ((u + 1, v), (u, v + 1)):
            s = by_key.get(nxt)
            if s is not None and s["gap"].hi > r["gap"].lo:
                violations.append(f"gap increases from ({u},{v}) to {nxt}")
    return GapTable(rows, violations)


@dataclass
class DecayReport:
    z1: Fraction
    z2: Fraction
    params: TreeParams
    diffs: list
    ratio: Optional[float]

    def csv_rows(self) -> list[dict]:
        return [{"n": n, "diff": rat_str(d), "diff_float": f"{float(d):.12e}"}
                for n, d in enumerate(self.diffs)]


def _log(x: Fraction) -> float:
    return math.log(x.numerator) - math.log(x.denominator)


def fit_ratio(diffs: Sequence[Fraction], window: int = 6) -> Optional[float]:
    """Geometric rate from a least-squares line through ``log|diff|`` on the last rows."""
    tail = list(enumerate(diffs))[-window:]
    pts = [(n, _log(abs(d))) for n, d in tail if d != 0]
    if len(pts) < 2:
        return None
    ns, ys = np.array(pts).T
    slope = np.polyfit(ns, ys, 1)[0]
    return float(np.exp(slope))


def mean_difference_decay(z1: Fraction, z2: Fraction, p: TreeParams, n_max: int,
                          window: int = 6, workers: int = 1) -> DecayReport:
    """Exact ``|A(z1; n) - A(z2; n)|`` for ``n <= n_max`` and the fitted decay ratio."""
    for z in (z1, z2):
        if not is_orphan(z, p):
            raise ValueError(f"{z} is not in [1/u, v] for (u,v)=({p.u},{p.v})")
    a = mean_series(z1, n_max, p, "exact", workers)
    b = mean_series(z2, n_max, p, "exact", workers)
    diffs = [abs(x[1] - y[1]) for x, y in zip(a, b)]
    return DecayReport(Fraction(z1), Fraction(z2), p, diffs, fit_ratio(diffs, window))


# -- identity checks ------------------------------------------------------------

def closed_form_11(n: int) -> Fraction:
    return Fraction(3 * (1 << n) - 1, 2)


def closed_form_check_11_at(n: int, workers: int = 1) -> bool:
    s = row_stats(Fraction(1), n, TreeParams(1, 1), "exact", workers).sum
    return s == closed_form_11(n)


def closed_form_check_11(n_max: int, workers: int = 1) -> bool:
    """Row sums of the classical tree against ``3 * 2**(n-1) - 1/2``."""
    return all(closed_form_check_11_at(n, workers) for n in range(n_max + 1))


def symmetry_check(n_max: int) -> list[int]:
    """Depths ``n <= n_max`` whose classical row is not mirror-symmetric."""
    return [n for n in range(n_max + 1) if not symmetric_row_check(n)]


def mcount_check(p: TreeParams, roots: Sequence[Fraction], n_max: int,
                 variant: str = "corrected") -> list[tuple]:
    """``(root, n, predicted, observed)`` for every mismatching row."""
    bad = []
    for z in roots:
        for n in range(n_max + 1):
            pred = predicted_cf_length_counts(z, n, p, variant)
            seen = cf_length_counts(z, n, p)
            if pred != seen:
                bad.append((z, n, pred, seen))
    return bad


def int_part_check(root: Fraction, p: TreeParams, n_max: int) -> list[int]:
    """Depths where the integer-part sum differs from ``(2**n - 1) v + floor(root)``."""
    base = root.numerator // root.denominator
    return [n for n in range(n_max + 1)
            if row_stats(root, n, p).int_part_sum != ((1 << n) - 1) * p.v + base]


@dataclass
class PartitionReport:
    params: TreeParams
    checked: int
    roots: set
    failures: list

    @property
    def ok(self) -> bool:
        return not self.failures


def partition_check(p: TreeParams, max_den: int) -> PartitionReport:
    """Locate every reduced ``a/b`` with ``a, b <= max_den`` and check the round trip."""
    if max_den < 1:
        raise ValueError("max_den must be >= 1")
    failures, roots, checked = [], set(), 0
    lo, hi = Fraction(1, p.u), Fraction(p.v)
    for a in range(1, max_den + 1):
        for b in range(1, max_den + 1):
            if math.gcd(a, b) != 1:
                continue
            q = Fraction(a, b)
            checked += 1
            root, depth, path = locate(q, p)
            roots.add(root)
            if not lo <= root <= hi:
                failures.append(f"{rat_str(q)}: root {rat_str(root)} outside [1/u, v]")
            if vertex_at_path(root, path, p) != q or len(path) != depth:
                failures.append(f"{rat_str(q)}: path {path!r} does not lead back")
            if is_orphan(q, p) != (depth == 0):
                failures.append(f"{rat_str(q)}: orphan status disagrees with depth {depth}")
    return PartitionReport(p, checked, roots, failures)


def row_records(root: Fraction, n: int, p: TreeParams, limit: Optional[int] = None):
    """Per-vertex records ``index, value, cf, int_part, cf_length`` for a row."""
    for i, y in enumerate(row_iter(root, n, p)):
        if limit is not None and i >= limit:
            return
        cf = cf_encode(y)
        yield {"index": i, "value": rat_str(y), "cf": format_cf(cf),
               "int_part": y.numerator // y.denominator, "cf_length": len(cf) - 1}


__all__ = [
    "DEFAULT_GRID", "PARTITION_GRID", "DEFAULT_PRECISION",
    "limit_estimate", "heuristic_partial_sums", "convergence_report",
    "monotonicity_check", "mean_gap_scaling", "mean_difference_decay",
    "closed_form_check_11", "partition_check", "symmetry_check", "mcount_check",
    "int_part_check", "row_records", "fit_ratio",
]
