"""
Mean row value against v + log 2 / u
====================================

Row means from the two extreme roots climb toward a common limit that stays
below v + log(2)/u; the shortfall shrinks as u and v grow.
"""

from fractions import Fraction

from cwforest import (TreeParams, convergence_report, heuristic_partial_sums,
                      limit_estimate, mean_difference_decay, mean_gap_scaling)
from cwforest.analysis import DEFAULT_GRID

p = TreeParams(1, 2)
print("v + log2/u =", limit_estimate(p))
print("heuristic series, K=60:", float(heuristic_partial_sums(p, 60)))

for root in (Fraction(1, p.u), Fraction(p.v)):
    rep = convergence_report(root, p, 16, "enclosure")
    print(f"root {root}")
    for row in rep.csv_rows()[::4]:
        print(f"  n={row['n']:>2}  A~{row['A_hi'][:14]}  gap~{row['gap_lo'][:10]}")

table = mean_gap_scaling(DEFAULT_GRID, "v", 16)
for row in table.csv_rows():
    print(f"(u,v)=({row['u']},{row['v']}): gap {row['gap_lo'][:10]}, gap*u^2*v {row['normalized']}")
print("chain violations:", table.violations)

decay = mean_difference_decay(Fraction(1), Fraction(2), p, 14)
print("fitted ratio of |A(1;n) - A(2;n)|:", round(decay.ratio, 4))
