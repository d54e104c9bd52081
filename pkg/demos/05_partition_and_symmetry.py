"""
The forest covers every positive rational once
==============================================
"""

from cwforest import TreeParams, partition_check, symmetric_row_check, closed_form_check_11

for p in (TreeParams(1, 1), TreeParams(1, 2), TreeParams(2, 1), TreeParams(2, 3)):
    rep = partition_check(p, 40)
    print(f"(u,v)=({p.u},{p.v}): {rep.checked} rationals, {len(rep.roots)} roots, "
          f"failures {len(rep.failures)}")

print("classical rows mirror under x -> 1/x:", all(symmetric_row_check(n) for n in range(12)))
print("S(n) = 3*2^(n-1) - 1/2 up to n=14:", closed_form_check_11(14))
