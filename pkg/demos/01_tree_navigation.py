"""
Walking a (u,v)-Calkin-Wilf tree
================================

Children, parents and the address of a rational in the forest.
"""

from fractions import Fraction

from cwforest import TreeParams, children, locate, parent, vertex_at_path
from cwforest.rows import row_iter

# The classical tree has u = v = 1 and root 1.
classic = TreeParams(1, 1)
for n in range(4):
    print(n, " ".join(str(y) for y in row_iter(Fraction(1), n, classic)))

# Each vertex a/b has children a/(ua+b) and (a+vb)/b.
p = TreeParams(2, 3)
x = Fraction(3, 2)
left, right = children(x, p)
print(f"children of {x} in T^(2,3): {left}, {right}")
print("parents:", parent(left, p), parent(right, p))

# Every positive rational sits in exactly one tree rooted in [1/u, v].
for q in (Fraction(7, 5), Fraction(22, 7), Fraction(1, 9)):
    root, depth, path = locate(q, p)
    print(f"{q}: root {root}, depth {depth}, path {path or '(root)'}")
    assert vertex_at_path(root, path, p) == q
