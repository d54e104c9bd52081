"""
Continued fractions along the tree
==================================

Left and right children act on the continued fraction directly, and the
expansion of a vertex encodes both its ancestry and its depth.
"""

from fractions import Fraction

from cwforest import (TreeParams, cf_compare, cf_decode, cf_encode, cf_long_form,
                      cf_prefix_bound, children_cf, depth_from_cf, is_descendant)

x = Fraction(3, 5)
short = cf_encode(x)
long = cf_long_form(short)
print(f"{x} = {list(short)} = {list(long)}")
assert cf_decode(short) == cf_decode(long) == x

# children without leaving coefficient space
p = TreeParams(2, 1)
print("children of [1,2] for (u,v)=(2,1):", children_cf((1, 2), p))

# ordering read off the first differing coefficient
print("compare [0,2] with [0,3]:", cf_compare((0, 2), (0, 3)))

# the shared prefix bounds the distance
a, b = (0, 2, 1, 2), (0, 2, 1, 4)
print(f"|{cf_decode(a)} - {cf_decode(b)}| = {abs(cf_decode(a) - cf_decode(b))}"
      f" <= {cf_prefix_bound(a, b)}")

# 3/5 sits at depth 3 below 1 in the classical tree; the short form alone
# would not reveal that, the long form [0,1,1,1,1] does.
classic = TreeParams(1, 1)
print("3/5 below 1:", is_descendant(Fraction(1), x, classic),
      "at depth", depth_from_cf(Fraction(1), x, classic))
