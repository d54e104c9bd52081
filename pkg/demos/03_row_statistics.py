"""
Row sums, integer parts and length histograms
=============================================
"""

from fractions import Fraction

from cwforest import (Mode, TreeParams, cf_length_counts, predicted_cf_length_counts,
                      row_stats)

classic = TreeParams(1, 1)
for n in range(6):
    st = row_stats(Fraction(1), n, classic)
    print(f"n={n}: S={st.sum}, A={st.mean}, integer parts {st.int_part_sum}")

# exact sums for general (u,v) grow quickly; enclosures stay cheap
p = TreeParams(1, 2)
st = row_stats(Fraction(2), 18, p, Mode("enclosure", 96), workers=2)
print("A(18) for (u,v)=(1,2), root 2:", st.mean)

# lengths of continued fractions across a row follow binomial counts
for root in (Fraction(1), Fraction(3), Fraction(2, 5)):
    seen = cf_length_counts(root, 6, classic)
    pred = predicted_cf_length_counts(root, 6, classic, "corrected")
    literal = predicted_cf_length_counts(root, 6, classic, "paper_literal")
    print(f"root {root}: observed {seen}")
    print(f"   corrected {pred} / odd-parity form {literal}")
