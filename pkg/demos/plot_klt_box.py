"""
Worst cases of the klt inequalities
===================================

The test divisor coefficients (d1, d2) are only known to lie in a box.
Each inequality is affine in them, so its worst case sits at a corner.
"""

from fractions import Fraction

from einstein5.kahler_einstein import ke_coefficients, klt_box_check

b1, b2 = ke_coefficients(3, 5)
print("b =", b1, b2)

report = klt_box_check(5, b1, b2)
for r in report.records:
    print(f"{r.label:20s} {str(r.worst_case_value):>6s} < {r.bound}  at {r.attaining_vertex}")

###############################################################################
# Push b2 up to 1/2 and the coefficient bound is the first to go.

print(klt_box_check(5, b1, Fraction(1, 2)).failures())

# below 1/2 the number of points never matters
for points in range(5, 13):
    print(points, klt_box_check(points, Fraction(2, 5), Fraction(1, 10)).passed)
