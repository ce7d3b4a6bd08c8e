"""A short walk through isogeny detection on a few named curves.

    python demos/isogeny_tour.py
"""

from fractions import Fraction

from isocount.curves import Curve, j_invariant, point, scalar_mul
from isocount.families import family_curve, jmap
from isocount.isogeny import has_isogeny, has_isogeny_routeB, two_isogenous_curves

# y^2 = x^3 - 1/108 sits in the N = 3 family at t = 1/6, on the j = 0 fiber
E = Curve(*family_curve(3, 1, Fraction(1, 6)))
P = point(E, Fraction(1, 3), Fraction(1, 6))
print("family curve at t=1/6:", E, " j =", j_invariant(E), " jmap =", jmap(3, Fraction(1, 6)))
print("3 * (1/3, 1/6) =", scalar_mul(E, P, 3), "(None is the point at infinity)")

# the two detection routes agree on small curves
for A, B in [(0, 16), (-1, 0), (1, 1), (-3, 18), (-11, -14), (-27, 8694)]:
    c = Curve(A, B)
    row = ["%2d:%s" % (N, "y" if has_isogeny(c, N) else ".") for N in (2, 3, 4, 6, 8, 9, 12)]
    alt = [has_isogeny_routeB(c, N) for N in (2, 3, 4)]
    print("%-16s" % c, " ".join(row), " route B 2/3/4:", "".join("y" if v else "." for v in alt))

# y^2 = x^3 - x has full rational 2-torsion, hence three 2-isogenous neighbours
print("neighbours of y^2 = x^3 - x:", two_isogenous_curves(Curve(-1, 0)))
