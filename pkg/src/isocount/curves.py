"""Short Weierstrass curves y^2 = x^3 + Ax + B over Q.

Counting works with integral models; rational coefficients are accepted so
that points on models such as y^2 = x^3 - 1/108 can be checked directly.
"""

from fractions import Fraction
from math import gcd

from .numtheory import factorize


class Curve:
    """Nonsingular curve y^2 = x^3 + A x + B."""

    __slots__ = ("A", "B")

    def __init__(self, A, B):
        A, B = _coerce(A), _coerce(B)
        if 4 * A ** 3 + 27 * B ** 2 == 0:
            raise ValueError("singular curve: 4A^3 + 27B^2 = 0")
        self.A = A
        self.B = B

    def __eq__(self, other):
        return isinstance(other, Curve) and (self.A, self.B) == (other.A, other.B)

    def __hash__(self):
        return hash((self.A, self.B))

    def __repr__(self):
        return "Curve(%s, %s)" % (self.A, self.B)

    @property
    def discriminant(self):
        return -16 * (4 * self.A ** 3 + 27 * self.B ** 2)

    def is_minimal(self):
        return is_minimal_pair(self.A, self.B)

    def contains(self, P):
        if P is INFINITY:
            return True
        x, y = P
        return y * y == x ** 3 + self.A * x + self.B


INFINITY = None


def _coerce(v):
    v = Fraction(v)
    return v.numerator if v.denominator == 1 else v


def naive_height(c):
    return max(abs(c.A) ** 3, c.B ** 2)


def j_invariant(c):
    a3 = 4 * c.A ** 3
    return Fraction(1728 * a3, a3 + 27 * c.B ** 2)


def is_minimal_pair(A, B):
    """No prime p with p^4 | A and p^6 | B."""
    g = gcd(A, B)
    if g == 0:
        return False
    if g == 1:
        return True
    for p, _ in factorize(g):
        if A % p ** 4 == 0 and B % p ** 6 == 0:
            return False
    return True


def minimize(A, B):
    """Divide out the largest d with d^4 | A and d^6 | B."""
    A, B = _coerce(A), _coerce(B)
    if not (isinstance(A, int) and isinstance(B, int)):
        raise ValueError("minimize needs integral coefficients")
    c = Curve(A, B)
    g = gcd(A, B)
    if g == 1:
        return c
    d = 1
    for p, _ in factorize(g):
        while A % (d * p) ** 4 == 0 and B % (d * p) ** 6 == 0:
            d *= p
    return Curve(A // d ** 4, B // d ** 6)


def twist(c, d):
    """Quadratic twist d y^2 = x^3 + Ax + B, returned as a minimal model."""
    d = int(d)
    if d == 0:
        raise ValueError("twist parameter must be nonzero")
    return minimize(d * d * c.A, d ** 3 * c.B)


def add(c, P, Q):
    """Chord-tangent sum of two rational points."""
    if P is INFINITY:
        return Q
    if Q is INFINITY:
        return P
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        if y1 + y2 == 0:
            return INFINITY
        lam = (3 * x1 * x1 + c.A) / (2 * y1)
    else:
        lam = (y2 - y1) / (x2 - x1)
    x3 = lam * lam - x1 - x2
    return (x3, lam * (x1 - x3) - y1)


def point(c, x, y):
    """Validated rational point on ``c``."""
    P = (Fraction(x), Fraction(y))
    if not c.contains(P):
        raise ValueError("point is not on the curve")
    return P


def scalar_mul(c, P, k):
    if k < 0:
        raise ValueError("k must be nonnegative")
    if P is not INFINITY:
        P = (Fraction(P[0]), Fraction(P[1]))
        if not c.contains(P):
            raise ValueError("point is not on the curve")
    out = INFINITY
    while k:
        if k & 1:
            out = add(c, out, P)
        k >>= 1
        if k:
            P = add(c, P, P)
    return out
