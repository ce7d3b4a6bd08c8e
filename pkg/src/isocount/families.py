"""Registry of X_0(N) j-maps and the parametrized families y^2 = x^3 + u^2 f(t) x + u^3 g(t).

Hauptmodul normalization: ``j = num(t) / den(t)`` and the cusps are the
roots of ``den`` together with ``t = oo`` whenever ``deg num > deg den``.
That holds for every level except N = 3, which uses the coordinate of the
classical family: there the cusps are t = 0 and t = 4/27 and ``t = oo`` is
the elliptic point over j = 0.  The maps were
derived from the classical eta-quotient hauptmoduln; N = 18 is obtained from
N = 6 through the cyclic cover t = s^3 - 8.  They are frozen only because
the isogeny tests (route agreement, divisibility monotonicity, chain
agreement) pass on every small curve.

Families for N != 3 come straight from the j-map.  Writing
``num = F^3`` and ``1728 den - num = c G^2`` gives coprime
``f = 3 c F`` and ``g = 2 c^2 G`` with ``j(f, g) = num / den``.  The coarse
space of the half-level curve is X_0(N) itself, so this family is the same
up to quadratic twist whichever index-2 subgroup is used (relevant for N = 8).
For N = 3 the classical family ``f = 2t - 1/3, g = t^2 - 2t/3 + 2/27`` is kept,
stored as ``(6t - 1) / 3`` and ``(27t^2 - 18t + 2) / 27``.
"""

from fractions import Fraction
from math import gcd, lcm

from . import poly
from .numtheory import factorize

LEVELS = (2, 3, 4, 5, 6, 8, 9, 12, 16, 18)
FAMILY_LEVELS = (3, 4, 6, 8, 9, 12, 16, 18)


class UnsupportedLevel(ValueError):
    pass


def _lin(c):
    # t + c
    return [c, 1]


def _p(*coeffs):
    # leading coefficient first, for readability of the table below
    return list(reversed(coeffs))


_P = poly.prod
_pow = poly.power

_JMAPS = {
    2: (_pow(_lin(16), 3), [0, 1]),
    3: (poly.scale(_pow(_p(6, -1), 3), 256), _p(27, -4, 0, 0, 0)),
    4: (_pow(_p(1, 16, 16), 3), _P([[0, 1], _lin(16)])),
    5: (_pow(_p(1, 10, 5), 3), [0, 1]),
    6: (_P([_pow(_lin(6), 3), _pow(_p(1, 18, 84, 24), 3)]),
        _P([[0, 1], _pow(_lin(8), 3), _pow(_lin(9), 2)])),
    8: (_pow(_p(1, 16, 80, 128, 16), 3),
        _P([[0, 1], _pow(_lin(4), 2), _lin(8)])),
    9: (_P([_pow(_lin(3), 3), _pow(_p(1, 9, 27, 3), 3)]),
        _P([[0, 1], _p(1, 9, 27)])),
    12: (_P([_pow(_p(1, 6, 6), 3), _pow(_p(1, 18, 126, 432, 732, 504, 24), 3)]),
         _P([[0, 1], _pow(_lin(2), 3), _pow(_lin(3), 4), _pow(_lin(4), 3), _lin(6)])),
    16: (_pow(_p(1, 16, 112, 448, 1104, 1664, 1408, 512, 16), 3),
         _P([[0, 1], _pow(_lin(2), 4), _lin(4), _p(1, 4, 8)])),
    18: (_P([_pow(_p(1, 0, 0, -2), 3), _pow(_p(1, 0, 0, -6, 0, 0, -12, 0, 0, -8), 3)]),
         _P([_pow([0, 1], 9), _lin(-2), _pow(_lin(1), 2), _pow(_p(1, -1, 1), 2), _p(1, 2, 4)])),
}

_TABLE2 = {
    3: (1, 2, 3, 2),
    4: (2, 3, 1, 1),
    6: (4, 6, 1, 2),
    8: (4, 6, 1, 2),
    9: (4, 6, 1, 2),
    12: (8, 12, 1, 4),
    16: (8, 12, 1, 4),
    18: (12, 18, 1, 6),
}


def check_level(N, levels=LEVELS):
    if N == 7:
        raise UnsupportedLevel("N=7 is unsupported: f and g share the factor t^2 + 13t + 49")
    if N not in levels:
        raise UnsupportedLevel("unsupported level N=%r" % (N,))


def jmap_polys(N):
    """``(num, den)`` integer coefficient lists, constant term first."""
    check_level(N)
    num, den = _JMAPS[N]
    return list(num), list(den)


def jmap(N, t):
    num, den = jmap_polys(N)
    t = Fraction(t)
    d = poly.evaluate(den, t)
    if d == 0:
        raise ValueError("t = %s is a cusp of X_0(%d)" % (t, N))
    return Fraction(poly.evaluate(num, t)) / d


def cusps(N):
    """Rational cusps other than infinity."""
    from .isogeny import rational_roots
    return rational_roots(jmap_polys(N)[1])


class FamilySpec:
    """Frozen family data for one level."""

    def __init__(self, N, f, g, den, r, s, m, n):
        self.N = N
        self.f = f          # integer coefficients, true f is f / den[0]
        self.g = g
        self.den = den      # (denominator of f, denominator of g)
        self.r, self.s, self.m, self.n = r, s, m, n
        self.h = (n * (m - 1)) // m
        self.w = max(Fraction(3 * self.h, s), Fraction(2 * self.h, r))
        self.jmap_num, self.jmap_den = jmap_polys(N)

    def f_at(self, t):
        return Fraction(poly.evaluate(self.f, Fraction(t))) / self.den[0]

    def g_at(self, t):
        return Fraction(poly.evaluate(self.g, Fraction(t))) / self.den[1]

    def __repr__(self):
        return "FamilySpec(N=%d, r=%d, s=%d, m=%d, n=%d)" % (self.N, self.r, self.s, self.m, self.n)


def _derive(N):
    num, den = jmap_polys(N)
    F = poly.exact_root(num, 3)
    R = poly.sub(poly.scale(den, 1728), num)
    # 1728 den - num = c G^2; taking c = lead(R) makes G monic
    c = Fraction(R[-1])
    G = poly.exact_root(poly.scale(R, 1 / c), 2)
    return _integral_pair(poly.scale(F, 3 * c), poly.scale(G, 2 * c * c))


def _integral_pair(f, g):
    """Rescale (f, g) -> (u^2 f, u^3 g) to integral, twist-reduced coefficients."""
    den = 1
    for c in f:
        den = lcm(den, Fraction(c).denominator)
    for c in g:
        den = lcm(den, Fraction(c).denominator)
    f = [int(Fraction(c) * den ** 2) for c in f]
    g = [int(Fraction(c) * den ** 3) for c in g]
    cf, cg = poly.content(f), poly.content(g)
    e = 1
    for p, _ in factorize(gcd(cf, cg)):
        while cf % (e * p) ** 2 == 0 and cg % (e * p) ** 3 == 0:
            e *= p
    return [c // e ** 2 for c in f], [c // e ** 3 for c in g]


def _build():
    out = {}
    for N in FAMILY_LEVELS:
        r, s, m, n = _TABLE2[N]
        if N == 3:
            f, g, den = [-1, 6], [2, -18, 27], (3, 27)
        else:
            f, g = _derive(N)
            den = (1, 1)
        out[N] = FamilySpec(N, f, g, den, r, s, m, n)
    return out


_REGISTRY = None


def registry():
    global _REGISTRY
    if _REGISTRY is None:
        _REGISTRY = _build()
    return _REGISTRY


def family(N):
    check_level(N, FAMILY_LEVELS)
    return registry()[N]


def table2_invariants(N):
    """``(r, s, m, n, h, w)`` for a family level."""
    fam = family(N)
    return fam.r, fam.s, fam.m, fam.n, fam.h, fam.w


def family_curve(N, u, t):
    """``(u^2 f(t), u^3 g(t))`` as rationals.

    The pair is returned for every t, including the cusps where it is
    singular (``Curve`` rejects those); only ``u = 0`` is an error.
    """
    fam = family(N)
    u, t = Fraction(u), Fraction(t)
    if u == 0:
        raise ValueError("u must be nonzero")
    return u * u * fam.f_at(t), u ** 3 * fam.g_at(t)


def integral_family(N):
    """Integral polynomials (f~, g~) whose curves are twists of the family at the same t."""
    fam = family(N)
    if fam.den == (1, 1):
        return list(fam.f), list(fam.g)
    # u = 3 clears the N = 3 denominators: 9 (6t-1)/3 and 27 (27t^2-18t+2)/27
    return poly.scale(fam.f, 3), list(fam.g)


def dump(path=None):
    """Registry text: one polynomial per line, constant term first."""
    lines = []
    for N in LEVELS:
        num, den = jmap_polys(N)
        lines.append("# N=%d jmap numerator" % N)
        lines.append(" ".join(str(c) for c in num))
        lines.append("# N=%d jmap denominator" % N)
        lines.append(" ".join(str(c) for c in den))
        if N in FAMILY_LEVELS:
            fam = family(N)
            lines.append("# N=%d f (divide by %d)" % (N, fam.den[0]))
            lines.append(" ".join(str(c) for c in fam.f))
            lines.append("# N=%d g (divide by %d)" % (N, fam.den[1]))
            lines.append(" ".join(str(c) for c in fam.g))
    text = "\n".join(lines) + "\n"
    if path is not None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return text
