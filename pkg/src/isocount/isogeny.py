"""Rational cyclic N-isogeny detection.

Route A looks for a rational non-cuspidal point on the fiber of the X_0(N)
j-map over j(E).  Route B builds the isogenies directly from 2- and 3-torsion
kernels with Velu's formulas.  The two fibers j = 0 and j = 1728 carry extra
automorphisms, so there the decision is made by following non-backtracking
chains of rational 2- and 3-isogenies (levels 2^a 3^b), which is exact.
"""

from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import poly
from .curves import Curve, minimize
from .families import LEVELS, check_level, jmap_polys
from .numtheory import primes_up_to


# -- rational roots ---------------------------------------------------------

def _lift_prime(p):
    """Smallest prime >= 5 at which every root of p mod l is simple and the lead survives."""
    dp = poly.derivative(p)
    for ell in primes_up_to(200)[2:]:
        if p[-1] % ell == 0:
            continue
        pm = [c % ell for c in p]
        dm = [c % ell for c in dp]
        roots = [r for r in range(ell) if _eval_mod(pm, r, ell) == 0]
        if all(_eval_mod(dm, r, ell) for r in roots):
            return ell, roots
    return None, None


def _eval_mod(p, x, m):
    acc = 0
    for c in reversed(p):
        acc = (acc * x + c) % m
    return acc


def _hensel(p, dp, r, ell, target):
    mod = ell
    while mod < target:
        mod = mod * mod
        inv = pow(_eval_mod(dp, r, mod), -1, mod)
        r = (r - _eval_mod(p, r, mod) * inv) % mod
    return r, mod


def rational_roots(p):
    """Distinct rational roots of a nonzero polynomial, sorted.

    Roots are found by lifting simple roots modulo a small prime l to a
    modulus beyond 2|lead * const|; every rational root a/b has b | lead and
    a | const, so ``lead * root`` is read off as a symmetric residue.
    """
    p = poly.trim(p)
    if not p:
        raise ValueError("the zero polynomial has every rational root")
    p = poly.primitive(p)
    out = []
    if p[0] == 0:
        out.append(Fraction(0))
        while p[0] == 0:
            p = p[1:]
    if len(p) > 1:
        out.extend(_nonzero_roots(p))
    return sorted(out)


def _nonzero_roots(p):
    if len(p) == 2:
        return [Fraction(-p[0], p[1])]
    ell, roots = _lift_prime(p)
    if ell is None:
        g = poly.poly_gcd(p, poly.derivative(p))
        q, _ = poly.divmod_poly(p, g)
        return _nonzero_roots(poly.primitive(q))
    lead, const = p[-1], p[0]
    target = 2 * abs(lead * const) + 1
    dp = poly.derivative(p)
    found = []
    for r in roots:
        r, mod = _hensel(p, dp, r, ell, target)
        c = (lead * r) % mod
        if c > mod // 2:
            c -= mod
        x = Fraction(c, lead)
        if c and poly.eval_homogeneous(p, x.numerator, x.denominator) == 0:
            found.append(x)
    return found


def rational_roots_naive(p):
    """Reference implementation by divisor enumeration (test oracle)."""
    from .numtheory import factorize
    p = poly.primitive(poly.trim(p))
    out = set()
    if p[0] == 0:
        out.add(Fraction(0))
        while p[0] == 0:
            p = p[1:]
    if len(p) == 1:
        return sorted(out)

    def divisors(n):
        ds = [1]
        for q, e in factorize(n):
            ds = [d * q ** k for d in ds for k in range(e + 1)]
        return ds

    for a in divisors(p[0]):
        for b in divisors(p[-1]):
            for s in (1, -1):
                if poly.eval_homogeneous(p, s * a, b) == 0:
                    out.add(Fraction(s * a, b))
    return sorted(out)


# -- Velu steps -------------------------------------------------------------

def _cubic(A, B):
    return [B, A, 0, 1]


def _psi3(A, B):
    return [-A * A, 12 * B, 6 * A, 0, 3]


def _two_steps(A, B):
    """(x0, A', B', x of the dual kernel on the image) for each rational 2-torsion point."""
    out = []
    for x0 in rational_roots(_qpoly(_cubic(A, B))):
        t = 3 * x0 * x0 + A
        out.append((x0, A - 5 * t, B - 7 * x0 * t, -2 * x0))
    return out


def _three_steps(A, B):
    """(x0, A', B', x of the dual kernel on the image) for each rational 3-kernel."""
    out = []
    psi = _psi3(A, B)
    for x0 in rational_roots(_qpoly(psi)):
        t = 6 * x0 * x0 + 2 * A
        u = 4 * (x0 ** 3 + A * x0 + B)
        w = u + x0 * t
        # the other three x-roots of psi3 all map to the dual kernel's x
        c, _ = poly.divmod_poly(psi, [-x0, 1])
        c = [Fraction(v) / 3 for v in c]
        cy = poly.shift(c, x0)
        cy = cy + [Fraction(0)] * (4 - len(cy))
        r, q, pp = cy[0], cy[1], cy[2]
        sum_x = -c[2]
        s1 = -q / r
        s2 = q * q / (r * r) - 2 * pp / r
        xstar = (sum_x + t * s1 + u * s2) / 3
        out.append((x0, A - 5 * t, B - 7 * w, xstar))
    return out


def _qpoly(p):
    return poly.primitive([Fraction(c) for c in p])


def _chain(A, B, twos, threes, avoid=None):
    if twos:
        for x0, A1, B1, dual in _two_steps(A, B):
            if avoid is not None and avoid[0] == 2 and x0 == avoid[1]:
                continue
            if _chain(A1, B1, twos - 1, threes, (2, dual)):
                return True
        return False
    if threes:
        for x0, A1, B1, dual in _three_steps(A, B):
            if avoid is not None and avoid[0] == 3 and x0 == avoid[1]:
                continue
            if _chain(A1, B1, 0, threes - 1, (3, dual)):
                return True
        return False
    return True


def _split23(N):
    a = b = 0
    while N % 2 == 0:
        N //= 2
        a += 1
    while N % 3 == 0:
        N //= 3
        b += 1
    return a, b, N


def has_isogeny_chain(c, N):
    """Exact test through non-backtracking chains of rational 2- and 3-isogenies."""
    a, b, rest = _split23(N)
    if rest != 1:
        raise ValueError("chain test needs N = 2^a 3^b, got %d" % N)
    return _chain(Fraction(c.A), Fraction(c.B), a, b)


def two_isogenous_curves(c):
    """Minimal images of the 2-isogenies with rational kernel."""
    out = []
    for _, A1, B1, _ in _two_steps(c.A, c.B):
        out.append(minimize(int(A1), int(B1)))
    return out


def has_isogeny_routeB(c, N):
    if N == 2:
        return bool(rational_roots(_cubic(c.A, c.B)))
    if N == 3:
        return bool(rational_roots(_psi3(c.A, c.B)))
    if N == 4:
        return has_isogeny_chain(c, 4)
    raise ValueError("route B covers N in {2, 3, 4}, got %r" % (N,))


# -- route A ------------------------------------------------------------------

NUM_FILTER_PRIMES = 40


@lru_cache(maxsize=None)
def image_tables(N):
    """Reductions of the j-map image on P^1(F_l), for good primes l >= 5.

    Returns a list of ``(l, table)`` where ``table`` is a boolean array of
    length l + 1 (index l stands for infinity).  A curve whose reduced
    j-invariant misses the table cannot have a rational N-isogeny.
    """
    num, den = jmap_polys(N)
    if len(num) > len(den):
        hi_lead, at_inf = num[-1], None
    elif len(num) < len(den):
        hi_lead, at_inf = den[-1], 0
    else:
        hi_lead, at_inf = num[-1], Fraction(num[-1], den[-1])
    res = poly.resultant(num, den) * hi_lead
    out = []
    for ell in primes_up_to(2000)[2:]:
        if res % ell == 0:
            continue
        table = np.zeros(ell + 1, dtype=bool)
        ts = np.arange(ell, dtype=np.int64)
        nv = _np_eval(num, ts, ell)
        dv = _np_eval(den, ts, ell)
        inf = dv == 0
        table[ell] = bool(inf.any()) or at_inf is None
        inv = _inverses(ell)
        vals = nv[~inf] * inv[dv[~inf]] % ell
        table[vals] = True
        if at_inf is not None:
            table[at_inf.numerator * pow(at_inf.denominator, -1, ell) % ell] = True
        out.append((ell, table))
        if len(out) == NUM_FILTER_PRIMES:
            break
    return out


def _np_eval(p, xs, m):
    acc = np.zeros_like(xs)
    for c in reversed(p):
        acc = (acc * xs + c % m) % m
    return acc


@lru_cache(maxsize=None)
def _inverses(ell):
    inv = np.zeros(ell, dtype=np.int64)
    for a in range(1, ell):
        inv[a] = pow(a, -1, ell)
    return inv


def prefilter_mask(N, A, Bs):
    """Boolean mask over the integer array ``Bs``: False means (A, B) has no N-isogeny."""
    Bs = np.asarray(Bs, dtype=np.int64)
    keep = np.ones(Bs.shape, dtype=bool)
    idx = np.arange(Bs.size)
    for ell, table in image_tables(N):
        if idx.size == 0:
            break
        b = Bs[idx] % ell
        a = A % ell
        a3 = a * a % ell * a % ell
        num = 6912 * a3 % ell
        d = (4 * a3 + 27 * (b * b % ell)) % ell
        jv = np.where(d == 0, ell, num * _inverses(ell)[d] % ell)
        ok = table[jv]
        if a == 0:
            ok |= b == 0
        keep[idx[~ok]] = False
        idx = idx[ok]
    return keep


def passes_prefilter(c, N):
    A, B = c.A, c.B
    for ell, table in image_tables(N):
        a, b = A % ell, B % ell
        if a == 0 and b == 0:
            continue
        a3 = 4 * a * a * a
        d = (a3 + 27 * b * b) % ell
        jv = ell if d == 0 else 1728 * a3 * pow(d, -1, ell) % ell
        if not table[jv]:
            return False
    return True


def has_isogeny(c, N):
    """True when the curve has a rational cyclic subgroup of order N."""
    check_level(N)
    if not passes_prefilter(c, N):
        return False
    A, B = c.A, c.B
    if A != 0 and B != 0:
        num, den = jmap_polys(N)
        a3 = 4 * A ** 3
        jn, jd = 1728 * a3, a3 + 27 * B * B
        # roots of den are never roots of F, so cusps are excluded automatically
        F = poly.sub(poly.scale(num, jd), poly.scale(den, jn))
        return bool(rational_roots(F))
    if N == 5:
        # X_0(5) has no rational points over j = 0 or j = 1728
        return False
    return has_isogeny_chain(c, N)


SUPPORTED_LEVELS = LEVELS
