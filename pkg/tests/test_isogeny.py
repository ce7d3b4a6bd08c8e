import math
import random
from fractions import Fraction

import pytest

from isocount import poly
from isocount.curves import Curve, is_minimal_pair, j_invariant, minimize, point, scalar_mul, twist
from isocount.families import LEVELS, UnsupportedLevel, family_curve
from isocount.isogeny import (has_isogeny, has_isogeny_chain, has_isogeny_routeB, passes_prefilter,
                              rational_roots, rational_roots_naive, two_isogenous_curves)


def minimal_curves(H):
    a, b = round(H ** (1 / 3)) + 1, math.isqrt(H) + 1
    out = []
    for A in range(-a, a + 1):
        for B in range(-b, b + 1):
            if max(abs(A) ** 3, B * B) < H and 4 * A ** 3 + 27 * B * B and is_minimal_pair(A, B):
                out.append(Curve(A, B))
    return out


CURVES_1E4 = minimal_curves(10 ** 4)


# -- division polynomial oracle -------------------------------------------------------------
# For N in {2, 3, 4, 6} the only units mod N are +-1, so <P> of order N is Galois stable
# exactly when x(P) is rational.  Points of exact order N have x among the roots of the
# "new" part of the N-division polynomial.

def division_x_polys(A, B):
    """x-polynomials whose roots are the x of points of order 2, 3, 4, 6 (with extras removed)."""
    cubic = [B, A, 0, 1]
    F = poly.scale(cubic, 4)
    g3 = [-A * A, 12 * B, 6 * A, 0, 3]
    g4 = poly.scale([-8 * B * B - A ** 3, -4 * A * B, -5 * A * A, 20 * B, 5 * A, 0, 1], 2)
    g5 = poly.sub(poly.mul(poly.mul(F, F), g4), poly.power(g3, 3))
    g6_new = poly.sub(g5, poly.mul(g4, g4))
    return {2: cubic, 3: g3, 4: g4, 6: g6_new}


def oracle(c, N):
    polys = division_x_polys(c.A, c.B)
    roots = set(rational_roots_naive(polys[N]))
    if N == 6:
        roots -= set(rational_roots_naive(polys[2])) | set(rational_roots_naive(polys[3]))
    if N == 4:
        roots -= set(rational_roots_naive(polys[2]))
    return bool(roots)


def test_division_oracle_sanity():
    # y^2 = x^3 + 1 has the 6-torsion point (2, 3)
    c = Curve(0, 1)
    assert scalar_mul(c, point(c, 2, 3), 6) is None
    assert oracle(c, 6)
    assert not oracle(Curve(1, 1), 2)


# -- rational roots ---------------------------------------------------------------------------

def test_rational_roots_examples():
    assert rational_roots([-1, 0, 1]) == [-1, 1]
    assert rational_roots([-3, 2]) == [Fraction(3, 2)]
    assert rational_roots([1, 0, 1]) == []
    assert rational_roots([0, 0, 5]) == [0]
    with pytest.raises(ValueError):
        rational_roots([0, 0])


def test_rational_roots_match_divisor_oracle():
    rng = random.Random(6)
    for _ in range(400):
        roots = [Fraction(rng.randrange(-30, 31), rng.randrange(1, 8)) for _ in range(rng.randrange(0, 4))]
        p = [rng.randrange(-5, 6) or 1]
        for r in roots:
            p = poly.mul(p, [-r.numerator, r.denominator])
        extra = [rng.randrange(-20, 21) for _ in range(rng.randrange(0, 4))] + [rng.randrange(1, 4)]
        p = poly.mul(p, extra)
        if not poly.trim(p):
            continue
        assert rational_roots(p) == rational_roots_naive(p)
        assert set(roots) <= set(rational_roots(p))


def test_rational_roots_repeated_and_large():
    p = poly.mul(poly.power([-7, 3], 3), poly.power([11, 1], 2))
    assert rational_roots(p) == [-11, Fraction(7, 3)]
    big = 10 ** 30 + 57
    assert rational_roots([-big, 1]) == [big]


# -- route B ---------------------------------------------------------------------------------

def test_two_isogenous_curves():
    images = two_isogenous_curves(Curve(-1, 0))
    assert len(images) == 3
    assert two_isogenous_curves(Curve(1, 1)) == []
    c = Curve(4, 0)
    (img,) = two_isogenous_curves(c)
    # the image carries the dual isogeny back to a curve with the original j
    assert any(j_invariant(back) == j_invariant(c) for back in two_isogenous_curves(img))
    # and the pair (j, j') lies on the N = 2 modular relation through a common hauptmodul value
    assert has_isogeny(img, 2) and img.is_minimal()


def test_two_isogenous_curves_duality():
    for c in CURVES_1E4[::7]:
        for img in two_isogenous_curves(c):
            assert any(j_invariant(b) == j_invariant(c) for b in two_isogenous_curves(img))


def test_routeB_examples():
    assert has_isogeny_routeB(Curve(0, 16), 3)
    assert scalar_mul(Curve(0, 16), (0, 4), 3) is None
    assert not has_isogeny_routeB(Curve(1, 1), 2)
    # x^6 - 5x^4 - 5x^2 + 1 has no rational root, so no point of order 4 has rational x
    assert not oracle(Curve(-1, 0), 4)
    assert not has_isogeny_routeB(Curve(-1, 0), 4)
    with pytest.raises(ValueError):
        has_isogeny_routeB(Curve(1, 1), 5)


@pytest.mark.parametrize("N", [2, 3, 4, 6])
def test_division_oracle_agreement(N):
    for c in CURVES_1E4:
        assert has_isogeny(c, N) == oracle(c, N), (c, N)


def test_chain_agrees_with_oracle_for_6():
    for c in CURVES_1E4:
        assert has_isogeny_chain(c, 6) == oracle(c, 6)


# -- route A ---------------------------------------------------------------------------------

def test_has_isogeny_examples():
    assert has_isogeny(Curve(0, 16), 3)
    assert has_isogeny(Curve(0, 1), 2)
    assert has_isogeny(Curve(0, 1), 3)
    assert not has_isogeny(Curve(-1, 0), 4)


def test_has_isogeny_levels():
    with pytest.raises(UnsupportedLevel, match="t\\^2 \\+ 13t \\+ 49"):
        has_isogeny(Curve(1, 1), 7)
    with pytest.raises(UnsupportedLevel):
        has_isogeny(Curve(1, 1), 10)


def test_level5_family_image():
    # curves on the level-5 fiber j = (t^2 + 10t + 5)^3 / t
    rng = random.Random(7)
    found = 0
    for _ in range(60):
        t = Fraction(rng.randrange(-40, 41), rng.randrange(1, 6))
        if t == 0:
            continue
        j = (t * t + 10 * t + 5) ** 3 / t
        if j in (0, 1728):
            continue
        # the curve with invariant j: A = 3j(1728 - j), B = 2j(1728 - j)^2
        A, B = 3 * j * (1728 - j), 2 * j * (1728 - j) ** 2
        d = A.denominator * B.denominator
        c = minimize(A * d ** 4, B * d ** 6)
        assert j_invariant(c) == j
        assert has_isogeny(c, 5)
        found += 1
    assert found > 40


def test_family_curves_in_isogeny_locus():
    rng = random.Random(8)
    for N in (3, 4, 6, 8, 9, 12, 16, 18):
        hits = 0
        while hits < 100:
            t = Fraction(rng.randrange(-50, 51), rng.randrange(1, 20))
            u = Fraction(rng.randrange(1, 9), rng.randrange(1, 4))
            A, B = family_curve(N, u, t)
            if A == 0 or B == 0 or 4 * A ** 3 + 27 * B ** 2 == 0:
                continue
            d = A.denominator * B.denominator
            c = minimize(A * d ** 4, B * d ** 6)
            assert has_isogeny(c, N), (N, t, u)
            hits += 1


def test_twist_invariance():
    for c in CURVES_1E4:
        if c.A == 0 or c.B == 0:
            continue
        base = {N: has_isogeny(c, N) for N in LEVELS}
        for d in (2, -2, 3, -3, 5, -5):
            tw = twist(c, d)
            for N in LEVELS:
                assert has_isogeny(tw, N) == base[N]


DIVISORS = {6: (2, 3), 4: (2,), 8: (4,), 9: (3,), 12: (6, 4), 16: (8,), 18: (9, 6)}


def test_divisibility_monotone():
    for c in minimal_curves(10 ** 5):
        for N, subs in DIVISORS.items():
            if has_isogeny(c, N):
                for M in subs:
                    assert has_isogeny(c, M), (c, N, M)


def test_j0_always_has_3_isogeny():
    for B in range(-2000, 2001):
        if B and is_minimal_pair(0, B):
            assert has_isogeny(Curve(0, B), 3)


def test_prefilter_never_rejects_true_curves():
    for N in LEVELS:
        for c in CURVES_1E4:
            if N != 5 and has_isogeny_chain(c, N):
                assert passes_prefilter(c, N)
