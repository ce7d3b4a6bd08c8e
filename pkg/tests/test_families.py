import random
from fractions import Fraction

import pytest

from isocount import poly
from isocount.curves import Curve, j_invariant, minimize
from isocount.families import (FAMILY_LEVELS, LEVELS, UnsupportedLevel, cusps, dump, family,
                               family_curve, integral_family, jmap, jmap_polys, table2_invariants)

# (r, s, m, n) per level
TABLE2 = {3: (1, 2, 3, 2), 4: (2, 3, 1, 1), 6: (4, 6, 1, 2), 8: (4, 6, 1, 2), 9: (4, 6, 1, 2),
          12: (8, 12, 1, 4), 16: (8, 12, 1, 4), 18: (12, 18, 1, 6)}


def cleared(A, B):
    d = A.denominator * B.denominator
    return minimize(A * d ** 4, B * d ** 6)


def test_n3_family_examples():
    assert family_curve(3, 1, Fraction(1, 6)) == (0, Fraction(-1, 108))
    assert family_curve(3, 6, Fraction(1, 6)) == (0, -2)
    assert family_curve(3, 1, 0) == (Fraction(-1, 3), Fraction(2, 27))


def test_n3_family_matches_printed_form():
    for t in (Fraction(k, 7) for k in range(-20, 21)):
        if t in (0, Fraction(4, 27)):
            continue
        A, B = family_curve(3, 1, t)
        assert A == 2 * t - Fraction(1, 3)
        assert B == t * t - Fraction(2, 3) * t + Fraction(2, 27)


def test_cusp_fibers_are_singular():
    for t in cusps(3):
        with pytest.raises(ValueError):
            Curve(*family_curve(3, 1, t))
    with pytest.raises(ValueError):
        family_curve(3, 0, 1)


def test_table2():
    assert table2_invariants(3) == (1, 2, 3, 2, 1, 2)
    r, s, m, n, h, w = table2_invariants(6)
    assert (r, s, m, n) == (4, 6, 1, 2) and h == 0
    assert table2_invariants(18)[:4] == (12, 18, 1, 6)
    for N in FAMILY_LEVELS:
        r, s, m, n, h, w = table2_invariants(N)
        assert (r, s, m, n) == TABLE2[N]
        assert max(Fraction(r, 2), Fraction(s, 3)) == Fraction(n, m)
        assert h == n * (m - 1) // m
        fam = family(N)
        assert poly.degree(fam.f) == r and poly.degree(fam.g) == s
    with pytest.raises(UnsupportedLevel):
        table2_invariants(5)
    with pytest.raises(UnsupportedLevel):
        table2_invariants(7)


def test_f_g_coprime():
    for N in FAMILY_LEVELS:
        f, g = integral_family(N)
        assert poly.degree(poly.poly_gcd(f, g)) == 0


def test_jmap_examples():
    assert jmap(3, Fraction(1, 6)) == 0
    with pytest.raises(UnsupportedLevel):
        jmap(7, 1)
    for N in LEVELS:
        for c in cusps(N):
            with pytest.raises(ValueError):
                jmap(N, c)
    assert cusps(3) == [0, Fraction(4, 27)]


@pytest.mark.parametrize("N", FAMILY_LEVELS)
def test_jmap_matches_family(N):
    rng = random.Random(N)
    done = 0
    while done < 200:
        t = Fraction(rng.randrange(-60, 61), rng.randrange(1, 30))
        A, B = family_curve(N, 1, t)
        if 4 * A ** 3 + 27 * B ** 2 == 0:
            continue
        assert j_invariant(cleared(A, B)) == jmap(N, t)
        u = Fraction(rng.randrange(1, 20), rng.randrange(1, 20))
        assert family_curve(N, u, t) == (u * u * A, u ** 3 * B)
        done += 1


def test_integral_family_is_a_twist():
    for N in FAMILY_LEVELS:
        f, g = integral_family(N)
        for t in (Fraction(2, 5), Fraction(-7, 3), Fraction(11)):
            A, B = family_curve(N, 1, t)
            A2, B2 = poly.evaluate(f, t), poly.evaluate(g, t)
            # same j, so (A2, B2) = (u^2 A, u^3 B) for u = (B2 A) / (A2 B)
            if A and B:
                u = (B2 * A) / (A2 * B)
                assert (A2, B2) == (u * u * A, u ** 3 * B)


def test_dump(tmp_path):
    path = tmp_path / "registry.txt"
    text = dump(str(path))
    assert path.read_text() == text
    lines = [l for l in text.splitlines() if not l.startswith("#")]
    assert [int(c) for c in lines[0].split()] == jmap_polys(2)[0]
    assert len(lines) == 2 * len(LEVELS) + 2 * len(FAMILY_LEVELS)
