"""Integer and rational arithmetic: factorization, valuations, power-free parts,
and the sum-of-two-squares functions B(n), B(n^4), r2(n).

Rationals are ``fractions.Fraction``; a factorization is a list of
``(prime, exponent)`` pairs sorted by prime, with the sign dropped.
"""

import math
import random
from fractions import Fraction
from functools import lru_cache

import numpy as np

SIEVE_BOUND = 10 ** 7

_spf = None
_spf_limit = 0


def _build_spf(limit):
    spf = np.zeros(limit + 1, dtype=np.int32)
    spf[1] = 1
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == 0:
            block = spf[p * p::p]
            block[block == 0] = p
    rest = np.flatnonzero(spf == 0)
    spf[rest] = rest
    spf[0] = 0
    return spf


def smallest_prime_factors(limit):
    """Smallest-prime-factor table covering ``0..limit`` (built once, grown on demand)."""
    global _spf, _spf_limit
    if _spf is None or _spf_limit < limit:
        limit = max(limit, 2 * _spf_limit, 1 << 16)
        _spf = _build_spf(limit)
        _spf_limit = limit
    return _spf


def primes_up_to(n):
    if n < 2:
        return []
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p::p] = False
    return np.flatnonzero(sieve).tolist()


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n):
    """Miller-Rabin with fixed bases; deterministic below 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n):
    if n % 2 == 0:
        return 2
    rng = random.Random(n)
    while True:
        c = rng.randrange(1, n)
        f = lambda v: (v * v + c) % n
        x = y = rng.randrange(2, n)
        d = 1
        while d == 1:
            x = f(x)
            y = f(f(y))
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d


def _factor_into(n, out):
    if n == 1:
        return
    if n <= _spf_limit or n <= SIEVE_BOUND:
        spf = smallest_prime_factors(min(max(n, 1 << 16), SIEVE_BOUND))
        while n > 1:
            p = int(spf[n])
            out[p] = out.get(p, 0) + 1
            n //= p
        return
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    if n == 1:
        return
    if n <= SIEVE_BOUND:
        _factor_into(n, out)
    elif is_prime(n):
        out[n] = out.get(n, 0) + 1
    else:
        d = _pollard_rho(n)
        _factor_into(d, out)
        _factor_into(n // d, out)


def factorize(n):
    """Prime factorization of ``|n|`` as sorted ``(p, e)`` pairs."""
    n = int(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    out = {}
    _factor_into(abs(n), out)
    return sorted(out.items())


def val_p(q, p):
    """Exponent of the prime ``p`` in the nonzero rational ``q``."""
    q = Fraction(q)
    if q == 0:
        raise ValueError("valuation of 0 is infinite")
    return _vint(q.numerator, p) - _vint(q.denominator, p)


def _vint(n, p):
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def power_free_decompose(n, k):
    """Write ``n = core * d**k`` with ``core`` k-th-power free and ``d > 0`` maximal."""
    if n == 0:
        raise ValueError("n must be nonzero")
    if k < 2:
        raise ValueError("k must be at least 2")
    d = 1
    for p, e in factorize(n):
        d *= p ** (e // k)
    return n // d ** k, d


def is_squarefree(n):
    return all(e == 1 for _, e in factorize(n))


def b_four(n):
    """B(n^4): product of 4e+1 over prime powers p^e || n with p = 1 mod 4."""
    if n < 1:
        raise ValueError("n must be positive")
    out = 1
    for p, e in factorize(n):
        if p % 4 == 1:
            out *= 4 * e + 1
    return out


def r2(n):
    """Number of ordered signed pairs (x, y) with x^2 + y^2 = n."""
    if n < 1:
        raise ValueError("n must be positive")
    b = 1
    for p, e in factorize(n):
        if p % 4 == 3 and e % 2:
            return 0
        if p % 4 == 1:
            b *= e + 1
    return 4 * b


def is_dagger_minimal(values, powers, n):
    """True when no prime p has p^n dividing every |a_i|^(p_i)."""
    if len(values) != len(powers):
        raise ValueError("values and powers differ in length")
    if any(n % q for q in powers):
        raise ValueError("every power must divide n")
    nz = [abs(int(a)) for a in values if a != 0]
    if not nz:
        raise ValueError("all-zero tuple has no gcd")
    g = 0
    for a in nz:
        g = math.gcd(g, a)
    if g == 1:
        return True
    for p, _ in factorize(g):
        if min(q * _vint(a, p) for a, q in zip(values, powers) if a != 0) >= n:
            return False
    return True


def iroot(n, k):
    """Floor of the k-th root of a nonnegative integer."""
    if n < 0:
        raise ValueError("negative radicand")
    if n < 2:
        return n
    r = 1 << (n.bit_length() // k + 1)
    while True:
        s = ((k - 1) * r + n // r ** (k - 1)) // k
        if s >= r:
            break
        r = s
    while r ** k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r


@lru_cache(maxsize=None)
def _mobius_table(limit):
    mu = np.ones(limit + 1, dtype=np.int8)
    mu[0] = 0
    for p in primes_up_to(limit):
        mu[p::p] *= -1
        mu[p * p::p * p] = 0
    return mu


def power_free_count(y, k):
    """Number of k-th-power-free integers in ``[1, y]``."""
    y = int(y)
    if y < 1:
        return 0
    r = iroot(y, k)
    mu = _mobius_table(max(r, 1))
    return sum(int(mu[d]) * (y // d ** k) for d in range(1, r + 1) if mu[d])


def squarefree_count(y):
    return power_free_count(y, 2)
