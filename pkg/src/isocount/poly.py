"""Dense univariate polynomials as coefficient lists, constant term first.

Coefficients may be ``int`` or ``Fraction``.  The zero polynomial is ``[]``.
"""

from fractions import Fraction
from functools import reduce
from math import gcd


def trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p):
    return len(trim(p)) - 1


def add(p, q):
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def sub(p, q):
    return add(p, [-c for c in q])


def scale(p, c):
    return trim([c * x for x in p])


def mul(p, q):
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return trim(out)


def power(p, k):
    out = [1]
    base = list(p)
    while k:
        if k & 1:
            out = mul(out, base)
        k >>= 1
        if k:
            base = mul(base, base)
    return out


def prod(polys):
    return reduce(mul, polys, [1])


def evaluate(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def eval_homogeneous(p, num, den, deg=None):
    """Return ``den**deg * p(num/den)`` exactly, with ``deg`` defaulting to deg p."""
    if deg is None:
        deg = len(p) - 1
    acc = 0
    npow = 1
    for i, c in enumerate(p):
        if c:
            acc += c * npow * den ** (deg - i)
        npow *= num
    return acc


def derivative(p):
    return trim([i * p[i] for i in range(1, len(p))])


def shift(p, a):
    """Coefficients of ``p(x + a)``."""
    out = []
    for c in reversed(p):
        # out = out * (x + a) + c
        nxt = [0] * (len(out) + 1)
        for i, v in enumerate(out):
            nxt[i + 1] += v
            nxt[i] += a * v
        nxt[0] += c
        out = nxt
    return trim(out)


def divmod_poly(p, q):
    p = [Fraction(c) for c in trim(p)]
    q = trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    lead = Fraction(q[-1])
    quot = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    while len(p) >= len(q) and p:
        k = len(p) - len(q)
        c = p[-1] / lead
        quot[k] = c
        for i, b in enumerate(q):
            p[i + k] -= c * b
        p = trim(p)
    return trim(quot), p


def content(p):
    return reduce(gcd, (int(c) for c in p), 0)


def primitive(p):
    """Scale a rational polynomial to a primitive integer one with positive lead."""
    p = trim(p)
    if not p:
        return []
    den = reduce(lambda a, b: a * b // gcd(a, b), (Fraction(c).denominator for c in p), 1)
    ints = [int(Fraction(c) * den) for c in p]
    g = content(ints)
    if ints[-1] < 0:
        g = -g
    return [c // g for c in ints]


def poly_gcd(p, q):
    """Monic-free gcd over Q, returned primitive."""
    p, q = primitive(p), primitive(q)
    while q:
        _, r = divmod_poly(p, q)
        p, q = q, primitive(r)
    return primitive(p)


def exact_root(p, k):
    """Return ``q`` with ``q**k == p`` (rational coefficients), or raise ValueError."""
    p = trim(p)
    if not p:
        return []
    d = len(p) - 1
    if d % k:
        raise ValueError("degree not divisible by %d" % k)
    lead = Fraction(p[-1])
    lr = _rational_root_of(lead, k)
    m = d // k
    # reversed series: p(x) = x^d * P(1/x), so q is found top coefficient down
    P = [Fraction(c) for c in reversed(p)]
    Q = [lr]
    for i in range(1, m + 1):
        # coefficient i of Q^k equals P[i]; unknown Q[i] enters linearly as k*lr^(k-1)*Q[i]
        trial = Q + [Fraction(0)]
        ci = _series_power_coeff(trial, k, i)
        Q.append((P[i] - ci) / (k * lr ** (k - 1)))
    q = trim(list(reversed(Q)))
    if power(q, k) != [Fraction(c) for c in p]:
        raise ValueError("not a perfect %d-th power" % k)
    return q


def _series_power_coeff(s, k, i):
    acc = [Fraction(1)]
    for _ in range(k):
        acc = mul(acc, s)[: i + 1]
        acc = acc + [Fraction(0)] * (i + 1 - len(acc))
    return acc[i]


def _rational_root_of(x, k):
    x = Fraction(x)
    neg = x < 0
    if neg and k % 2 == 0:
        raise ValueError("no real even root of a negative number")
    num = _int_root(abs(x.numerator), k)
    den = _int_root(x.denominator, k)
    r = Fraction(num, den)
    return -r if neg else r


def _int_root(n, k):
    r = round(n ** (1.0 / k)) if n < 2 ** 900 else int(n ** (1.0 / k))
    for c in (r - 1, r, r + 1):
        if c >= 0 and c ** k == n:
            return c
    lo, hi = 0, 1 << (n.bit_length() // k + 1)
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** k < n:
            lo = mid + 1
        else:
            hi = mid
    if lo ** k != n:
        raise ValueError("%d is not a perfect %d-th power" % (n, k))
    return lo


def resultant(p, q):
    """Resultant of two integer polynomials via the Sylvester determinant (Bareiss)."""
    p, q = trim(p), trim(q)
    m, n = len(p) - 1, len(q) - 1
    if m < 0 or n < 0:
        return 0
    size = m + n
    if size == 0:
        return 1
    rows = []
    for i in range(n):
        rows.append([0] * i + list(reversed(p)) + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + list(reversed(q)) + [0] * (size - n - 1 - i))
    return _bareiss_det(rows)


def _bareiss_det(M):
    M = [list(r) for r in M]
    n = len(M)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for r in range(k + 1, n):
                if M[r][k] != 0:
                    M[k], M[r] = M[r], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]
