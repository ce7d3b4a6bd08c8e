"""Counting engines.

census
    brute force over minimal (A, B) with max(|A|^3, B^2) < X.
param
    enumeration of twist classes of the parametrized families, then an exact
    count of squarefree twists of each class below X.
stack
    tuples of section values on the rings of modular forms of low level,
    minimal in the sense of condition (dagger).

Every engine splits its outermost variable into contiguous ranges; the
partial counts of the ranges add up to the total, whatever the split.
"""

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import poly
from .curves import Curve
from .families import FAMILY_LEVELS, check_level, family, integral_family, jmap_polys
from .isogeny import has_isogeny, prefilter_mask, rational_roots
from .numtheory import factorize, iroot, power_free_count, primes_up_to, squarefree_count


@dataclass
class CensusResult:
    N: int
    X: int
    count: int
    engine: str
    elapsed: float = 0.0


def split_range(lo, hi, k):
    """Split ``[lo, hi)`` into ``k`` contiguous, possibly empty, ranges."""
    k = max(1, int(k))
    size = hi - lo
    cuts = [lo + (size * i) // k for i in range(k + 1)]
    return [(cuts[i], cuts[i + 1]) for i in range(k)]


# -- census ---------------------------------------------------------------------

def census_range(N, X):
    amax = iroot(X - 1, 3) if X > 1 else -1
    return -amax, amax + 1


def census_partial(N, X, lo, hi):
    """Curves with A in [lo, hi)."""
    if X <= 1:
        return 0
    bmax = math.isqrt(X - 1)
    Bs = np.arange(-bmax, bmax + 1, dtype=np.int64)
    small_primes = primes_up_to(max(2, iroot(bmax, 6)))
    total = 0
    for A in range(lo, hi):
        if abs(A) ** 3 >= X:
            continue
        keep = 4 * A ** 3 + 27 * Bs * Bs != 0
        if A == 0:
            for p in small_primes:
                keep &= Bs % p ** 6 != 0
        else:
            for p, e in factorize(A):
                if e >= 4:
                    keep &= Bs % p ** 6 != 0
        cand = Bs[keep]
        cand = cand[prefilter_mask(N, A, cand)]
        for B in cand.tolist():
            if has_isogeny(Curve(A, B), N):
                total += 1
    return total


# -- parametrized families -----------------------------------------------------------

def count_j0_3(X):
    """#{b != 0 : b^2 < X, b sixth-power free}."""
    if X <= 1:
        return 0
    return 2 * power_free_count(math.isqrt(X - 1), 6)


def _vp(x, p):
    if x == 0:
        return math.inf
    x = abs(x)
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def _class_bound(f, g, t0, j, p, of, og):
    """Exact value of min(floor((vf+of)/2), floor((vg+og)/3)) on t0 + p^j Z_p, or None."""
    cf = poly.shift(f, t0) or [0]
    cg = poly.shift(g, t0) or [0]

    def info(c):
        v0 = _vp(c[0], p) if c else math.inf
        rest = min((_vp(ci, p) + i * j for i, ci in enumerate(c) if i and ci), default=math.inf)
        return (v0 if v0 < rest else None), min(v0, rest)

    exact_f, low_f = info(cf)
    exact_g, low_g = info(cg)
    if exact_f is not None and exact_g is not None:
        return min((exact_f + of) // 2, (exact_g + og) // 3)
    if exact_f is not None and (low_g + og) // 3 >= (exact_f + of) // 2:
        return (exact_f + of) // 2
    if exact_g is not None and (low_f + of) // 2 >= (exact_g + og) // 3:
        return (exact_g + og) // 3
    return None


def _tree_sup(f, g, p, of, og, starts):
    """Sup of min(floor((v f + of)/2), floor((v g + og)/3)) over the classes ``starts``."""
    best = -math.inf
    stack = list(starts)
    while stack:
        t0, j = stack.pop()
        val = _class_bound(f, g, t0, j, p, of, og)
        if val is None:
            stack.extend((t0 + i * p ** j, j + 1) for i in range(p))
        else:
            best = max(best, val)
    return best


def _excess(f, g, r, s, k, lam, p):
    """Largest possible excess v_p(e) - lam v_p(b) of the twist-reduction factor at p."""
    best = Fraction(_tree_sup(f, g, p, 0, 0, [(i, 1) for i in range(p)]))
    fr, gr = list(reversed(f)), list(reversed(g))
    beta0 = int(max(_vp(fr[0], p), _vp(gr[0], p))) + 1
    for beta in range(1, beta0 + 1):
        fb = [c * p ** (i * beta) for i, c in enumerate(fr)]
        gb = [c * p ** (i * beta) for i, c in enumerate(gr)]
        val = _tree_sup(fb, gb, p, (2 * k - r) * beta, (3 * k - s) * beta,
                        [(i, 1) for i in range(1, p)])
        best = max(best, val - lam * beta)
    vf, vg = _vp(fr[0], p), _vp(gr[0], p)
    for beta in range(beta0 + 1, beta0 + 61):
        val = min(((2 * k - r) * beta + vf) // 2, ((3 * k - s) * beta + vg) // 3)
        best = max(best, val - lam * beta)
    return best


def _kappa(f, g, r, s, growth):
    """Numerical lower bound for max(|f|^3, g^2) / max(1, |t|)^growth on the real line."""
    fa = np.array(f[::-1], dtype=float)
    ga = np.array(g[::-1], dtype=float)
    fra = np.array(f, dtype=float)
    gra = np.array(g, dtype=float)

    def inner(t):
        return np.maximum(np.abs(np.polyval(fa, t)) ** 3, np.polyval(ga, t) ** 2)

    def outer(tau):
        a = np.abs(np.polyval(fra, tau)) ** 3 * np.abs(tau) ** (growth - 3 * r)
        b = np.polyval(gra, tau) ** 2 * np.abs(tau) ** (growth - 2 * s)
        return np.maximum(a, b)

    best = math.inf
    for fn in (inner, outer):
        grid = np.linspace(-1.0, 1.0, 200001)
        vals = fn(grid)
        i = int(np.argmin(vals))
        lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, grid.size - 1)]
        for _ in range(6):
            fine = np.linspace(lo, hi, 2001)
            fv = fn(fine)
            i = int(np.argmin(fv))
            lo, hi = fine[max(i - 1, 0)], fine[min(i + 1, fine.size - 1)]
        best = min(best, float(vals.min()), float(fv.min()))
    return 0.5 * best


class ParamPlan:
    """Integral family data and the enumeration box for one level."""

    def __init__(self, N):
        fam = family(N)
        self.N = N
        self.f, self.g = integral_family(N)
        self.r, self.s, self.m, self.n = fam.r, fam.s, fam.m, fam.n
        self.k = max(-(-self.r // 2), -(-self.s // 3))
        self.lam = self.k - Fraction(self.n, self.m)
        self.growth = Fraction(6 * self.n, self.m)
        res = abs(poly.resultant(self.f, self.g) * self.f[-1] * self.g[-1])
        self.excess = {}
        for p, _ in factorize(res):
            d = _excess(self.f, self.g, self.r, self.s, self.k, self.lam, p)
            if d > 0:
                self.excess[p] = d
        self.D6 = 1
        for p, d in self.excess.items():
            self.D6 *= p ** int(6 * d)
        self.kappa = _kappa(self.f, self.g, self.r, self.s, float(self.growth))
        self.jnum, self.jden = jmap_polys(N)

    def box(self, X):
        """Every twist class of height < X comes from some a/b with max(|a|, b) <= box(X)."""
        if X <= 1:
            return 0
        return int((X * self.D6 / self.kappa) ** (1.0 / float(self.growth))) + 1

    def twist_class(self, a, b):
        """Twist-reduced (A1, B1) with B1 >= 0 at t = a/b, or None at a degenerate fiber."""
        F = poly.eval_homogeneous(self.f, a, b, 2 * self.k)
        G = poly.eval_homogeneous(self.g, a, b, 3 * self.k)
        if 4 * F ** 3 + 27 * G ** 2 == 0:
            return None
        e = 1
        h = math.gcd(F, G)
        if h > 1:
            for p, _ in factorize(h):
                while F % (e * p) ** 2 == 0 and G % (e * p) ** 3 == 0:
                    e *= p
        A1, B1 = F // e ** 2, G // e ** 3
        if B1 < 0:
            B1 = -B1
        return A1, B1

    def fiber(self, A1, B1):
        """Rational t with j_N(t) = j(A1, B1)."""
        a3 = 4 * A1 ** 3
        jn, jd = 1728 * a3, a3 + 27 * B1 * B1
        F = poly.sub(poly.scale(self.jnum, jd), poly.scale(self.jden, jn))
        return rational_roots(F)


def _t_key(t):
    return (max(abs(t.numerator), t.denominator), t.denominator, t.numerator)


def param_range(N, X):
    return 1, param_plan(N).box(X) + 1


@lru_cache(maxsize=None)
def param_plan(N):
    check_level(N, FAMILY_LEVELS)
    return ParamPlan(N)


def param_partial(N, X, lo, hi):
    """Twisted family curves whose class is owned by some t = a/b with b in [lo, hi)."""
    if X <= 1:
        return 0
    plan = param_plan(N)
    H = plan.box(X)
    total = 0
    for b in range(max(lo, 1), min(hi, H + 1)):
        for a in range(-H, H + 1):
            if math.gcd(a, b) != 1:
                continue
            cls = plan.twist_class(a, b)
            if cls is None:
                continue
            A1, B1 = cls
            if N == 3 and A1 == 0:
                continue
            ht1 = max(abs(A1) ** 3, B1 * B1)
            if ht1 >= X:
                continue
            t = Fraction(a, b)
            key = _t_key(t)
            owned = True
            for t2 in plan.fiber(A1, B1):
                if _t_key(t2) < key and plan.twist_class(t2.numerator, t2.denominator) == cls:
                    owned = False
                    break
            if not owned:
                continue
            dmax = iroot((X - 1) // ht1, 6)
            total += (2 if B1 else 1) * squarefree_count(dmax)
    return total


def param_extra(N, X):
    return count_j0_3(X) if N == 3 else 0


# -- stack counts ------------------------------------------------------------------

_PAIR_POWERS = {2: (6, 3), 4: (6, 6)}
_TRIPLE_POWERS = {3: (6, 3, 2), 6: (6, 6, 6), 8: (6, 6, 6), 9: (6, 6, 6)}
DAGGER_N = 12


def _bound(X, q):
    """Largest x >= 0 with x^q < X, or -1 if none."""
    if X <= 0:
        return -1
    return iroot(X - 1, q)


def _free_mask(vals, primes, thresholds):
    """Mask of entries not divisible by p^thr for any (p, thr)."""
    keep = np.ones(vals.shape, dtype=bool)
    for p, thr in zip(primes, thresholds):
        keep &= vals % p ** thr != 0
    return keep


def _need(q):
    # smallest v with q v >= 12
    return -(-DAGGER_N // q)


def stack_pairs_range(N, X):
    pa, _ = _PAIR_POWERS[N]
    amax = _bound(X, pa)
    return -amax, amax + 1


def stack_pairs_partial(N, X, lo, hi):
    pa, pb = _PAIR_POWERS[N]
    bmax = _bound(X, pb)
    if bmax < 0:
        return 0
    bs = np.arange(-bmax, bmax + 1, dtype=np.int64)
    total = 0
    amax = _bound(X, pa)
    for a in range(max(lo, -amax), min(hi, amax + 1)):
        if a == 0:
            ps = primes_up_to(max(2, iroot(bmax, _need(pb))))
            keep = _free_mask(bs, ps, [_need(pb)] * len(ps)) & (bs != 0)
        else:
            ps = [p for p, e in factorize(a) if pa * e >= DAGGER_N]
            keep = _free_mask(bs, ps, [_need(pb)] * len(ps))
        total += int(keep.sum())
    return total


def stack_triples_range(N, X):
    pa = _TRIPLE_POWERS[N][0]
    amax = _bound(X, pa)
    return -amax, amax + 1


def stack_triples_partial(N, X, lo, hi):
    """Triples with b^2 = ac: c = b^2 / a once a != 0, and b = 0 when a = 0."""
    pa, pb, pc = _TRIPLE_POWERS[N]
    amax, bmax, cmax = _bound(X, pa), _bound(X, pb), _bound(X, pc)
    if min(amax, bmax, cmax) < 0:
        return 0
    total = 0
    for a in range(max(lo, -amax), min(hi, amax + 1)):
        if a == 0:
            ps = primes_up_to(max(2, iroot(cmax, _need(pc))))
            cs = np.arange(1, cmax + 1, dtype=np.int64)
            total += 2 * int(_free_mask(cs, ps, [_need(pc)] * len(ps)).sum())
            continue
        fa = factorize(a)
        step = 1
        for p, e in fa:
            step *= p ** (-(-e // 2))
        ks = np.arange(-(bmax // step), bmax // step + 1, dtype=np.int64)
        bs = ks * step
        cs = (bs * bs) // a
        keep = np.abs(cs) <= cmax
        for p, e in fa:
            if pa * e >= DAGGER_N:
                bad = (bs % p ** _need(pb) == 0) & (cs % p ** _need(pc) == 0)
                keep &= ~bad
        total += int(keep.sum())
    return total


# -- the quadric of level 5 ---------------------------------------------------------------

def _gaussian_prime(p):
    """(x, y) with x^2 + y^2 = p for a prime p = 1 mod 4."""
    # a square root of -1 from a quadratic non-residue
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    r = pow(z, (p - 1) // 4, p)
    a, b = p, r
    while b * b > p:
        a, b = b, a % b
    return b, math.isqrt(p - b * b)


def _gmul(u, v):
    return (u[0] * v[0] - u[1] * v[1], u[0] * v[1] + u[1] * v[0])


def _gpow(u, k):
    out = (1, 0)
    for _ in range(k):
        out = _gmul(out, u)
    return out


def two_square_reps(n_factors):
    """All (U, V) with U^2 + V^2 = n, given the factorization of n (n must be a sum of two squares)."""
    reps = [(1, 0)]
    for p, e in n_factors:
        if p == 2:
            reps = [_gmul(z, _gpow((1, 1), e)) for z in reps]
        elif p % 4 == 3:
            if e % 2:
                return []
            reps = [(z[0] * p ** (e // 2), z[1] * p ** (e // 2)) for z in reps]
        else:
            x, y = _gaussian_prime(p)
            pi, pib = (x, y), (x, -y)
            opts = [_gmul(_gpow(pi, j), _gpow(pib, e - j)) for j in range(e + 1)]
            reps = [_gmul(z, o) for z in reps for o in opts]
    units = [(1, 0), (0, 1), (-1, 0), (0, -1)]
    return [_gmul(z, u) for z in reps for u in units]


def quadric5_range(X):
    amax = _bound(X, 6)
    return 1, amax + 1


def quadric5_partial(X, lo, hi):
    """Solutions with |a| in [lo, hi), a != 0; negative a doubles the count."""
    amax, bcmax = _bound(X, 6), _bound(X, 3)
    total = 0
    for a in range(max(lo, 1), min(hi, amax + 1)):
        fa = factorize(a)
        a2 = a * a
        sq = [p for p, e in fa if e >= 2]
        for U, V in two_square_reps([(p, 4 * e) for p, e in fa]):
            if (V + a2) % 8 or (U + V + a2) % 4:
                continue
            c = (V + a2) // 8
            b = (U + V + a2) // 4
            if abs(b) > bcmax or abs(c) > bcmax:
                continue
            if any(_vp(b, p) >= 4 and _vp(c, p) >= 4 for p in sq):
                continue
            total += 2
    return total


def count_quadric5_naive(X):
    """Triple loop over the box (test oracle)."""
    from .numtheory import is_dagger_minimal
    amax, bcmax = _bound(X, 6), _bound(X, 3)
    total = 0
    for a in range(-amax, amax + 1):
        for b in range(-bcmax, bcmax + 1):
            for c in range(-bcmax, bcmax + 1):
                if (a, b, c) == (0, 0, 0):
                    continue
                if b * b - a * a * c - 4 * b * c + 8 * c * c:
                    continue
                if is_dagger_minimal((a, b, c), (6, 3, 3), DAGGER_N):
                    total += 1
    return total


# -- drivers ---------------------------------------------------------------------------

ENGINES = ("census", "param", "stack", "quadric5")


def engine_range(engine, N, X):
    if engine == "census":
        check_level(N)
        return census_range(N, X)
    if engine == "param":
        return param_range(N, X)
    if engine == "stack":
        if N in _PAIR_POWERS:
            return stack_pairs_range(N, X)
        if N in _TRIPLE_POWERS:
            return stack_triples_range(N, X)
        check_level(N, tuple(_PAIR_POWERS) + tuple(_TRIPLE_POWERS))
    if engine == "quadric5":
        return quadric5_range(X)
    raise ValueError("unknown engine %r" % (engine,))


def engine_partial(engine, N, X, lo, hi):
    if engine == "census":
        return census_partial(N, X, lo, hi)
    if engine == "param":
        return param_partial(N, X, lo, hi)
    if engine == "stack":
        if N in _PAIR_POWERS:
            return stack_pairs_partial(N, X, lo, hi)
        return stack_triples_partial(N, X, lo, hi)
    if engine == "quadric5":
        return quadric5_partial(X, lo, hi)
    raise ValueError("unknown engine %r" % (engine,))


def engine_extra(engine, N, X):
    """Contribution computed outside the partitioned loop."""
    return param_extra(N, X) if engine == "param" else 0


def partitions(engine, N, X, k):
    lo, hi = engine_range(engine, N, X)
    return split_range(lo, hi, k)


def _run_part(args):
    return engine_partial(*args)


def run_engine(engine, N, X, parts=1, workers=1, done=None, on_partition=None):
    """Total count for an engine, summed over ``parts`` contiguous partitions.

    ``done`` maps partition ids to partial counts that are already known and
    are not recomputed; ``on_partition(pid, count)`` is called as each new
    partition finishes.
    """
    X = int(X)
    t0 = time.perf_counter()
    ranges = partitions(engine, N, X, parts)
    done = dict(done or {})
    todo = [(i, r) for i, r in enumerate(ranges) if i not in done]
    if workers > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = pool.map(_run_part, [(engine, N, X, lo, hi) for _, (lo, hi) in todo])
            for (i, _), c in zip(todo, results):
                done[i] = c
                if on_partition:
                    on_partition(i, c)
    else:
        for i, (lo, hi) in todo:
            c = engine_partial(engine, N, X, lo, hi)
            done[i] = c
            if on_partition:
                on_partition(i, c)
    count = sum(done[i] for i in range(len(ranges))) + engine_extra(engine, N, X)
    return CensusResult(N, X, count, engine, time.perf_counter() - t0)


def census(N, X, parts=1, workers=1):
    return run_engine("census", N, X, parts, workers)


def param_count(N, X, parts=1, workers=1):
    return run_engine("param", N, X, parts, workers)


def stack_count_pairs(N, X, parts=1, workers=1):
    if N not in _PAIR_POWERS:
        raise ValueError("pair counts cover N in {2, 4}")
    return run_engine("stack", N, X, parts, workers)


def stack_count_triples(N, X, parts=1, workers=1):
    if N not in _TRIPLE_POWERS:
        raise ValueError("triple counts cover N in {3, 6, 8, 9}")
    return run_engine("stack", N, X, parts, workers)


def count_quadric5(X, parts=1, workers=1):
    return run_engine("quadric5", 5, X, parts, workers)
