"""Lattice-point counts with Davenport's error bound, the summatory function of
B(n^4), and log-log growth fits of the form c X^alpha (log X)^beta.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product

import numpy as np

from .numtheory import primes_up_to

# growth rates h_N(X) = X^alpha (log X)^beta
TABLE1 = {
    2: (Fraction(1, 2), 0),
    3: (Fraction(1, 2), 0),
    4: (Fraction(1, 3), 0),
    5: (Fraction(1, 6), 2),
    6: (Fraction(1, 6), 1),
    8: (Fraction(1, 6), 1),
    9: (Fraction(1, 6), 1),
    12: (Fraction(1, 6), 0),
    16: (Fraction(1, 6), 0),
    18: (Fraction(1, 6), 0),
}


# -- Davenport ----------------------------------------------------------------------

class Region:
    """Bounded region in R^n given by an exact membership predicate.

    ``h`` bounds the number of intervals cut out by any axis-parallel line
    (also on every coordinate projection), ``volume`` is its n-volume and
    ``proj_volumes[m]`` is the sum of the m-volumes of its projections onto
    the m-dimensional coordinate subspaces, with ``proj_volumes[0] = 1``.
    """

    def __init__(self, n, contains, bbox, h, volume, proj_volumes):
        if len(bbox) != n or len(proj_volumes) != n:
            raise ValueError("bounding box and projection volumes need n entries")
        for lo, hi in bbox:
            if not (math.isfinite(lo) and math.isfinite(hi)):
                raise ValueError("region must be bounded")
        if h < 1 or volume < 0:
            raise ValueError("need h >= 1 and volume >= 0")
        self.n = n
        self.contains = contains
        self.bbox = [(Fraction(lo), Fraction(hi)) for lo, hi in bbox]
        self.h = h
        self.volume = float(volume)
        self.proj_volumes = [float(v) for v in proj_volumes]

    @classmethod
    def box(cls, lows, highs):
        lows = [Fraction(v) for v in lows]
        highs = [Fraction(v) for v in highs]
        n = len(lows)
        sides = [max(hi - lo, 0) for lo, hi in zip(lows, highs)]
        empty = any(hi < lo for lo, hi in zip(lows, highs))

        def contains(x):
            return all(lo <= xi <= hi for xi, lo, hi in zip(x, lows, highs))

        vol = 0.0 if empty else float(math.prod(sides))
        proj = [1.0] + [0.0 if empty else float(sum(math.prod(c) for c in combinations(sides, m)))
                        for m in range(1, n)]
        return cls(n, contains, list(zip(lows, highs)), 1, vol, proj)

    @classmethod
    def ellipsoid(cls, center, axes):
        """Axis-aligned ellipsoid sum(((x_i - c_i) / r_i)^2) <= 1."""
        center = [Fraction(v) for v in center]
        axes = [Fraction(v) for v in axes]
        if any(r <= 0 for r in axes):
            raise ValueError("semi-axes must be positive")
        n = len(center)

        def contains(x):
            return sum(((xi - c) / r) ** 2 for xi, c, r in zip(x, center, axes)) <= 1

        rs = [float(r) for r in axes]
        vol = _ball_volume(n) * math.prod(rs)
        proj = [1.0] + [_ball_volume(m) * sum(math.prod(c) for c in combinations(rs, m))
                        for m in range(1, n)]
        bbox = [(c - r, c + r) for c, r in zip(center, axes)]
        return cls(n, contains, bbox, 1, vol, proj)


def _ball_volume(m):
    return math.pi ** (m / 2) / math.gamma(m / 2 + 1)


def davenport_bound(region):
    n, h = region.n, region.h
    return sum(h ** (n - m) * region.proj_volumes[m] for m in range(n))


def davenport_count(region):
    """(lattice points, volume, Davenport error bound), checking the bound holds."""
    ranges = [range(math.ceil(lo), math.floor(hi) + 1) for lo, hi in region.bbox]
    count = sum(1 for x in product(*ranges) if region.contains(x))
    bound = davenport_bound(region)
    if abs(count - region.volume) > bound + 1e-9:
        raise ArithmeticError("lattice count %d violates the bound %.6g around volume %.6g"
                              % (count, bound, region.volume))
    return count, region.volume, bound


# -- summatory B(n^4) --------------------------------------------------------------------

def summatory_b4(T, block=1 << 20):
    """Sum of b_four(n) for 1 <= n <= T by a segmented factor sieve."""
    T = int(T)
    if T < 1:
        raise ValueError("T must be positive")
    primes = primes_up_to(math.isqrt(T))
    total = 0
    for lo in range(1, T + 1, block):
        hi = min(lo + block, T + 1)
        rem = np.arange(lo, hi, dtype=np.int64)
        val = np.ones(hi - lo, dtype=np.int64)
        for p in primes:
            start = (-lo) % p
            idx = np.arange(start, hi - lo, p)
            if idx.size == 0:
                continue
            e = np.zeros(idx.size, dtype=np.int64)
            sub = rem[idx]
            div = np.ones(idx.size, dtype=bool)
            while div.any():
                sub = np.where(div, sub // p, sub)
                e += div
                div = sub % p == 0
            rem[idx] = sub
            if p % 4 == 1:
                val[idx] *= 4 * e + 1
        # what is left is 1 or a single prime above sqrt(T)
        val[(rem > 1) & (rem % 4 == 1)] *= 5
        total += int(val.sum())
    return total


def summatory_b4_naive(T):
    from .numtheory import b_four
    return sum(b_four(n) for n in range(1, T + 1))


# -- growth fits ---------------------------------------------------------------------------

@dataclass
class GrowthFit:
    alpha: float
    beta: int
    c: float
    residual: float
    residuals: dict = field(default_factory=dict)


def fit_growth(samples, beta_candidates=(0, 1, 2)):
    """Least-squares fit of log count = log c + alpha log X + beta log log X.

    One fit per candidate beta; the one with the smallest residual sum of
    squares wins.
    """
    pts = [(float(X), float(n)) for X, n in samples]
    if len(pts) < 4:
        raise ValueError("need ≥ 4 samples")
    if any(n <= 0 for _, n in pts):
        raise ValueError("counts must be positive")
    xs = [X for X, _ in pts]
    if min(xs) <= math.e:
        raise ValueError("heights must exceed e so that log log X is defined")
    if max(xs) / min(xs) < 1e3 * (1 - 1e-12):
        raise ValueError("heights must span at least three decades")
    lx = np.log(np.array(xs))
    ly = np.log(np.array([n for _, n in pts]))
    llx = np.log(lx)
    design = np.column_stack([np.ones_like(lx), lx])
    best = None
    residuals = {}
    for beta in beta_candidates:
        y = ly - beta * llx
        coef, *_ = np.linalg.lstsq(design, y, rcond=None)
        res = float(np.sum((design @ coef - y) ** 2))
        residuals[beta] = res
        if best is None or res < best.residual:
            best = GrowthFit(float(coef[1]), int(beta), float(math.exp(coef[0])), res)
    best.residuals = residuals
    return best
