"""Section-tuple counts and the sum of B(n^4).

The level-5 count runs over points of b^2 - a^2 c - 4bc + 8c^2 = 0, found
from two-square representations of a^4, so X up to 1e18 is instant.

    python demos/stack_counts.py
"""

import math

from isocount.analytic import fit_growth, summatory_b4
from isocount.counting import census, count_quadric5, stack_count_pairs

samples = [(10 ** k, count_quadric5(10 ** k).count) for k in range(6, 19)]
for X, n in samples[::3]:
    print("quadric5  X=1e%-2d  %6d" % (round(math.log10(X)), n))
fit = fit_growth(samples)
print("fit: alpha %.3f  beta %d   (X^(1/6) log^2 X expected)" % (fit.alpha, fit.beta))

for T in (10 ** 4, 10 ** 5, 10 ** 6):
    s = summatory_b4(T)
    print("sum B(n^4), n <= %-8d = %-10d ratio to T log^2 T = %.4f" % (T, s, s / (T * math.log(T) ** 2)))

# pair counts track the census only up to a bounded factor
for X in (10 ** 4, 10 ** 6):
    print("N=2 X=%-8d stack pairs %5d  census %5d" % (X, stack_count_pairs(2, X).count, census(2, X).count))
