"""Counts of curves with an N-isogeny below X and the fitted growth exponents.

The census is exact but slow at large X; the param engine gives the same
numbers for the family levels much faster.  Takes about a minute.

    python demos/growth_rates.py
"""

from isocount.analytic import TABLE1, fit_growth
from isocount.counting import census, count_j0_3, param_count

grid = [10 ** k for k in range(4, 8)]

print("level  engine  counts at X = 1e4 .. 1e7        alpha  beta   expected")
for N, label, engine in [(2, "census", census), (3, "param", param_count),
                         (4, "param", param_count), (9, "param", param_count)]:
    counts = [engine(N, X).count for X in grid]
    fit = fit_growth(list(zip(grid, counts)))
    a, b = TABLE1[N]
    print("%5d  %-6s  %-30s  %.3f  %d      X^%s log^%d" % (N, label, counts, fit.alpha, fit.beta, a, b))

# for N = 3 the j = 0 curves y^2 = x^3 + b dominate: they alone grow like X^(1/2)
for X in grid:
    n, j0 = param_count(3, X).count, count_j0_3(X)
    print("N=3 X=%-9d total %5d  j=0 %5d  rest %4d" % (X, n, j0, n - j0))
