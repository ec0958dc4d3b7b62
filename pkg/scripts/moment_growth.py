"""Moment growth ratios (|<M_n, theta^n>| / n!)^{1/n} for the builder measures.

Bounded ratios are the analyticity condition under which the Appell system exists.
"""
from appellsys.measure import analyticity_check, gaussian_measure, poisson_measure_1d, density_measure_1d

MIXTURE = "0.5*exp(-(x-1)**2/2)/sqrt(2*pi) + 0.5*exp(-(x+1)**2/2)/sqrt(2*pi)"
for name, mu in [("gaussian", gaussian_measure(1)), ("poisson(1)", poisson_measure_1d(1.0)),
                 ("poisson(5)", poisson_measure_1d(5.0)),
                 ("mixture", density_measure_1d(MIXTURE, (-14.0, 14.0)))]:
    rep = analyticity_check(mu, 24, [[1.0], [-1.0]], ps=(0,))
    r = rep.ratios[0]
    print(f"{name:<11} C={rep.C[0]:.3f}  flagged={rep.super_factorial[0]}  n=2,6,..,22: "
          + " ".join(f"{v:.3f}" for v in r[1::4]))
