"""Distribution of ||Phi <> Psi|| / (||Phi|| ||Psi||) in the continuity estimate of the Wick product.

Prints quantiles of the ratio per (p, q) setting; the estimate says it never exceeds 1.
"""
import numpy as np

from appellsys.sequence import KernelSequence
from appellsys.tensor import WeightModel
from appellsys.wick import wick_norm_check

rng = np.random.default_rng(7)
w = WeightModel((2.0, 3.0))
print(f"{'p1 q1 p2 q2':<12} {'median':>9} {'p99':>9} {'max':>9}")
for p1, q1, p2, q2 in [(0, 0, 0, 0), (1, 0, 0, 1), (1, 1, 1, 1), (2, 2, 0, 0), (0, 3, 3, 0)]:
    r = []
    for _ in range(400):
        A = KernelSequence.random(rng, 2, int(rng.integers(0, 7)), "Q", complex_=True)
        B = KernelSequence.random(rng, 2, int(rng.integers(0, 7)), "Q", complex_=True)
        rep = wick_norm_check(A, B, w, p1, q1, p2, q2)
        r.append(rep.lhs / rep.rhs)
    r = np.array(r)
    print(f"{p1} {q1} {p2} {q2}      {np.median(r):9.3f} {np.quantile(r, 0.99):9.3f} {r.max():9.3f}")
