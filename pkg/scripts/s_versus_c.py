"""How far the S- and C-transforms of a test function drift apart off the Gaussian case.

For each measure, phi = x^k is rewritten in the measure's P-basis and
S phi(theta) = L phi(theta)/l(theta) is compared with C phi(theta).
"""
import numpy as np

from appellsys import build_appell, c_transform, gaussian_measure, poisson_measure_1d, reorder_monomial_to_p
from appellsys.measure import density_measure_1d
from appellsys.sequence import KernelSequence
from appellsys.tensor import SymKernel
from appellsys.transforms import s_transform_test

MIXTURE = "0.5*exp(-(x-1)**2/2)/sqrt(2*pi) + 0.5*exp(-(x+1)**2/2)/sqrt(2*pi)"
measures = {
    "gaussian": gaussian_measure(1),
    "poisson(1)": poisson_measure_1d(1.0, order=40),
    "poisson(4)": poisson_measure_1d(4.0, order=40),
    "mixture": density_measure_1d(MIXTURE, (-14.0, 14.0), N=40),
}
thetas = np.linspace(-0.6, 0.6, 7)
print(f"{'measure':<12} {'k':>2}  " + " ".join(f"{t:>9.2f}" for t in thetas))
for name, mu in measures.items():
    sys = build_appell(mu, 6)
    for k in (1, 2, 4):
        ks = [SymKernel.zeros(1, n) for n in range(k)] + [SymKernel.tensor_power([1.0], k)]
        phi = reorder_monomial_to_p(KernelSequence.from_kernels(ks, "monomial", sys.measure_id), sys)
        diffs = [abs(s_transform_test(phi, sys, [t]) - c_transform(phi, [t])) for t in thetas]
        print(f"{name:<12} {k:>2}  " + " ".join(f"{d:9.2e}" for d in diffs))
