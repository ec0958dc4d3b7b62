import math

import numpy as np
import pytest

from appellsys.appell import build_appell, p_kernel
from appellsys.calculus import eval_test, pair
from appellsys.measure import density_measure_1d, gaussian_measure, poisson_measure_1d
from appellsys.remeasure import cross_expand_residual, p_cross_expand, retarget_dist, retarget_test
from appellsys.sequence import KernelSequence
from appellsys.tensor import SymKernel, sym_product
from appellsys.transforms import delta

MIXTURE = "0.5*exp(-(x-1)**2/2)/sqrt(2*pi) + 0.5*exp(-(x+1)**2/2)/sqrt(2*pi)"

G = build_appell(gaussian_measure(1), 8)
SHIFT = build_appell(gaussian_measure(1, mean=[0.5], name="shifted"), 8)
MIX = build_appell(density_measure_1d(MIXTURE, (-14.0, 14.0)), 8)
POI = build_appell(poisson_measure_1d(2.0), 8)
G2 = build_appell(gaussian_measure(2), 6)
G2S = build_appell(gaussian_measure(2, mean=[0.2, -0.3], variance=1.3, name="g2s"), 6)
def scale(*systems):
    """Size of the largest B_l (x)^ M_m product; residuals are rounding relative to it."""
    return max(1.0, max(max(b.max_abs() for b in s.B) for s in systems) * max(max(m.max_abs() for m in s.M)
                                                                             for s in systems))


PAIRS = [(G, SHIFT), (G, MIX), (MIX, POI), (G2, G2S)]
IDS = ["gauss-shifted", "gauss-mixture", "mixture-poisson", "gauss2d"]


@pytest.mark.parametrize("mu,hat", PAIRS, ids=IDS)
def test_pairing_invariance(mu, hat, rng):
    for _ in range(10):
        phi = KernelSequence.random(rng, mu.d, mu.N, "P", mu.measure_id, scale=0.5)
        Phi_hat = KernelSequence.random(rng, mu.d, mu.N, "Q", hat.measure_id, scale=0.5)
        assert abs(pair(retarget_dist(Phi_hat, mu, hat), phi) - pair(Phi_hat, retarget_test(phi, mu, hat))) < 1e-9


@pytest.mark.parametrize("mu,hat", PAIRS, ids=IDS)
def test_retargeting_preserves_the_function(mu, hat, rng):
    phi = KernelSequence.random(rng, mu.d, mu.N, "P", mu.measure_id, scale=0.5)
    phi_hat = retarget_test(phi, mu, hat)
    for _ in range(5):
        z = rng.uniform(-1, 1, mu.d)
        assert eval_test(phi_hat, hat, z) == pytest.approx(eval_test(phi, mu, z), rel=1e-11, abs=1e-11)


@pytest.mark.parametrize("mu,hat", PAIRS, ids=IDS)
def test_delta_is_measure_intrinsic(mu, hat, rng):
    z = rng.uniform(-1, 1, mu.d)
    assert retarget_dist(delta(hat, z), mu, hat).distance(delta(mu, z)) < 1e-11


@pytest.mark.parametrize("sys", [G, MIX, POI, G2], ids=["gauss", "mixture", "poisson", "gauss2d"])
def test_same_measure_is_identity(sys, rng):
    phi = KernelSequence.random(rng, sys.d, sys.N, "P", sys.measure_id)
    Phi = KernelSequence.random(rng, sys.d, sys.N, "Q", sys.measure_id)
    tol = 1e-15 * scale(sys) if sys is POI else 1e-12
    assert retarget_test(phi, sys, sys).distance(phi) < tol
    assert retarget_dist(Phi, sys, sys).distance(Phi) < tol


@pytest.mark.parametrize("mu,hat", PAIRS, ids=IDS)
def test_cross_expansion(mu, hat, rng):
    for n in range(mu.N + 1):
        assert cross_expand_residual(mu, hat, n, rng.uniform(-1, 1, mu.d)) < max(1e-11, 1e-15 * scale(mu, hat))
    assert len(p_cross_expand(mu, hat, 3)) == 10


def test_target_moments_are_required(rng):
    # with the source moments in place of the target moments the expansion is wrong
    n, x = 3, np.array([0.4])
    P = SymKernel.zeros(1, n)
    for k in range(n + 1):
        for l in range(n - k + 1):
            m = n - k - l
            c = math.factorial(n) / (math.factorial(k) * math.factorial(l) * math.factorial(m))
            P = P + c * sym_product(p_kernel(SHIFT, k, x), sym_product(G.B[l], G.M[m]))
    assert (P - p_kernel(G, n, x)).max_abs() > 1e-3


def test_truncation_and_space_errors(rng):
    short = build_appell(gaussian_measure(1, mean=[0.1], name="short"), 4)
    phi = KernelSequence.random(rng, 1, 8, "P", G.measure_id)
    with pytest.raises(ValueError, match="truncation"):
        retarget_test(phi, G, short)
    with pytest.raises(ValueError):
        retarget_test(KernelSequence.random(rng, 1, 2, "P", G.measure_id), G, G2)
