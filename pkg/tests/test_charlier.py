import math

import numpy as np
import pytest
import sympy as sp

from appellsys.appell import build_appell
from appellsys.charlier import (charlier_from_appell, charlier_generating, charlier_gram, charlier_gram_schmidt,
                                stirling1)
from appellsys.measure import gaussian_measure, poisson_measure_1d


def monic_charlier(n, lam, x):
    """sum_k C(n,k) (-lam)^{n-k} x(x-1)...(x-k+1)."""
    return sum(math.comb(n, k) * (-lam) ** (n - k) * math.prod(x - j for j in range(k)) for k in range(n + 1))


def test_stirling_first_kind_signed():
    s = stirling1(8)
    for n in range(9):
        for k in range(n + 1):
            assert s[n, k] == int(sp.functions.combinatorial.numbers.stirling(n, k, kind=1, signed=True))


@pytest.mark.parametrize("lam", [1.0, 2.5])
def test_gram_schmidt_matches_closed_form_and_is_orthogonal(lam):
    mu = poisson_measure_1d(lam)
    polys = charlier_gram_schmidt(mu, 6)
    for n, c in enumerate(polys):
        for x in (0.0, 1.0, 3.0, 5.5):
            assert np.polynomial.polynomial.polyval(x, c) == pytest.approx(monic_charlier(n, lam, x), rel=1e-8, abs=1e-8)
    G = charlier_gram(mu, polys)
    diag = np.array([math.factorial(n) * lam ** n for n in range(7)])
    assert np.max(np.abs(G - np.diag(diag)) / np.sqrt(np.outer(diag, diag))) < 1e-7


@pytest.mark.parametrize("lam", [1.0, 2.5])
def test_appell_route_matches(lam):
    sys = build_appell(poisson_measure_1d(lam), 6)
    for n in range(7):
        for x in (0.0, 2.0, 4.0, -1.5):
            assert charlier_from_appell(sys, n, x) == pytest.approx(monic_charlier(n, lam, x), rel=1e-10, abs=1e-10)


def test_generating_function():
    lam = 1.0
    sys = build_appell(poisson_measure_1d(lam), 20)
    for x in (0.0, 1.0, 3.0):
        for th in (-0.2, 0.15):
            s = sum(charlier_from_appell(sys, n, x) * th ** n / math.factorial(n) for n in range(21))
            assert s == pytest.approx(charlier_generating(x, th, lam), rel=1e-12)


def test_needs_one_dimensional_quadrature():
    with pytest.raises(ValueError):
        charlier_gram_schmidt(gaussian_measure(2), 2)
