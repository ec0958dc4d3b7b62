"""Charlier polynomials for the one-dimensional Poisson proxy.

Two independent constructions: Gram-Schmidt on monomials under the pmf, and
the Appell route C_n(x) = sum_k s(n, k) P_k(x) (signed Stirling numbers of the
first kind) that comes from substituting theta -> log(1 + theta) in the
normalized exponential.
"""
from __future__ import annotations

import math

import numpy as np

from .appell import AppellSystem, p_kernel
from .measure import MeasureModel

__all__ = ["stirling1", "charlier_gram_schmidt", "charlier_from_appell", "charlier_gram", "charlier_generating"]


def stirling1(n: int) -> np.ndarray:
    """Table s[i, k] of signed Stirling numbers of the first kind, 0 <= k <= i <= n."""
    s = np.zeros((n + 1, n + 1))
    s[0, 0] = 1.0
    for i in range(1, n + 1):
        for k in range(1, i + 1):
            s[i, k] = s[i - 1, k - 1] - (i - 1) * s[i - 1, k]
    return s


def _nodes(mu: MeasureModel) -> tuple[np.ndarray, np.ndarray]:
    if mu.d != 1 or mu.points is None:
        raise ValueError("Charlier construction needs a one-dimensional measure with a pmf/quadrature")
    return mu.points[:, 0], mu.weights


def charlier_gram_schmidt(mu: MeasureModel, n: int) -> list[np.ndarray]:
    """Monic orthogonal polynomials (power-basis coefficients, lowest first) up to degree n."""
    x, w = _nodes(mu)
    polys: list[np.ndarray] = []
    for k in range(n + 1):
        c = np.zeros(k + 1)
        c[k] = 1.0
        v = np.polynomial.polynomial.polyval(x, c)
        for q in polys:
            qv = np.polynomial.polynomial.polyval(x, q)
            proj = np.sum(w * v * qv) / np.sum(w * qv * qv)
            c[: len(q)] -= proj * q
            v = v - proj * qv
        polys.append(c)
    return polys


def charlier_from_appell(sys: AppellSystem, n: int, x) -> float:
    """C_n(x) = sum_k s(n, k) P_k(x) in one dimension."""
    s = stirling1(n)
    return float(sum(s[n, k] * p_kernel(sys, k, [x]).coeffs[0].real for k in range(n + 1)))


def charlier_gram(mu: MeasureModel, polys: list[np.ndarray]) -> np.ndarray:
    """Matrix of integrals C_n C_m against the pmf."""
    x, w = _nodes(mu)
    V = np.array([np.polynomial.polynomial.polyval(x, c) for c in polys])
    return (V * w) @ V.T


def charlier_generating(x: float, theta: float, intensity: float) -> float:
    """exp(x log(1 + theta) - intensity theta)."""
    return math.exp(x * math.log1p(theta) - intensity * theta)
