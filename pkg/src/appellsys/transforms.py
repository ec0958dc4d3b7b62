"""S-, C- and Laplace transforms; delta and generalized Radon-Nikodym distributions."""
from __future__ import annotations

import math
from typing import Optional

import numpy as np

from .appell import AppellSystem, p_kernel
from .calculus import _expect, reorder_p_to_monomial
from .sequence import KernelSequence
from .tensor import SymKernel, apply_to_point, contract

__all__ = [
    "s_transform",
    "c_transform",
    "l_transform",
    "s_transform_test",
    "delta",
    "radon_nikodym",
]


def s_transform(Phi: KernelSequence, theta) -> complex:
    """S Phi(theta) = sum_n <Phi^(n), theta^n>."""
    _expect(Phi, "Q", "Phi")
    return complex(sum(apply_to_point(Phi[n], theta) for n in range(Phi.N + 1)))


def c_transform(phi: KernelSequence, z) -> complex:
    """C phi(z) = sum_n <z^n, phi^(n)> on the P-coefficients."""
    _expect(phi, "P", "phi")
    return complex(sum(apply_to_point(phi[n], z) for n in range(phi.N + 1)))


def l_transform(phi: KernelSequence, sys: AppellSystem, theta, guard: float = 1.0) -> complex:
    """L phi(theta) = integral of phi(x) e^{<x,theta>} against mu.

    Computed on the monomial representation: <x^n, f> e^{<x,theta>} integrates
    to sum_k <theta^k, contract(f, M_{n+k})>/k!, using every stored moment.
    """
    _expect(phi, "P", "phi")
    theta = np.atleast_1d(np.asarray(theta, dtype=complex))
    if np.linalg.norm(theta) > guard:
        raise ValueError(f"|theta| = {np.linalg.norm(theta):.3g} exceeds the guard radius {guard}")
    f = reorder_p_to_monomial(phi, sys)
    moments = sys.measure.moments
    total = 0j
    for n in range(f.N + 1):
        if not f[n].coeffs.any():
            continue
        for k in range(len(moments) - n):
            total += apply_to_point(contract(f[n], moments[n + k]), theta) / math.factorial(k)
    return complex(total)


def s_transform_test(phi: KernelSequence, sys: AppellSystem, theta, guard: float = 1.0) -> complex:
    """S phi = L phi / l for a test function."""
    lval = sys.measure.laplace(theta)
    if lval is None:
        theta_ = np.atleast_1d(np.asarray(theta, dtype=complex))
        lval = sum(apply_to_point(m, theta_) / math.factorial(n) for n, m in enumerate(sys.measure.moments))
    return l_transform(phi, sys, theta, guard) / lval


def delta(sys: AppellSystem, z, N: Optional[int] = None) -> KernelSequence:
    """delta_z = sum_n Q_n(P_n(z))/n!."""
    N = sys.N if N is None else N
    ks = tuple(p_kernel(sys, n, z) / math.factorial(n) for n in range(N + 1))
    return KernelSequence(sys.d, "Q", ks, sys.measure_id)


def radon_nikodym(sys: AppellSystem, z, N: Optional[int] = None) -> KernelSequence:
    """rho_mu(z, .) with coefficients (-1)^n z^n/n!; pairs to the shifted expectation."""
    N = sys.N if N is None else N
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    ks = tuple(SymKernel.tensor_power(-z, n) / math.factorial(n) for n in range(N + 1))
    return KernelSequence(sys.d, "Q", ks, sys.measure_id)
