"""Change of measure for P- and Q-decompositions.

With e_mu(theta; x) = e_hat(theta; x) l_hat(theta) / l_mu(theta) the Appell
polynomials of the two measures are related by

    P_n^mu(x) = sum_{k+l+m=n} n!/(k! l! m!) P_k^hat(x) (x)^ B_l^mu (x)^ M_m^hat,

which yields the re-expansion of test functions and, by duality, of
distributions.  Pairing invariance <<Phi, phi>>_mu = <<Phi_hat, phi>>_hat is
the check on all of it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .appell import AppellSystem, p_kernel
from .calculus import _expect, _system_for
from .sequence import KernelSequence
from .tensor import SymKernel, contract, sym_product

__all__ = ["CrossTerm", "p_cross_expand", "cross_expand_residual", "retarget_test", "retarget_dist"]


@dataclass(frozen=True)
class CrossTerm:
    k: int
    l: int
    m: int
    coeff: float
    kernel: SymKernel  # B_l^mu (x)^ M_m^hat, degree l + m


def _pair_ok(sys_mu: AppellSystem, sys_hat: AppellSystem, N: int):
    if sys_mu.d != sys_hat.d:
        raise ValueError("both measures must live on the same space")
    if N > sys_mu.N or N > sys_hat.N:
        raise ValueError(f"truncation insufficient: need degree {N}, systems built to {sys_mu.N} and {sys_hat.N}")


def _mixed(sys_mu: AppellSystem, sys_hat: AppellSystem, l: int, m: int) -> SymKernel:
    return sym_product(sys_mu.B[l], sys_hat.M[m])


def p_cross_expand(sys_mu: AppellSystem, sys_hat: AppellSystem, n: int) -> list[CrossTerm]:
    """Terms of P_n^mu(x) = sum coeff * P_k^hat(x) (x)^ kernel."""
    _pair_ok(sys_mu, sys_hat, n)
    terms = []
    for k in range(n + 1):
        for l in range(n - k + 1):
            m = n - k - l
            c = math.factorial(n) / (math.factorial(k) * math.factorial(l) * math.factorial(m))
            terms.append(CrossTerm(k, l, m, c, _mixed(sys_mu, sys_hat, l, m)))
    return terms


def cross_expand_residual(sys_mu: AppellSystem, sys_hat: AppellSystem, n: int, x) -> float:
    rhs = SymKernel.zeros(sys_mu.d, n)
    for t in p_cross_expand(sys_mu, sys_hat, n):
        rhs = rhs + t.coeff * sym_product(p_kernel(sys_hat, t.k, x), t.kernel)
    return (p_kernel(sys_mu, n, x) - rhs).max_abs()


def retarget_test(phi: KernelSequence, sys_mu: AppellSystem, sys_hat: AppellSystem) -> KernelSequence:
    """P^mu coefficients of a test function to its P^hat coefficients:
    hat^(n) = sum_{l,m} (l+m+n)!/(l! m! n!) contract(B_l^mu (x)^ M_m^hat, phi^(l+m+n))."""
    _expect(phi, "P", "phi")
    _system_for(phi, sys_mu)
    N = phi.N
    _pair_ok(sys_mu, sys_hat, N)
    out = []
    for n in range(N + 1):
        acc = SymKernel.zeros(phi.d, n)
        for l in range(N - n + 1):
            for m in range(N - n - l + 1):
                tot = l + m + n
                c = math.factorial(tot) / (math.factorial(l) * math.factorial(m) * math.factorial(n))
                acc = acc + c * contract(_mixed(sys_mu, sys_hat, l, m), phi[tot])
        out.append(acc)
    return KernelSequence(phi.d, "P", tuple(out), sys_hat.measure_id)


def retarget_dist(Phi_hat: KernelSequence, sys_mu: AppellSystem, sys_hat: AppellSystem) -> KernelSequence:
    """Q^hat coefficients of a distribution to its Q^mu coefficients:
    Phi^(n) = sum_{k+l+m=n} Phi_hat^(k) (x)^ B_l^mu (x)^ M_m^hat / (l! m!)."""
    _expect(Phi_hat, "Q", "Phi_hat")
    _system_for(Phi_hat, sys_hat)
    N = Phi_hat.N
    _pair_ok(sys_mu, sys_hat, N)
    out = []
    for n in range(N + 1):
        acc = SymKernel.zeros(Phi_hat.d, n)
        for k in range(n + 1):
            for l in range(n - k + 1):
                m = n - k - l
                c = 1.0 / (math.factorial(l) * math.factorial(m))
                acc = acc + c * sym_product(Phi_hat[k], _mixed(sys_mu, sys_hat, l, m))
        out.append(acc)
    return KernelSequence(Phi_hat.d, "Q", tuple(out), sys_mu.measure_id)
