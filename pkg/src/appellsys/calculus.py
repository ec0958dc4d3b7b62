"""Test functions, distributions, their pairing, norms and reordering."""
from __future__ import annotations

import math
from typing import Optional

import numpy as np

from .appell import AppellSystem, derivative_op, p_kernel
from .sequence import KernelSequence, check_measure
from .tensor import SymKernel, WeightModel, apply_to_point, apply_to_points, contract, pairing, weighted_norm

__all__ = [
    "KernelSequence",
    "pair",
    "pair_oracle",
    "test_norm",
    "dist_norm",
    "e_norm",
    "reorder_p_to_monomial",
    "reorder_monomial_to_p",
    "eval_test",
    "eval_test_many",
    "eval_monomial",
    "mu_exponential",
    "check_derivative_rule",
]


def _expect(seq: KernelSequence, basis: str, what: str):
    if seq.basis != basis:
        raise ValueError(f"{what} must be a {basis}-basis sequence, got {seq.basis}")


def _system_for(seq: KernelSequence, sys: AppellSystem):
    if seq.d != sys.d:
        raise ValueError(f"dimension mismatch: sequence d={seq.d}, system d={sys.d}")
    if seq.measure_id is not None and seq.measure_id != sys.measure_id:
        raise ValueError(f"sequence belongs to {seq.measure_id!r}, system to {sys.measure_id!r}")
    if seq.N > sys.N:
        raise ValueError(f"sequence degree {seq.N} exceeds the Appell system truncation {sys.N}")


def pair(Phi: KernelSequence, phi: KernelSequence) -> complex:
    """<<Phi, phi>> = sum_n n! <Phi^(n), phi^(n)>, truncated at the shorter operand."""
    _expect(Phi, "Q", "Phi")
    _expect(phi, "P", "phi")
    if Phi.d != phi.d:
        raise ValueError("dimension mismatch")
    check_measure(Phi, phi)
    return complex(sum(math.factorial(n) * pairing(Phi[n], phi[n]) for n in range(min(Phi.N, phi.N) + 1)))


def _oracle_grid(sys: AppellSystem, nodes: int) -> tuple[np.ndarray, np.ndarray]:
    mu = sys.measure
    q = mu.quadrature
    if q is not None and q.scheme == "trapezoid-grid" and q.support is not None:
        a, b = q.support
    else:
        mean = mu.params.get("mean", [0.0])[0]
        sd = math.sqrt(mu.params.get("variance", 1.0))
        a, b = mean - 12 * sd, mean + 12 * sd
    x = np.linspace(a, b, nodes)
    h = np.full(nodes, (b - a) / (nodes - 1))
    h[0] *= 0.5
    h[-1] *= 0.5
    return x, h


def pair_oracle(Phi: KernelSequence, phi: KernelSequence, sys: AppellSystem, nodes: int = 4001) -> complex:
    """Pairing realized as an integral, for smooth 1D densities.

    Uses Q_n(x) = (-1)^n rho^(n)(x)/rho(x), so the integrand
    Q_n(x) phi(x) rho(x) is evaluated as (-1)^n rho^(n)(x) phi(x).
    """
    _expect(Phi, "Q", "Phi")
    _expect(phi, "P", "phi")
    check_measure(Phi, phi)
    _system_for(phi, sys)
    if sys.d != 1:
        raise ValueError("pair_oracle needs a one-dimensional density measure")
    x, h = _oracle_grid(sys, nodes)
    phivals = eval_test_many(phi, sys, x[:, None])
    total = 0j
    for n in range(Phi.N + 1):
        c = Phi[n].coeffs[0]
        if c == 0:
            continue
        dn = sys.measure.density_derivative(n)(x)
        total += c * (-1) ** n * np.sum(h * dn * phivals)
    return complex(total)


def test_norm(phi: KernelSequence, w: WeightModel, p: int, q: int) -> float:
    """||phi||_{p,q}^2 = sum (n!)^2 2^{nq} |phi^(n)|_p^2."""
    return math.sqrt(sum(
        math.factorial(n) ** 2 * 2.0 ** (n * q) * weighted_norm(phi[n], p, w) ** 2 for n in range(phi.N + 1)
    ))


# keep pytest from collecting the norm as a test
test_norm.__test__ = False


def dist_norm(Phi: KernelSequence, w: WeightModel, p: int, q: int, beta: float = 1.0) -> float:
    """sum (n!)^{1-beta} 2^{-qn} |Phi^(n)|_{-p}^2, square-rooted; beta in [0, 1]."""
    if not 0.0 <= beta <= 1.0:
        raise ValueError(f"beta must lie in [0, 1], got {beta}")
    return math.sqrt(sum(
        math.factorial(n) ** (1.0 - beta) * 2.0 ** (-q * n) * weighted_norm(Phi[n], -p, w) ** 2
        for n in range(Phi.N + 1)
    ))


def e_norm(f: KernelSequence, w: WeightModel, p: int, q: int, beta: float) -> float:
    """sum (n!)^{1+beta} 2^{nq} |f^(n)|_p^2, square-rooted; beta in [-1, 1]."""
    if not -1.0 <= beta <= 1.0:
        raise ValueError(f"beta must lie in [-1, 1], got {beta}")
    return math.sqrt(sum(
        math.factorial(n) ** (1.0 + beta) * 2.0 ** (n * q) * weighted_norm(f[n], p, w) ** 2
        for n in range(f.N + 1)
    ))


def reorder_p_to_monomial(phi: KernelSequence, sys: AppellSystem) -> KernelSequence:
    """P-coefficients to monomial coefficients:
    f^(k) = sum_n C(n+k, k) contract(B_n, phi^(n+k))."""
    _expect(phi, "P", "phi")
    _system_for(phi, sys)
    N = phi.N
    out = []
    for k in range(N + 1):
        acc = SymKernel.zeros(phi.d, k)
        for n in range(N - k + 1):
            acc = acc + math.comb(n + k, k) * contract(sys.B[n], phi[n + k])
        out.append(acc)
    return KernelSequence(phi.d, "monomial", tuple(out), sys.measure_id)


def reorder_monomial_to_p(f: KernelSequence, sys: AppellSystem) -> KernelSequence:
    """Monomial coefficients to P-coefficients:
    phi^(k) = sum_n C(n+k, k) contract(M_n, f^(n+k))."""
    _expect(f, "monomial", "f")
    _system_for(f, sys)
    N = f.N
    out = []
    for k in range(N + 1):
        acc = SymKernel.zeros(f.d, k)
        for n in range(N - k + 1):
            acc = acc + math.comb(n + k, k) * contract(sys.M[n], f[n + k])
        out.append(acc)
    return KernelSequence(f.d, "P", tuple(out), sys.measure_id)


def eval_test(phi: KernelSequence, sys: AppellSystem, z) -> complex:
    """phi(z) = sum_n <P_n(z), phi^(n)>."""
    _expect(phi, "P", "phi")
    _system_for(phi, sys)
    return complex(sum(pairing(p_kernel(sys, n, z), phi[n]) for n in range(phi.N + 1)))


def eval_test_many(phi: KernelSequence, sys: AppellSystem, Z) -> np.ndarray:
    """phi at every row of Z, through the monomial representation."""
    f = reorder_p_to_monomial(phi, sys)
    return sum(apply_to_points(f[n], Z) for n in range(f.N + 1))


def eval_monomial(f: KernelSequence, z) -> complex:
    return complex(sum(apply_to_point(f[n], z) for n in range(f.N + 1)))


def mu_exponential(sys: AppellSystem, theta, N: Optional[int] = None) -> KernelSequence:
    """The normalized exponential e_mu(theta; .) truncated at N: coefficients theta^n/n!."""
    N = sys.N if N is None else N
    ks = tuple(SymKernel.tensor_power(theta, n) / math.factorial(n) for n in range(N + 1))
    return KernelSequence(sys.d, "P", ks, sys.measure_id)


def check_derivative_rule(sys: AppellSystem, Phi: SymKernel, phi_m: SymKernel) -> float:
    """Residual of D(Phi)<P_m, phi> = m!/(m-k)! <P_{m-k} (x)^ Phi, phi>.

    The left side goes through the monomial representation (reorder, apply
    D, reorder back); the right side is built directly from the contraction.
    """
    k, m = Phi.n, phi_m.n
    phi = KernelSequence.single(phi_m, "P", sys.measure_id)
    lhs = reorder_monomial_to_p(derivative_op(Phi, reorder_p_to_monomial(phi, sys)), sys)
    if m >= k:
        rhs = KernelSequence.single(math.perm(m, k) * contract(Phi, phi_m), "P", sys.measure_id, N=m)
    else:
        rhs = KernelSequence.zeros(sys.d, m, "P", sys.measure_id)
    return lhs.distance(rhs)
