"""Wick algebra on Q-decompositions.

The Wick product multiplies S-transforms, so on coefficients it is the Cauchy
product Xi^(n) = sum_k Phi^(k) (x)^ Psi^(n-k).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .calculus import _expect, dist_norm
from .sequence import KernelSequence, check_measure
from .tensor import SymKernel, WeightModel, sym_product

__all__ = [
    "N_MAX",
    "unit",
    "wick_product",
    "wick_power",
    "wick_apply_series",
    "wick_inverse",
    "wick_solve",
    "wick_norm_check",
    "WickNormReport",
]

N_MAX = 16


def unit(d: int, measure_id: Optional[str] = None, N: int = 0) -> KernelSequence:
    return KernelSequence.constant(1.0, d, "Q", measure_id, N=N)


def _operands(Phi: KernelSequence, Psi: KernelSequence):
    _expect(Phi, "Q", "Phi")
    _expect(Psi, "Q", "Psi")
    if Phi.d != Psi.d:
        raise ValueError(f"dimension mismatch: {Phi.d} vs {Psi.d}")
    check_measure(Phi, Psi)


def wick_product(Phi: KernelSequence, Psi: KernelSequence, n_max: int = N_MAX) -> KernelSequence:
    _operands(Phi, Psi)
    N = min(Phi.N + Psi.N, n_max)
    out = []
    for n in range(N + 1):
        acc = SymKernel.zeros(Phi.d, n)
        for k in range(max(0, n - Psi.N), min(n, Phi.N) + 1):
            acc = acc + sym_product(Phi[k], Psi[n - k])
        out.append(acc)
    capped = n_max if Phi.N + Psi.N > n_max else None
    return KernelSequence(Phi.d, "Q", tuple(out), Phi.measure_id or Psi.measure_id, n_max=capped)


def wick_power(Phi: KernelSequence, m: int, n_max: int = N_MAX) -> KernelSequence:
    _expect(Phi, "Q", "Phi")
    if m < 0:
        raise ValueError("negative Wick powers are not defined here; use wick_inverse")
    out = unit(Phi.d, Phi.measure_id)
    for _ in range(m):
        out = wick_product(out, Phi, n_max)
    return out


def wick_apply_series(coeffs: Sequence[complex], Phi: KernelSequence) -> KernelSequence:
    """F^(Phi) for F(z) = sum_k a_k (z - z0)^k with z0 = Phi^(0).

    Phi - z0 has no degree-0 part, so powers beyond N do not reach degree N
    and the result is exact through N = Phi.N.
    """
    _expect(Phi, "Q", "Phi")
    N = Phi.N
    if len(coeffs) < N + 1:
        raise ValueError(f"need series coefficients a_0..a_{N}, got {len(coeffs)}")
    centered = KernelSequence(Phi.d, "Q", (SymKernel.zeros(Phi.d, 0),) + Phi.kernels[1:], Phi.measure_id)
    result = KernelSequence.zeros(Phi.d, N, "Q", Phi.measure_id)
    power = unit(Phi.d, Phi.measure_id, N=N)
    for k in range(N + 1):
        result = result + coeffs[k] * power
        power = wick_product(power, centered, n_max=N)
    return result.truncate(N)


def wick_inverse(Phi: KernelSequence, tol: float = 1e-12) -> KernelSequence:
    _expect(Phi, "Q", "Phi")
    c0 = Phi[0].coeffs[0]
    if abs(c0) <= tol:
        raise ZeroDivisionError("Phi has vanishing expectation; it is not Wick invertible")
    out = [SymKernel.scalar(1.0 / c0, Phi.d)]
    for n in range(1, Phi.N + 1):
        acc = SymKernel.zeros(Phi.d, n)
        for k in range(1, n + 1):
            acc = acc + sym_product(Phi[k], out[n - k])
        out.append(acc * (-1.0 / c0))
    return KernelSequence(Phi.d, "Q", tuple(out), Phi.measure_id)


def wick_solve(Phi: KernelSequence, Psi: KernelSequence) -> KernelSequence:
    """Solve Phi <> X = Psi through the common truncation."""
    _operands(Phi, Psi)
    N = min(Phi.N, Psi.N)
    return wick_product(wick_inverse(Phi.truncate(N)), Psi.truncate(N)).truncate(N)


@dataclass
class WickNormReport:
    lhs: float
    rhs: float
    ok: bool


def wick_norm_check(Phi: KernelSequence, Psi: KernelSequence, w: WeightModel,
                    p1: int, q1: int, p2: int, q2: int, n_max: int = N_MAX) -> WickNormReport:
    """||Phi <> Psi||_{-max(p1,p2), -(q1+q2+1)} against ||Phi||_{-p1,-q1} ||Psi||_{-p2,-q2}."""
    lhs = dist_norm(wick_product(Phi, Psi, n_max), w, max(p1, p2), q1 + q2 + 1, 1.0)
    rhs = dist_norm(Phi, w, p1, q1, 1.0) * dist_norm(Psi, w, p2, q2, 1.0)
    return WickNormReport(lhs, rhs, lhs <= rhs * (1 + 1e-12))
