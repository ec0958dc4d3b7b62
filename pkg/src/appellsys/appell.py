"""Appell polynomials P_n(x) of a measure and their defining identities.

The kernels B_n = P_n(0) are the Taylor kernels of 1/l and are obtained from
the moment kernels by the reciprocal-series recursion.  P_n(x) is then
assembled from the binomial expansion

    P_n(x) = sum_k C(n, k) x^k (x)^ B_{n-k}.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .measure import MeasureModel, SeriesValue, integrate
from .sequence import KernelSequence
from .tensor import SymKernel, WeightModel, apply_to_point, apply_to_points, contract, sym_product, weighted_norm

__all__ = [
    "AppellSystem",
    "GrowthReport",
    "build_appell",
    "recursion_residual",
    "p_kernel",
    "emu_eval",
    "check_generator",
    "check_monomial",
    "check_addition",
    "check_expectation",
    "growth_bound_check",
    "derivative_op",
]


@dataclass(frozen=True, eq=False)
class AppellSystem:
    measure: MeasureModel
    N: int
    M: tuple[SymKernel, ...]
    B: tuple[SymKernel, ...]

    @property
    def d(self) -> int:
        return self.measure.d

    @property
    def measure_id(self) -> str:
        return self.measure.name


def build_appell(mu: MeasureModel, N: int) -> AppellSystem:
    if N > mu.order:
        raise ValueError(f"measure {mu.name!r} has moments only through degree {mu.order}, need {N}")
    M = mu.moments[: N + 1]
    m0 = M[0].coeffs[0]
    if abs(m0 - 1.0) > 1e-12:
        raise ValueError(f"M_0 must be 1, got {m0}")
    B = [SymKernel.scalar(1.0, mu.d)]
    for n in range(1, N + 1):
        acc = SymKernel.zeros(mu.d, n)
        for k in range(n):
            acc = acc + math.comb(n, k) * sym_product(B[k], M[n - k])
        B.append(-acc)
    return AppellSystem(mu, N, tuple(M), tuple(B))


def recursion_residual(sys: AppellSystem) -> float:
    """max_n |sum_k C(n,k) B_k (x)^ M_{n-k}|_0 over 1 <= n <= N."""
    w = WeightModel((1.0,) * sys.d)
    worst = 0.0
    for n in range(1, sys.N + 1):
        acc = SymKernel.zeros(sys.d, n)
        for k in range(n + 1):
            acc = acc + math.comb(n, k) * sym_product(sys.B[k], sys.M[n - k])
        worst = max(worst, weighted_norm(acc, 0, w))
    return worst


def _check_n(sys: AppellSystem, n: int):
    if n < 0 or n > sys.N:
        raise ValueError(f"degree {n} outside the built range 0..{sys.N}")


def _point(sys: AppellSystem, x) -> np.ndarray:
    x = np.atleast_1d(np.asarray(x, dtype=complex))
    if x.shape != (sys.d,):
        raise ValueError(f"point has shape {x.shape}, system dimension is {sys.d}")
    return x


def p_kernel(sys: AppellSystem, n: int, x) -> SymKernel:
    _check_n(sys, n)
    x = _point(sys, x)
    out = SymKernel.zeros(sys.d, n)
    for k in range(n + 1):
        out = out + math.comb(n, k) * sym_product(SymKernel.tensor_power(x, k), sys.B[n - k])
    return out


def emu_eval(sys: AppellSystem, theta, x, N: Optional[int] = None, guard: float = 1e-12) -> SeriesValue:
    """Normalized exponential e^{<x,theta>}/l(theta): truncated series and closed form."""
    theta, x = _point(sys, theta), _point(sys, x)
    N = sys.N if N is None else N
    _check_n(sys, N)
    lval = sys.measure.laplace(theta)
    if lval is not None:
        if abs(lval) < guard:
            raise ValueError("Laplace transform vanishes at theta")
        closed = complex(np.exp(x @ theta) / lval)
    else:
        lpart = sum(apply_to_point(sys.M[n], theta) / math.factorial(n) for n in range(N + 1))
        if abs(lpart) < 1e-6:
            raise ValueError("partial Laplace sum vanishes at theta")
        closed = None
    partial = sum(apply_to_point(p_kernel(sys, n, x), theta) / math.factorial(n) for n in range(N + 1))
    return SeriesValue(complex(partial), closed)


def _series_reciprocal(a: Sequence[complex]) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    b = np.zeros_like(a)
    b[0] = 1.0 / a[0]
    for n in range(1, len(a)):
        b[n] = -np.dot(a[1:n + 1], b[n - 1::-1][:n]) / a[0]
    return b


def check_generator(sys: AppellSystem, n: int, x, theta) -> float:
    """Compare <P_n(x), theta^n> with n! [t^n] e^{t<x,theta>} / l(t theta).

    The right side uses a scalar power-series reciprocal along the direction
    theta, independent of the kernel recursion behind B_n.
    """
    _check_n(sys, n)
    x, theta = _point(sys, x), _point(sys, theta)
    moments = [apply_to_point(sys.M[k], theta) / math.factorial(k) for k in range(n + 1)]
    recip = _series_reciprocal(moments)
    s = complex(x @ theta)
    expo = np.array([s ** k / math.factorial(k) for k in range(n + 1)])
    coef = np.sum(expo[: n + 1] * recip[n::-1])
    direct = apply_to_point(p_kernel(sys, n, x), theta)
    return abs(direct - math.factorial(n) * coef)


def check_monomial(sys: AppellSystem, n: int, x) -> float:
    """Residual of x^n = sum_k C(n,k) P_k(x) (x)^ M_{n-k}."""
    _check_n(sys, n)
    x = _point(sys, x)
    rhs = SymKernel.zeros(sys.d, n)
    for k in range(n + 1):
        rhs = rhs + math.comb(n, k) * sym_product(p_kernel(sys, k, x), sys.M[n - k])
    return (SymKernel.tensor_power(x, n) - rhs).max_abs()


def check_addition(sys: AppellSystem, n: int, x, y, trinomial: bool = False) -> float:
    """Residual of the addition formula for P_n(x + y).

    Binomial form: sum_k C(n,k) P_k(x) (x)^ y^{n-k}; trinomial form:
    sum_{k+l+m=n} n!/(k! l! m!) P_k(x) (x)^ P_l(y) (x)^ M_m.
    """
    _check_n(sys, n)
    x, y = _point(sys, x), _point(sys, y)
    lhs = p_kernel(sys, n, x + y)
    rhs = SymKernel.zeros(sys.d, n)
    if not trinomial:
        for k in range(n + 1):
            rhs = rhs + math.comb(n, k) * sym_product(p_kernel(sys, k, x), SymKernel.tensor_power(y, n - k))
    else:
        Px = [p_kernel(sys, k, x) for k in range(n + 1)]
        Py = [p_kernel(sys, k, y) for k in range(n + 1)]
        for k in range(n + 1):
            for l in range(n - k + 1):
                m = n - k - l
                c = math.factorial(n) // (math.factorial(k) * math.factorial(l) * math.factorial(m))
                rhs = rhs + c * sym_product(sym_product(Px[k], Py[l]), sys.M[m])
    return (lhs - rhs).max_abs()


def check_expectation(sys: AppellSystem, m: int, phi: SymKernel) -> complex:
    """Quadrature value of E<P_m(.), phi>; zero for m >= 1."""
    _check_n(sys, m)

    # <P_m(x), phi> = sum_k C(m,k) <x^k, contract(B_{m-k}, phi)>
    parts = [(math.comb(m, k), contract(sys.B[m - k], phi)) for k in range(m + 1)]

    def f(pts):
        return sum(c * apply_to_points(g, pts) for c, g in parts)

    return integrate(sys.measure, f)


@dataclass
class GrowthReport:
    p: int
    eps: float
    C_emp: float
    per_n: list[float]
    bounded: bool


def growth_bound_check(sys: AppellSystem, w: WeightModel, p: int, eps: float, samples: Sequence) -> GrowthReport:
    """Empirical C with |P_n(z)|_{-p} <= C n! eps^{-n} e^{eps |z|_{-p}}.

    ``bounded`` is False when the worst ratio is attained at the top degree
    and exceeds the lower-degree maximum, i.e. the ratios are still growing.
    """
    per_n = []
    for n in range(sys.N + 1):
        worst = 0.0
        for z in samples:
            z = _point(sys, z)
            zn = w.vector_norm(z, -p)
            bound = math.factorial(n) * eps ** (-n) * math.exp(eps * zn)
            worst = max(worst, weighted_norm(p_kernel(sys, n, z), -p, w) / bound)
        per_n.append(worst)
    C = max(per_n)
    bounded = sys.N == 0 or per_n[-1] <= max(per_n[:-1])
    return GrowthReport(p, eps, C, per_n, bounded)


def derivative_op(Phi: SymKernel, f: KernelSequence) -> KernelSequence:
    """Constant-coefficient differential operator D(Phi) on a monomial sequence.

    The degree-m slot f^(m) goes to (m!/(m-k)!) contract(Phi, f^(m)) at degree
    m - k; slots below k vanish.
    """
    if f.basis != "monomial":
        raise ValueError("derivative_op acts on monomial-basis sequences")
    if Phi.d != f.d:
        raise ValueError("dimension mismatch")
    k = Phi.n
    out = []
    for j in range(f.N + 1):
        m = j + k
        if m <= f.N:
            out.append(math.perm(m, k) * contract(Phi, f[m]))
        else:
            out.append(SymKernel.zeros(f.d, j))
    return KernelSequence(f.d, "monomial", tuple(out), f.measure_id)
