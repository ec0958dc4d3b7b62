"""Measures with analytic Laplace transform, described by their moment kernels.

Every model carries the moment kernels ``M_0..M_order`` (Taylor coefficients of
the Laplace transform ``l(theta) = sum_n <M_n, theta^n>/n!``) and an explicit
quadrature rule (nodes, weights) used as the independent integration oracle.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
import sympy as sp
from scipy import stats

from .tensor import SymKernel, WeightModel, apply_to_point, embed, sym_product

__all__ = [
    "MeasureModel",
    "QuadratureSpec",
    "SeriesValue",
    "AnalyticityReport",
    "moments_from_cumulants",
    "gaussian_measure",
    "poisson_measure_1d",
    "density_measure_1d",
    "product_measure",
    "point_mass",
    "measure_from_spec",
    "laplace_eval",
    "analyticity_check",
    "integrate",
]

DEFAULT_ORDER = 24
X = sp.Symbol("x", real=True)


@dataclass(frozen=True)
class QuadratureSpec:
    scheme: str  # gauss-hermite | trapezoid-grid | pmf-sum | product
    nodes: int
    support: Optional[tuple[float, float]] = None


@dataclass(frozen=True, eq=False)
class MeasureModel:
    d: int
    moments: tuple[SymKernel, ...]
    kind: str
    name: str
    quadrature: Optional[QuadratureSpec] = None
    points: Optional[np.ndarray] = field(default=None, repr=False)
    weights: Optional[np.ndarray] = field(default=None, repr=False)
    closed_form: Optional[Callable[[np.ndarray], complex]] = field(default=None, repr=False)
    density: Optional[Callable] = field(default=None, repr=False)
    density_expr: Optional[sp.Expr] = field(default=None, repr=False)
    params: dict = field(default_factory=dict)

    @property
    def order(self) -> int:
        return len(self.moments) - 1

    def laplace(self, theta) -> Optional[complex]:
        if self.closed_form is None:
            return None
        return complex(self.closed_form(np.atleast_1d(np.asarray(theta, dtype=complex))))

    def density_derivative(self, n: int) -> Callable:
        """n-th derivative of the density as a vectorized callable."""
        if self.density_expr is None:
            raise ValueError(f"measure {self.name!r} has no symbolic density; derivatives unavailable")
        return _lambdify(sp.diff(self.density_expr, X, n))


@dataclass(frozen=True)
class SeriesValue:
    """A truncated series value alongside the closed form, when one exists."""

    partial: complex
    closed: Optional[complex] = None

    @property
    def error(self) -> Optional[float]:
        return None if self.closed is None else abs(self.partial - self.closed)


@dataclass
class AnalyticityReport:
    N: int
    C: dict[int, float]
    ratios: dict[int, list[float]]
    super_factorial: dict[int, bool]


def _lambdify(expr) -> Callable:
    f = sp.lambdify(X, expr, modules="numpy")

    def call(x):
        x = np.asarray(x, dtype=float)
        return np.broadcast_to(np.asarray(f(x), dtype=float), x.shape)

    return call


def moments_from_cumulants(d: int, cumulants: Sequence[SymKernel], order: int) -> tuple[SymKernel, ...]:
    """Moment kernels of l = exp(kappa), kappa(theta) = sum_{n>=1} <K_n, theta^n>/n!.

    ``cumulants[k]`` is the degree-k kernel (index 0 is ignored).  Uses
    M_n = sum_{k=1}^n C(n-1, k-1) K_k (x)^ M_{n-k}.
    """
    M = [SymKernel.scalar(1.0, d)]
    for n in range(1, order + 1):
        acc = SymKernel.zeros(d, n)
        for k in range(1, n + 1):
            if k >= len(cumulants) or cumulants[k] is None:
                continue
            acc = acc + math.comb(n - 1, k - 1) * sym_product(cumulants[k], M[n - k])
        M.append(acc)
    return tuple(M)


def gaussian_measure(d: int, mean=None, variance: float = 1.0, order: int = DEFAULT_ORDER,
                     nodes: Optional[int] = None, name: Optional[str] = None) -> MeasureModel:
    """Gaussian N(mean, variance*I) on R^d; centered standard by default."""
    if d < 1:
        raise ValueError("d must be >= 1")
    mean = np.zeros(d) if mean is None else np.asarray(mean, dtype=float).reshape(d)
    trace = SymKernel.from_dict(d, 2, {tuple(2 if j == i else 0 for j in range(d)): 1.0 for i in range(d)})
    cumulants = [None, SymKernel.vector(mean), variance * trace]
    M = moments_from_cumulants(d, cumulants, order)

    if nodes is None:
        nodes = 64 if d <= 2 else 16
    x1, w1 = np.polynomial.hermite_e.hermegauss(nodes)
    w1 = w1 / math.sqrt(2 * math.pi)
    grids = np.meshgrid(*([x1] * d), indexing="ij")
    pts = np.stack([g.reshape(-1) for g in grids], axis=1) * math.sqrt(variance) + mean
    wts = np.ones(1)
    for _ in range(d):
        wts = np.multiply.outer(wts, w1).reshape(-1)

    def lap(theta):
        return np.exp(theta @ mean + 0.5 * variance * (theta @ theta))

    return MeasureModel(
        d=d, moments=M, kind="gaussian",
        name=name or (f"gaussian{d}d" if not mean.any() else f"gaussian{d}d-mean{mean.tolist()}"),
        quadrature=QuadratureSpec("gauss-hermite", nodes),
        points=pts, weights=wts, closed_form=lap,
        density_expr=(sp.exp(-(X - mean[0]) ** 2 / (2 * variance)) / sp.sqrt(2 * sp.pi * variance)
                      if d == 1 else None),
        params={"mean": mean.tolist(), "variance": variance},
    )


def poisson_measure_1d(intensity: float, order: int = DEFAULT_ORDER, name: Optional[str] = None) -> MeasureModel:
    """Classical Poisson distribution, l(theta) = exp(intensity (e^theta - 1))."""
    if not intensity > 0:
        raise ValueError(f"Poisson intensity must be positive, got {intensity}")
    cumulants = [None] + [SymKernel.vector([intensity])] + [
        SymKernel(1, k, [intensity]) for k in range(2, order + 1)
    ]
    M = moments_from_cumulants(1, cumulants, order)
    kmax = int(math.ceil(max(60.0, intensity + 20.0 * math.sqrt(intensity))))
    k = np.arange(kmax + 1)
    pmf = stats.poisson.pmf(k, intensity)
    return MeasureModel(
        d=1, moments=M, kind="poisson1d", name=name or f"poisson{intensity:g}",
        quadrature=QuadratureSpec("pmf-sum", kmax + 1, (0.0, float(kmax))),
        points=k.astype(float)[:, None], weights=pmf,
        closed_form=lambda th: np.exp(intensity * (np.exp(th[0]) - 1.0)),
        params={"intensity": intensity},
    )


def density_measure_1d(rho, support: tuple[float, float], N: int = DEFAULT_ORDER, nodes: int = 4001,
                       name: Optional[str] = None, norm_tol: float = 1e-8) -> MeasureModel:
    """Measure rho(x) dx on an interval, moments by trapezoid quadrature.

    ``rho`` may be a sympy expression (or string) in ``x``, which also enables
    derivatives of the density, or a plain vectorized callable.
    """
    a, b = map(float, support)
    expr = None
    if isinstance(rho, str):
        rho = sp.sympify(rho, locals={"x": X})
    if isinstance(rho, sp.Expr):
        expr = rho
        f = _lambdify(expr)
    else:
        f = rho
    x = np.linspace(a, b, nodes)
    h = (b - a) / (nodes - 1)
    vals = np.asarray(f(x), dtype=float)
    if np.any(vals < 0):
        raise ValueError("density takes negative values on the support")
    w = h * vals
    w[0] *= 0.5
    w[-1] *= 0.5
    return _grid_measure(x, w, vals, N, a, b, nodes, f, expr, name or "density1d", norm_tol)


def _grid_measure(x, w, vals, N, a, b, nodes, f, expr, name, norm_tol) -> MeasureModel:
    total = float(np.sum(w))
    if abs(total - 1.0) > norm_tol:
        raise ValueError(f"density is not normalized: integral over support = {total!r}")
    M = [SymKernel.scalar(1.0, 1)]
    span = b - a
    for n in range(1, N + 1):
        mn = float(np.sum(w * x ** n))
        edge = max(abs(a) ** n * vals[0], abs(b) ** n * vals[-1]) * span
        if edge > 1e-10 * max(1.0, float(np.sum(w * np.abs(x) ** n))):
            raise ValueError(f"moment {n} does not converge at support truncation {(a, b)} (edge mass {edge:.3g})")
        M.append(SymKernel(1, n, [mn]))
    return MeasureModel(
        d=1, moments=tuple(M), kind="density1d", name=name,
        quadrature=QuadratureSpec("trapezoid-grid", nodes, (a, b)),
        points=x[:, None], weights=w, density=f, density_expr=expr,
    )


def product_measure(*factors: MeasureModel, name: Optional[str] = None) -> MeasureModel:
    """Tensor product of measures; moments by the exponential-series product."""
    if not factors:
        raise ValueError("need at least one factor")
    d = sum(m.d for m in factors)
    order = min(m.order for m in factors)
    M = [embed(factors[0].moments[n], d, 0) for n in range(order + 1)]
    offset = factors[0].d
    for fac in factors[1:]:
        E = [embed(fac.moments[n], d, offset) for n in range(order + 1)]
        M = [
            sum((math.comb(n, k) * sym_product(M[k], E[n - k]) for k in range(n + 1)), SymKernel.zeros(d, n))
            for n in range(order + 1)
        ]
        offset += fac.d
    pts, wts = factors[0].points, factors[0].weights
    for fac in factors[1:]:
        if pts is None or fac.points is None:
            pts = wts = None
            break
        i, j = np.meshgrid(np.arange(len(wts)), np.arange(len(fac.weights)), indexing="ij")
        pts = np.concatenate([pts[i.reshape(-1)], fac.points[j.reshape(-1)]], axis=1)
        wts = wts[i.reshape(-1)] * fac.weights[j.reshape(-1)]

    closed = None
    if all(m.closed_form is not None for m in factors):
        def closed(theta):
            out, o = 1.0 + 0j, 0
            for m in factors:
                out *= m.closed_form(theta[o:o + m.d])
                o += m.d
            return out

    return MeasureModel(
        d=d, moments=tuple(M), kind="product", name=name or "x".join(m.name for m in factors),
        quadrature=QuadratureSpec("product", 0 if wts is None else len(wts)),
        points=pts, weights=wts, closed_form=closed,
        params={"factors": [m.name for m in factors]},
    )


def point_mass(d: int, order: int = DEFAULT_ORDER) -> MeasureModel:
    """Dirac measure at 0 (degenerate; used only as a diagnostic baseline)."""
    M = (SymKernel.scalar(1.0, d),) + tuple(SymKernel.zeros(d, n) for n in range(1, order + 1))
    return MeasureModel(d=d, moments=M, kind="custom", name=f"delta0-{d}d",
                        quadrature=QuadratureSpec("pmf-sum", 1),
                        points=np.zeros((1, d)), weights=np.ones(1),
                        closed_form=lambda th: 1.0 + 0j)


def measure_from_spec(spec: dict, order: int = DEFAULT_ORDER, name: Optional[str] = None) -> MeasureModel:
    """Build a measure from its JSON description (see README for the schema)."""
    kind = spec.get("kind")
    quad = spec.get("quadrature", {})
    if kind == "gaussian":
        return gaussian_measure(int(spec.get("d", 1)), mean=spec.get("mean"),
                                variance=float(spec.get("variance", 1.0)), order=order,
                                nodes=quad.get("nodes"), name=name)
    if kind == "poisson1d":
        if "intensity" not in spec:
            raise ValueError("poisson1d spec needs 'intensity'")
        return poisson_measure_1d(float(spec["intensity"]), order=order, name=name)
    if kind == "density1d":
        dens = spec.get("density") or {}
        support = tuple(spec.get("support", (-12.0, 12.0)))
        if "expr" in dens:
            return density_measure_1d(dens["expr"], support, N=order,
                                      nodes=int(quad.get("nodes", 4001)), name=name)
        if "grid" in dens:
            x = np.asarray(dens["grid"]["x"], dtype=float)
            vals = np.asarray(dens["grid"]["rho"], dtype=float)
            w = np.zeros_like(x)
            dx = np.diff(x)
            w[:-1] += 0.5 * dx * vals[:-1]
            w[1:] += 0.5 * dx * vals[1:]
            return _grid_measure(x, w, vals, order, x[0], x[-1], len(x), None, None,
                                 name or "density1d-grid", 1e-8)
        raise ValueError("density1d spec needs density.expr or density.grid")
    if kind == "product":
        facs = [measure_from_spec(s, order) for s in spec.get("factors", [])]
        return product_measure(*facs, name=name)
    raise ValueError(f"unknown measure kind {kind!r}")


def _check_theta(mu: MeasureModel, theta) -> np.ndarray:
    theta = np.atleast_1d(np.asarray(theta, dtype=complex))
    if theta.shape != (mu.d,):
        raise ValueError(f"theta has shape {theta.shape}, measure dimension is {mu.d}")
    return theta


def laplace_eval(mu: MeasureModel, theta, N: Optional[int] = None) -> SeriesValue:
    """Partial sum sum_{n<=N} <M_n, theta^n>/n! next to the closed form."""
    theta = _check_theta(mu, theta)
    N = mu.order if N is None else N
    if N > mu.order:
        raise ValueError(f"truncation {N} exceeds stored moments ({mu.order})")
    partial = sum(apply_to_point(mu.moments[n], theta) / math.factorial(n) for n in range(N + 1))
    return SeriesValue(complex(partial), mu.laplace(theta))


def analyticity_check(mu: MeasureModel, N: int, directions: Sequence, w: Optional[WeightModel] = None,
                      ps: Sequence[int] = (0, 1, 2)) -> AnalyticityReport:
    """Smallest C with |<M_n, theta^n>| <= n! C^n |theta|_p^n on the directions, n <= N."""
    if N < 2:
        raise ValueError("N must be >= 2")
    w = w or WeightModel((1.0,) * mu.d)
    dirs = [_check_theta(mu, t) for t in directions]
    C, ratios, flags = {}, {}, {}
    for p in ps:
        r = []
        for n in range(1, N + 1):
            best = 0.0
            for t in dirs:
                tn = w.vector_norm(t, p)
                if tn == 0:
                    continue
                val = abs(apply_to_point(mu.moments[n], t)) / (math.factorial(n) * tn ** n)
                best = max(best, val ** (1.0 / n))
            r.append(best)
        ratios[p] = r
        C[p] = max(r) if r else 0.0
        half = r[: max(1, N // 2)]
        flags[p] = bool(max(half) > 0 and r[-1] > 2.0 * max(half))
    return AnalyticityReport(N=N, C=C, ratios=ratios, super_factorial=flags)


def integrate(mu: MeasureModel, f: Callable, vectorized: bool = True) -> complex:
    """Quadrature approximation of the integral of f against mu.

    With ``vectorized`` the integrand receives all nodes at once as an array
    of shape (K, d); otherwise it is called once per node with a length-d vector.
    """
    if mu.points is None or mu.weights is None:
        raise ValueError(f"measure {mu.name!r} has no quadrature backend")
    if vectorized:
        vals = np.asarray(f(mu.points))
    else:
        vals = np.array([f(x) for x in mu.points])
    return complex(np.sum(mu.weights * vals))
