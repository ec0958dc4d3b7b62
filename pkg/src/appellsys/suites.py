"""Identity and oracle suites behind ``appellsys run``.

Each suite maps a run context to a list of cases; a case passes when its
residual is at most its tolerance.  Residuals are absolute unless the case
name ends in ``-rel``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.special import eval_hermite

from .appell import (AppellSystem, build_appell, check_addition, check_expectation, check_generator,
                     check_monomial, p_kernel, recursion_residual)
from .calculus import (dist_norm, eval_test, eval_test_many, pair, pair_oracle, test_norm)
from .charlier import charlier_from_appell, charlier_gram, charlier_gram_schmidt, charlier_generating
from .measure import MeasureModel, integrate, laplace_eval, measure_from_spec
from .remeasure import cross_expand_residual, retarget_dist, retarget_test
from .sequence import KernelSequence
from .tensor import SymKernel, WeightModel, apply_to_point, pairing, sym_product
from .transforms import delta, radon_nikodym, s_transform
from .wick import unit, wick_inverse, wick_norm_check, wick_product

MIXTURE = "0.5*exp(-(x-1)**2/2)/sqrt(2*pi) + 0.5*exp(-(x+1)**2/2)/sqrt(2*pi)"

DEFAULT_MEASURES = {
    "gaussian1d": {"kind": "gaussian", "d": 1},
    "gaussian2d": {"kind": "gaussian", "d": 2},
    "shifted1d": {"kind": "gaussian", "d": 1, "mean": [0.5]},
    "poisson1": {"kind": "poisson1d", "intensity": 1.0},
    "mixture": {"kind": "density1d", "density": {"expr": MIXTURE}, "support": [-14.0, 14.0]},
}

# identity: coefficient-level identities; pointwise: polynomial identities at sampled
# points, where terms of size ~1e3 cancel; invariance: pairings across measures
DEFAULT_TOLERANCES = {"identity": 1e-12, "pointwise": 1e-11, "quadrature": 1e-7, "series": 1e-8,
                      "invariance": 1e-9}

SUITE_NAMES = ("appell-identities", "biorthogonality", "transforms", "wick", "remeasure", "norms", "charlier")


@dataclass
class Case:
    name: str
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.residual) and self.residual <= self.tolerance)

    def to_dict(self) -> dict:
        return {"name": self.name, "residual": float(self.residual), "tolerance": self.tolerance,
                "pass": self.passed}


@dataclass
class RunContext:
    N: int
    seed: int
    draws: int
    measure_specs: dict
    tolerances: dict
    suite_options: dict = field(default_factory=dict)
    _measures: dict = field(default_factory=dict)
    _systems: dict = field(default_factory=dict)

    @classmethod
    def from_config(cls, cfg: dict, seed: Optional[int] = None) -> "RunContext":
        tol = dict(DEFAULT_TOLERANCES)
        tol.update(cfg.get("tolerances", {}))
        seed = cfg.get("seed") if seed is None else seed
        return cls(N=int(cfg.get("N", 8)), seed=seed, draws=int(cfg.get("draws", 20)),
                   measure_specs=cfg.get("measures", DEFAULT_MEASURES), tolerances=tol,
                   suite_options=cfg.get("suite_options", {}))

    def rng(self, suite: str) -> np.random.Generator:
        if self.seed is None:
            raise ValueError(f"suite {suite!r} is randomized; set 'seed' in the config or pass --seed")
        return np.random.default_rng([int(self.seed), SUITE_NAMES.index(suite)])

    def measure(self, name: str) -> MeasureModel:
        if name not in self._measures:
            if name not in self.measure_specs:
                raise ValueError(f"unknown measure {name!r}")
            self._measures[name] = measure_from_spec(self.measure_specs[name], order=max(24, self.N + 4), name=name)
        return self._measures[name]

    def system(self, name: str, N: Optional[int] = None) -> AppellSystem:
        N = self.N if N is None else N
        key = (name, N)
        if key not in self._systems:
            self._systems[key] = build_appell(self.measure(name), N)
        return self._systems[key]

    def measures_for(self, suite: str, pred: Callable[[MeasureModel], bool] = lambda m: True) -> list[str]:
        names = self.suite_options.get(suite, {}).get("measures", list(self.measure_specs))
        return [n for n in names if pred(self.measure(n))]


def _pt(rng, d, r=1.0):
    return rng.uniform(-r, r, size=d)


def _rel(a, b) -> float:
    return abs(a - b) / max(1.0, abs(b))


def suite_appell(ctx: RunContext) -> list[Case]:
    rng, tol, out = ctx.rng("appell-identities"), ctx.tolerances, []
    for name in ctx.measures_for("appell-identities"):
        sys = ctx.system(name)
        out.append(Case(f"{name}/recursion", recursion_residual(sys), tol["identity"]))
        r1 = r2 = r3 = r3t = 0.0
        for _ in range(ctx.draws):
            n = int(rng.integers(0, ctx.N + 1))
            x, y, th = _pt(rng, sys.d), _pt(rng, sys.d), _pt(rng, sys.d)
            r1 = max(r1, check_generator(sys, n, x, th))
            r2 = max(r2, check_monomial(sys, n, x))
            r3 = max(r3, check_addition(sys, n, x, y))
            r3t = max(r3t, check_addition(sys, n, x, y, trinomial=True))
        out += [Case(f"{name}/P1-generator", r1, tol["pointwise"]),
                Case(f"{name}/P2-monomial", r2, tol["pointwise"]),
                Case(f"{name}/P3-addition", r3, tol["pointwise"]),
                Case(f"{name}/P3-trinomial", r3t, tol["pointwise"])]
        r4 = 0.0
        for m in range(1, ctx.N + 1):
            phi = SymKernel.random(rng, sys.d, m)
            r4 = max(r4, abs(check_expectation(sys, m, phi)))
        out.append(Case(f"{name}/P4-expectation", r4, tol["quadrature"]))
        mu = sys.measure
        if mu.kind == "gaussian" and mu.d == 1 and not np.any(mu.params.get("mean", [0.0])) \
                and mu.params.get("variance", 1.0) == 1.0:
            xs = np.linspace(-3, 3, 13)
            r = max(abs(p_kernel(sys, n, [x]).coeffs[0] - 2 ** (-n / 2) * eval_hermite(n, x / math.sqrt(2)))
                    for n in range(ctx.N + 1) for x in xs)
            out.append(Case(f"{name}/hermite-closed-form", r, tol["pointwise"]))
    return out


def suite_biorthogonality(ctx: RunContext) -> list[Case]:
    rng, tol, out = ctx.rng("biorthogonality"), ctx.tolerances, []
    nmax = min(6, ctx.N)
    for name in ctx.measures_for("biorthogonality"):
        sys = ctx.system(name)
        mid = sys.measure_id
        coef = 0.0
        for n in range(nmax + 1):
            for m in range(nmax + 1):
                F, f = SymKernel.random(rng, sys.d, n), SymKernel.random(rng, sys.d, m)
                val = pair(KernelSequence.single(F, "Q", mid), KernelSequence.single(f, "P", mid))
                exp = math.factorial(n) * pairing(F, f) if n == m else 0.0
                coef = max(coef, abs(val - exp))
        out.append(Case(f"{name}/coefficient", coef, tol["identity"]))
        if sys.d == 1 and sys.measure.density_expr is not None:
            quad = 0.0
            for n in range(nmax + 1):
                for m in range(nmax + 1):
                    F, f = SymKernel.random(rng, 1, n), SymKernel.random(rng, 1, m)
                    val = pair_oracle(KernelSequence.single(F, "Q", mid), KernelSequence.single(f, "P", mid), sys)
                    exp = math.factorial(n) * pairing(F, f) if n == m else 0.0
                    quad = max(quad, _rel(val, exp))
            out.append(Case(f"{name}/quadrature-rel", quad, tol["quadrature"]))
    return out


def suite_transforms(ctx: RunContext) -> list[Case]:
    rng, tol, out = ctx.rng("transforms"), ctx.tolerances, []
    for name in ctx.measures_for("transforms"):
        sys = ctx.system(name)
        mid, d, N = sys.measure_id, sys.d, sys.N
        rd = rs = 0.0
        for _ in range(ctx.draws):
            phi = KernelSequence.random(rng, d, N, "P", mid)
            z = _pt(rng, d)
            rd = max(rd, _rel(pair(delta(sys, z), phi), eval_test(phi, sys, z)))
            th = _pt(rng, d, 0.5)
            rs = max(rs, _rel(s_transform(delta(sys, z), th), sum(
                apply_to_point(p_kernel(sys, n, z), th) / math.factorial(n) for n in range(N + 1))))
        out.append(Case(f"{name}/delta-evaluates-rel", rd, tol["identity"]))
        out.append(Case(f"{name}/S-delta-rel", rs, tol["identity"]))
        d0 = delta(sys, np.zeros(d))
        cauchy = max((sum((sym_product(d0[k], sys.M[n - k] / math.factorial(n - k)) for k in range(n + 1)),
                          SymKernel.zeros(d, n)) - (SymKernel.scalar(1.0, d) if n == 0 else SymKernel.zeros(d, n))
                      ).max_abs() for n in range(N + 1))
        out.append(Case(f"{name}/S-delta0-times-l", cauchy, tol["identity"]))
        if d == 1:
            rr = 0.0
            for z in (-1.0, -0.5, 0.5, 1.0):
                phi = KernelSequence.random(rng, 1, min(N, 6), "P", mid)
                val = pair(radon_nikodym(sys, [z], phi.N), phi)
                ref = integrate(sys.measure, lambda pts: eval_test_many(phi, sys, pts - z))
                rr = max(rr, _rel(val, ref))
            out.append(Case(f"{name}/radon-nikodym-shift-rel", rr, tol["quadrature"]))
    return out


def suite_wick(ctx: RunContext) -> list[Case]:
    rng, tol, out = ctx.rng("wick"), ctx.tolerances, []
    N = min(ctx.N, 8)
    for d in sorted({ctx.measure(n).d for n in ctx.measures_for("wick")}):
        w = WeightModel(tuple(2.0 + i for i in range(d)))
        rs = rc = ra = ri = rn = 0.0
        for _ in range(ctx.draws):
            A, B, C = (KernelSequence.random(rng, d, N, "Q", None, scale=0.5) for _ in range(3))
            th = _pt(rng, d, 0.5)
            AB = wick_product(A, B)
            rs = max(rs, _rel(s_transform(AB, th), s_transform(A, th) * s_transform(B, th)))
            rc = max(rc, AB.distance(wick_product(B, A)))
            ra = max(ra, wick_product(AB, C).distance(wick_product(A, wick_product(B, C))))
            c0 = SymKernel.scalar(rng.choice([-1, 1]) * rng.uniform(0.5, 2.0), d)
            Ai = KernelSequence(d, "Q", (c0,) + A.kernels[1:], None)
            ri = max(ri, wick_product(Ai, wick_inverse(Ai), n_max=N).distance(unit(d, None, N)))
            p1, q1, p2, q2 = (int(v) for v in rng.integers(0, 3, size=4))
            rep = wick_norm_check(A, B, w, p1, q1, p2, q2)
            rn = max(rn, max(0.0, rep.lhs - rep.rhs) / rep.rhs)
        out += [Case(f"d{d}/S-multiplicative-rel", rs, tol["identity"]),
                Case(f"d{d}/commutative", rc, tol["identity"]),
                Case(f"d{d}/associative", ra, tol["identity"]),
                Case(f"d{d}/inverse", ri, tol["identity"]),
                Case(f"d{d}/norm-inequality-rel", rn, tol["identity"])]
    return out


def suite_remeasure(ctx: RunContext) -> list[Case]:
    rng, tol, out = ctx.rng("remeasure"), ctx.tolerances, []
    pairs = ctx.suite_options.get("remeasure", {}).get(
        "pairs", [p for p in (["gaussian1d", "shifted1d"], ["gaussian1d", "mixture"]) if set(p) <= set(ctx.measure_specs)])
    for a, b in pairs:
        smu, shat = ctx.system(a), ctx.system(b)
        inv = ident = cross = 0.0
        for _ in range(ctx.draws):
            phi = KernelSequence.random(rng, smu.d, ctx.N, "P", smu.measure_id, scale=0.5)
            Phi_hat = KernelSequence.random(rng, smu.d, ctx.N, "Q", shat.measure_id, scale=0.5)
            lhs = pair(retarget_dist(Phi_hat, smu, shat), phi)
            rhs = pair(Phi_hat, retarget_test(phi, smu, shat))
            inv = max(inv, abs(lhs - rhs))
            ident = max(ident, retarget_test(phi, smu, smu).distance(
                KernelSequence(phi.d, "P", phi.kernels, smu.measure_id)))
            n = int(rng.integers(0, ctx.N + 1))
            cross = max(cross, cross_expand_residual(smu, shat, n, _pt(rng, smu.d)))
        out += [Case(f"{a}->{b}/pairing-invariance", inv, tol["invariance"]),
                Case(f"{a}->{a}/identity", ident, tol["identity"]),
                Case(f"{a}->{b}/cross-expansion", cross, tol["pointwise"])]
    return out


def suite_norms(ctx: RunContext) -> list[Case]:
    rng, tol, out = ctx.rng("norms"), ctx.tolerances, []
    N = ctx.N
    for d in sorted({ctx.measure(n).d for n in ctx.measures_for("norms")}):
        w = WeightModel(tuple(2.0 + i for i in range(d)))
        expo = mono = dual = 0.0
        for _ in range(ctx.draws):
            th = _pt(rng, d, 0.8)
            p, q = int(rng.integers(0, 3)), int(rng.integers(0, 3))
            e = KernelSequence.from_kernels([SymKernel.tensor_power(th, n) / math.factorial(n)
                                             for n in range(N + 1)], "P")
            ref = sum(2.0 ** (n * q) * w.vector_norm(th, p) ** (2 * n) for n in range(N + 1))
            expo = max(expo, _rel(test_norm(e, w, p, q) ** 2, ref))
            phi = KernelSequence.random(rng, d, N, "P", None)
            Phi = KernelSequence.random(rng, d, N, "Q", None)
            viol = [test_norm(phi, w, p, q) - test_norm(phi, w, p + 1, q),
                    test_norm(phi, w, p, q) - test_norm(phi, w, p, q + 1),
                    dist_norm(Phi, w, p + 1, q) - dist_norm(Phi, w, p, q),
                    dist_norm(Phi, w, p, q + 1) - dist_norm(Phi, w, p, q),
                    dist_norm(Phi, w, p, q, 1.0) - dist_norm(Phi, w, p, q, 0.5),
                    dist_norm(Phi, w, p, q, 0.5) - dist_norm(Phi, w, p, q, 0.0)]
            mono = max(mono, max(0.0, *viol))
            dual = max(dual, max(0.0, abs(pair(Phi, phi)) - dist_norm(Phi, w, p, q) * test_norm(phi, w, p, q)))
        out += [Case(f"d{d}/mu-exponential-norm-rel", expo, tol["identity"]),
                Case(f"d{d}/monotonicity", mono, tol["identity"]),
                Case(f"d{d}/duality", dual, tol["identity"])]
    return out


def suite_charlier(ctx: RunContext) -> list[Case]:
    tol, out = ctx.tolerances, []
    nmax = min(6, ctx.N)
    for name in ctx.measures_for("charlier", lambda m: m.kind == "poisson1d"):
        mu = ctx.measure(name)
        lam = float(mu.params["intensity"])
        polys = charlier_gram_schmidt(mu, nmax)
        G = charlier_gram(mu, polys)
        diag = np.array([math.factorial(n) * lam ** n for n in range(nmax + 1)])
        off = np.abs(G - np.diag(np.diag(G))).max()
        out.append(Case(f"{name}/orthogonality-offdiag", off, tol["quadrature"]))
        out.append(Case(f"{name}/orthogonality-diag-rel", float(np.max(np.abs(np.diag(G) - diag) / diag)),
                        tol["quadrature"]))
        sys = ctx.system(name, nmax)
        xs = np.arange(0, 8, dtype=float)
        cross = max(_rel(charlier_from_appell(sys, n, x), np.polynomial.polynomial.polyval(x, polys[n]))
                    for n in range(nmax + 1) for x in xs)
        out.append(Case(f"{name}/appell-cross-check-rel", cross, tol["quadrature"]))
        Ng = min(20, mu.order)
        sysg = ctx.system(name, Ng)
        gen = 0.0
        for x in xs[:5]:
            for th in (-0.2, 0.1, 0.2):
                s = sum(charlier_from_appell(sysg, n, x) * th ** n / math.factorial(n) for n in range(Ng + 1))
                gen = max(gen, _rel(s, charlier_generating(x, th, lam)))
        out.append(Case(f"{name}/generating-function-rel", gen, tol["series"]))
        lap = max(abs(laplace_eval(mu, [th]).error or 0.0) for th in np.linspace(-0.4, 0.4, 9))
        out.append(Case(f"{name}/laplace-partial-sums", lap, tol["series"]))
    return out


SUITES: dict[str, Callable[[RunContext], list[Case]]] = {
    "appell-identities": suite_appell,
    "biorthogonality": suite_biorthogonality,
    "transforms": suite_transforms,
    "wick": suite_wick,
    "remeasure": suite_remeasure,
    "norms": suite_norms,
    "charlier": suite_charlier,
}
