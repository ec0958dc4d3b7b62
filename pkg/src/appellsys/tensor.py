"""Symmetric tensor kernels over a weighted finite-dimensional complex space.

A degree-``n`` symmetric tensor over ``C^d`` is stored by multi-index: the
coefficient ``T[alpha]`` is the value of the full tensor on any index tuple
of type ``alpha``.  The multiplicity ``n!/alpha!`` only enters the pairing and
norm formulas, so that

    <x^{(x)n}, f> = sum_alpha (n!/alpha!) T[alpha] x^alpha

and ``|f|_0`` equals the Hilbert-Schmidt norm of the full tensor.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

__all__ = [
    "SymKernel",
    "WeightModel",
    "multi_indices",
    "sym_product",
    "sym_power",
    "embed",
    "pairing",
    "contract",
    "weighted_norm",
    "hs_norm",
    "apply_to_point",
]


@lru_cache(maxsize=None)
def multi_indices(d: int, n: int) -> tuple[tuple[int, ...], ...]:
    """All multi-indices of length ``d`` and degree ``n`` in lexicographic
    order (largest first exponent first)."""
    if d <= 0:
        raise ValueError("dimension must be positive")
    if d == 1:
        return ((n,),)
    out = []
    for a in range(n, -1, -1):
        for rest in multi_indices(d - 1, n - a):
            out.append((a,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def _index(d: int, n: int) -> dict[tuple[int, ...], int]:
    return {a: i for i, a in enumerate(multi_indices(d, n))}


@lru_cache(maxsize=None)
def _exponents(d: int, n: int) -> np.ndarray:
    arr = np.array(multi_indices(d, n), dtype=np.int64).reshape(-1, d)
    arr.setflags(write=False)
    return arr


@lru_cache(maxsize=None)
def _multiplicity(d: int, n: int) -> np.ndarray:
    """n!/alpha! for every multi-index of degree n."""
    fn = math.factorial(n)
    w = np.array(
        [fn // math.prod(math.factorial(a) for a in alpha) for alpha in multi_indices(d, n)],
        dtype=float,
    )
    w.setflags(write=False)
    return w


@lru_cache(maxsize=None)
def _merge_table(d: int, n: int, m: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Index triples (i, j, k) with alpha_i + beta_j = gamma_k, |alpha|=n, |beta|=m."""
    target = _index(d, n + m)
    I, J, K = [], [], []
    for i, a in enumerate(multi_indices(d, n)):
        for j, b in enumerate(multi_indices(d, m)):
            I.append(i)
            J.append(j)
            K.append(target[tuple(x + y for x, y in zip(a, b))])
    return np.array(I, dtype=np.intp), np.array(J, dtype=np.intp), np.array(K, dtype=np.intp)


@dataclass(frozen=True, eq=False)
class SymKernel:
    """Degree-``n`` symmetric tensor over ``C^d``; immutable."""

    d: int
    n: int
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).reshape(-1)
        size = len(multi_indices(self.d, self.n))
        if c.shape[0] != size:
            raise ValueError(f"expected {size} coefficients for d={self.d}, n={self.n}, got {c.shape[0]}")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    # -- constructors -------------------------------------------------
    @classmethod
    def zeros(cls, d: int, n: int) -> "SymKernel":
        return cls(d, n, np.zeros(len(multi_indices(d, n)), dtype=complex))

    @classmethod
    def scalar(cls, c: complex, d: int) -> "SymKernel":
        return cls(d, 0, np.array([c], dtype=complex))

    @classmethod
    def unit(cls, d: int, i: int) -> "SymKernel":
        """The basis vector e_i as a degree-1 kernel."""
        c = np.zeros(d, dtype=complex)
        c[i] = 1.0
        return cls(d, 1, c)

    @classmethod
    def vector(cls, v: Sequence[complex]) -> "SymKernel":
        v = np.atleast_1d(np.asarray(v, dtype=complex))
        return cls(v.shape[0], 1, v)

    @classmethod
    def tensor_power(cls, x: Sequence[complex], n: int) -> "SymKernel":
        """x^{(x)n}; its coefficient at alpha is x^alpha."""
        x = np.atleast_1d(np.asarray(x, dtype=complex))
        d = x.shape[0]
        return cls(d, n, np.prod(x[None, :] ** _exponents(d, n), axis=1))

    @classmethod
    def from_dict(cls, d: int, n: int, entries: dict) -> "SymKernel":
        idx = _index(d, n)
        c = np.zeros(len(idx), dtype=complex)
        for alpha, val in entries.items():
            alpha = tuple(alpha)
            if len(alpha) != d or sum(alpha) != n:
                raise ValueError(f"multi-index {alpha} does not have length {d} and degree {n}")
            c[idx[alpha]] = val
        return cls(d, n, c)

    @classmethod
    def random(cls, rng: np.random.Generator, d: int, n: int, complex_: bool = False, scale: float = 1.0):
        size = len(multi_indices(d, n))
        c = rng.standard_normal(size)
        if complex_:
            c = c + 1j * rng.standard_normal(size)
        return cls(d, n, scale * c)

    # -- access -------------------------------------------------------
    @property
    def indices(self) -> tuple[tuple[int, ...], ...]:
        return multi_indices(self.d, self.n)

    def __getitem__(self, alpha) -> complex:
        return self.coeffs[_index(self.d, self.n)[tuple(alpha)]]

    def entries(self) -> Iterator[tuple[tuple[int, ...], complex]]:
        return zip(self.indices, self.coeffs)

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.coeffs))) if self.coeffs.size else 0.0

    def conj(self) -> "SymKernel":
        return SymKernel(self.d, self.n, np.conj(self.coeffs))

    def _check(self, other: "SymKernel"):
        if not isinstance(other, SymKernel):
            return NotImplemented
        if other.d != self.d or other.n != self.n:
            raise ValueError(f"kernel shape mismatch: (d={self.d}, n={self.n}) vs (d={other.d}, n={other.n})")
        return None

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return SymKernel(self.d, self.n, self.coeffs + other.coeffs)

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return SymKernel(self.d, self.n, self.coeffs - other.coeffs)

    def __neg__(self):
        return SymKernel(self.d, self.n, -self.coeffs)

    def __mul__(self, c):
        if isinstance(c, SymKernel):
            return NotImplemented
        return SymKernel(self.d, self.n, self.coeffs * complex(c))

    __rmul__ = __mul__

    def __truediv__(self, c):
        return SymKernel(self.d, self.n, self.coeffs / complex(c))

    def __repr__(self):
        terms = ", ".join(f"{a}: {v:.6g}" for a, v in self.entries() if v != 0)
        return f"SymKernel(d={self.d}, n={self.n}, {{{terms}}})"


@dataclass(frozen=True)
class WeightModel:
    """Diagonal weights lambda_i >= 1 defining the norm scale |.|_p, p in Z."""

    lam: tuple[float, ...]

    def __post_init__(self):
        lam = tuple(float(v) for v in np.atleast_1d(self.lam))
        if any(v < 1.0 for v in lam):
            raise ValueError("weights must satisfy lambda_i >= 1")
        object.__setattr__(self, "lam", lam)

    @property
    def d(self) -> int:
        return len(self.lam)

    def vector_norm(self, v: Sequence[complex], p: int) -> float:
        v = np.atleast_1d(np.asarray(v, dtype=complex))
        lam = np.asarray(self.lam)
        return float(np.sqrt(np.sum(np.abs(v) ** 2 * lam ** (2 * p))))


def _same_d(f: SymKernel, g: SymKernel):
    if f.d != g.d:
        raise ValueError(f"dimension mismatch: {f.d} vs {g.d}")


def sym_product(f: SymKernel, g: SymKernel) -> SymKernel:
    """Symmetrized tensor product f (x)^ g.

    In polynomial coefficients c_alpha = (n!/alpha!) T_alpha this is ordinary
    polynomial multiplication, which is how it is computed.
    """
    _same_d(f, g)
    d, n, m = f.d, f.n, g.n
    if n == 0:
        return g * f.coeffs[0]
    if m == 0:
        return f * g.coeffs[0]
    I, J, K = _merge_table(d, n, m)
    cf = f.coeffs * _multiplicity(d, n)
    cg = g.coeffs * _multiplicity(d, m)
    out = np.zeros(len(multi_indices(d, n + m)), dtype=complex)
    np.add.at(out, K, cf[I] * cg[J])
    return SymKernel(d, n + m, out / _multiplicity(d, n + m))


def embed(f: SymKernel, d_total: int, offset: int) -> SymKernel:
    """Place a kernel over C^{d_f} on the coordinates offset..offset+d_f-1 of C^{d_total}."""
    if offset < 0 or offset + f.d > d_total:
        raise ValueError("embedding does not fit")
    out = {}
    for alpha, v in f.entries():
        full = (0,) * offset + alpha + (0,) * (d_total - offset - f.d)
        out[full] = v
    return SymKernel.from_dict(d_total, f.n, out)


def sym_power(f: SymKernel, k: int) -> SymKernel:
    out = SymKernel.scalar(1.0, f.d)
    for _ in range(k):
        out = sym_product(out, f)
    return out


def contract(Phi: SymKernel, phi: SymKernel) -> SymKernel:
    """Partial pairing of Phi (degree n) against phi (degree m >= n).

    The result r has degree m - n and satisfies
    <x^{(x)(m-n)} (x)^ Phi, phi> = <x^{(x)(m-n)}, r> for all x; explicitly
    r_alpha = sum_beta (n!/beta!) Phi_beta phi_{alpha+beta}.
    """
    _same_d(Phi, phi)
    n, m = Phi.n, phi.n
    if m < n:
        raise ValueError(f"cannot contract a degree-{n} kernel against degree {m}")
    d, k = phi.d, m - n
    if n == 0:
        return phi * Phi.coeffs[0]
    I, J, K = _merge_table(d, k, n)
    wPhi = Phi.coeffs * _multiplicity(d, n)
    out = np.zeros(len(multi_indices(d, k)), dtype=complex)
    np.add.at(out, I, wPhi[J] * phi.coeffs[K])
    return SymKernel(d, k, out)


def pairing(f: SymKernel, g: SymKernel) -> complex:
    """Full-tensor bilinear pairing sum_alpha (n!/alpha!) f_alpha g_alpha."""
    _same_d(f, g)
    if f.n != g.n:
        raise ValueError("pairing needs equal degrees")
    return complex(np.sum(_multiplicity(f.d, f.n) * f.coeffs * g.coeffs))


def weighted_norm(f: SymKernel, p: int, w: WeightModel) -> float:
    if w.d != f.d:
        raise ValueError(f"dimension mismatch: kernel d={f.d}, weights d={w.d}")
    loglam = np.log(np.asarray(w.lam))
    scale = np.exp(2 * p * (_exponents(f.d, f.n) @ loglam))
    return float(np.sqrt(np.sum(_multiplicity(f.d, f.n) * np.abs(f.coeffs) ** 2 * scale)))


def hs_norm(w: WeightModel, p_hi: int, p_lo: int) -> float:
    """Hilbert-Schmidt norm of the embedding H_{p_hi} -> H_{p_lo}."""
    if p_hi <= p_lo:
        raise ValueError("hs_norm needs p_hi > p_lo")
    lam = np.asarray(w.lam)
    return float(np.sqrt(np.sum(lam ** (-2.0 * (p_hi - p_lo)))))


def apply_to_point(f: SymKernel, z: Sequence[complex]) -> complex:
    """<z^{(x)n}, f>."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    if z.shape[0] != f.d:
        raise ValueError(f"point has dimension {z.shape[0]}, kernel {f.d}")
    mono = np.prod(z[None, :] ** _exponents(f.d, f.n), axis=1)
    return complex(np.sum(_multiplicity(f.d, f.n) * f.coeffs * mono))


def apply_to_points(f: SymKernel, Z) -> np.ndarray:
    """<z^{(x)n}, f> for every row z of Z, shape (K, d)."""
    Z = np.asarray(Z, dtype=complex).reshape(-1, f.d)
    mono = np.prod(Z[:, None, :] ** _exponents(f.d, f.n)[None, :, :], axis=2)
    return mono @ (_multiplicity(f.d, f.n) * f.coeffs)
