"""Finite kernel sequences (phi^(0), ..., phi^(N)) with an explicit basis tag.

``P`` sequences are test functions sum_n <P_n, phi^(n)>, ``Q`` sequences are
distributions sum_n Q_n(Phi^(n)), ``monomial`` sequences are polynomials
sum_n <x^n, f^(n)>.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, replace
from typing import Optional, Sequence

import numpy as np

from .tensor import SymKernel, multi_indices

__all__ = ["KernelSequence", "BASES"]

BASES = ("P", "Q", "monomial")


@dataclass(frozen=True, eq=False)
class KernelSequence:
    d: int
    basis: str
    kernels: tuple[SymKernel, ...]
    measure_id: Optional[str] = None
    n_max: Optional[int] = None  # truncation cap applied when this sequence was produced

    def __post_init__(self):
        if self.basis not in BASES:
            raise ValueError(f"unknown basis {self.basis!r}")
        ks = tuple(self.kernels)
        if not ks:
            raise ValueError("a kernel sequence needs at least the degree-0 slot")
        for n, k in enumerate(ks):
            if k.n != n or k.d != self.d:
                raise ValueError(f"slot {n} holds a kernel with d={k.d}, n={k.n}")
        object.__setattr__(self, "kernels", ks)

    @property
    def N(self) -> int:
        return len(self.kernels) - 1

    def __getitem__(self, n: int) -> SymKernel:
        if n <= self.N:
            return self.kernels[n]
        return SymKernel.zeros(self.d, n)

    def __len__(self):
        return len(self.kernels)

    # -- constructors -------------------------------------------------
    @classmethod
    def zeros(cls, d: int, N: int, basis: str, measure_id: Optional[str] = None) -> "KernelSequence":
        return cls(d, basis, tuple(SymKernel.zeros(d, n) for n in range(N + 1)), measure_id)

    @classmethod
    def constant(cls, c: complex, d: int, basis: str, measure_id: Optional[str] = None,
                 N: int = 0) -> "KernelSequence":
        ks = [SymKernel.scalar(c, d)] + [SymKernel.zeros(d, n) for n in range(1, N + 1)]
        return cls(d, basis, tuple(ks), measure_id)

    @classmethod
    def single(cls, kernel: SymKernel, basis: str, measure_id: Optional[str] = None,
               N: Optional[int] = None) -> "KernelSequence":
        """The sequence whose only nonzero slot is ``kernel`` (e.g. Q_n(Phi))."""
        N = kernel.n if N is None else N
        ks = [kernel if n == kernel.n else SymKernel.zeros(kernel.d, n) for n in range(N + 1)]
        return cls(kernel.d, basis, tuple(ks), measure_id)

    @classmethod
    def from_kernels(cls, kernels: Sequence[SymKernel], basis: str, measure_id: Optional[str] = None):
        return cls(kernels[0].d, basis, tuple(kernels), measure_id)

    @classmethod
    def random(cls, rng: np.random.Generator, d: int, N: int, basis: str, measure_id: Optional[str] = None,
               complex_: bool = False, scale: float = 1.0) -> "KernelSequence":
        ks = tuple(SymKernel.random(rng, d, n, complex_=complex_, scale=scale) for n in range(N + 1))
        return cls(d, basis, ks, measure_id)

    # -- algebra ------------------------------------------------------
    def _compatible(self, other: "KernelSequence"):
        if other.d != self.d or other.basis != self.basis:
            raise ValueError(f"incompatible sequences: ({self.d}, {self.basis}) vs ({other.d}, {other.basis})")
        check_measure(self, other)

    def __add__(self, other: "KernelSequence") -> "KernelSequence":
        self._compatible(other)
        N = max(self.N, other.N)
        return replace(self, kernels=tuple(self[n] + other[n] for n in range(N + 1)),
                       measure_id=self.measure_id or other.measure_id, n_max=None)

    def __sub__(self, other: "KernelSequence") -> "KernelSequence":
        return self + (-1.0) * other

    def __mul__(self, c) -> "KernelSequence":
        return replace(self, kernels=tuple(k * c for k in self.kernels))

    __rmul__ = __mul__

    def truncate(self, N: int) -> "KernelSequence":
        return replace(self, kernels=tuple(self[n] for n in range(N + 1)))

    def max_abs(self) -> float:
        return max(k.max_abs() for k in self.kernels)

    def distance(self, other: "KernelSequence", N: Optional[int] = None) -> float:
        """Max coefficient difference through degree N (default: both lengths)."""
        N = max(self.N, other.N) if N is None else N
        return max((self[n] - other[n]).max_abs() for n in range(N + 1))

    # -- serialization ------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "N": self.N,
            "basis": self.basis,
            "measure_id": self.measure_id,
            "kernels": [
                {"n": k.n, "entries": [[list(a), float(v.real) + 0.0, float(v.imag) + 0.0] for a, v in k.entries()]}
                for k in self.kernels
            ],
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, data: dict) -> "KernelSequence":
        d, N = int(data["d"]), int(data["N"])
        slots = {int(k["n"]): k for k in data.get("kernels", [])}
        ks = []
        for n in range(N + 1):
            entries = {}
            for a, re, im in slots.get(n, {"entries": []})["entries"]:
                entries[tuple(a)] = complex(re, im)
            ks.append(SymKernel.from_dict(d, n, entries))
        return cls(d, data["basis"], tuple(ks), data.get("measure_id"))

    @classmethod
    def from_json(cls, text: str) -> "KernelSequence":
        return cls.from_dict(json.loads(text))

    def table(self) -> str:
        lines = [f"# basis={self.basis} d={self.d} N={self.N} measure={self.measure_id}"]
        for k in self.kernels:
            for a in multi_indices(self.d, k.n):
                v = k[a] + 0.0
                lines.append(f"{k.n}\t{a}\t{v.real + 0.0:.12g}\t{v.imag + 0.0:.12g}")
        return "\n".join(lines)


def check_measure(a: KernelSequence, b: KernelSequence):
    if a.measure_id is not None and b.measure_id is not None and a.measure_id != b.measure_id:
        raise ValueError(f"measure mismatch: {a.measure_id!r} vs {b.measure_id!r}")
