import itertools
import math

import numpy as np
import pytest

from appellsys.tensor import SymKernel


def to_full(f: SymKernel) -> np.ndarray:
    """Dense d^n array of a symmetric kernel."""
    if f.n == 0:
        return np.array(f.coeffs[0])
    T = np.zeros((f.d,) * f.n, dtype=complex)
    for idx in itertools.product(range(f.d), repeat=f.n):
        alpha = tuple(idx.count(i) for i in range(f.d))
        T[idx] = f[alpha]
    return T


def symmetrize(T: np.ndarray) -> np.ndarray:
    n = T.ndim
    if n == 0:
        return T
    return sum(np.transpose(T, p) for p in itertools.permutations(range(n))) / math.factorial(n)


def from_full(T: np.ndarray, d: int) -> SymKernel:
    n = T.ndim
    if n == 0:
        return SymKernel.scalar(complex(T), d)
    entries = {}
    for idx in itertools.product(range(d), repeat=n):
        alpha = tuple(idx.count(i) for i in range(d))
        entries[alpha] = T[idx]
    return SymKernel.from_dict(d, n, entries)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
