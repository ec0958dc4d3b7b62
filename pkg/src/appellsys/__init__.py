"""Appell polynomials, biorthogonal systems and Wick calculus for non-Gaussian measures,
on a finite-dimensional proxy of the nuclear triple."""
from .appell import AppellSystem, build_appell, p_kernel
from .calculus import dist_norm, eval_test, pair, reorder_monomial_to_p, reorder_p_to_monomial, test_norm
from .measure import (MeasureModel, density_measure_1d, gaussian_measure, laplace_eval, measure_from_spec,
                      poisson_measure_1d, product_measure)
from .remeasure import retarget_dist, retarget_test
from .sequence import KernelSequence
from .tensor import SymKernel, WeightModel, contract, pairing, sym_product
from .transforms import c_transform, delta, l_transform, radon_nikodym, s_transform
from .wick import wick_inverse, wick_product

__all__ = [
    "AppellSystem", "build_appell", "p_kernel",
    "dist_norm", "eval_test", "pair", "reorder_monomial_to_p", "reorder_p_to_monomial", "test_norm",
    "MeasureModel", "density_measure_1d", "gaussian_measure", "laplace_eval", "measure_from_spec",
    "poisson_measure_1d", "product_measure",
    "retarget_dist", "retarget_test",
    "KernelSequence",
    "SymKernel", "WeightModel", "contract", "pairing", "sym_product",
    "c_transform", "delta", "l_transform", "radon_nikodym", "s_transform",
    "wick_inverse", "wick_product",
]
