"""Uniform B-spline curves and surfaces as moving least-squares minimizers."""

from ._kernels import BACKEND
from .bspline_core import (
    Curve,
    KnotVector,
    basis_derivative,
    basis_eval,
    basis_eval_cubic_closed,
    basis_values,
    curve_eval,
    curve_eval_many,
    make_uniform_knots,
)
from .datasets import Dataset, builtin_dataset, parse_points_csv
from .emit import emit_samples
from .equivalence import (
    SearchGrid,
    VerificationReport,
    brute_force_minimize,
    verify_curve_equivalence,
    verify_interpolation,
    verify_surface_equivalence,
    verify_whole_interval,
)
from .mls import (
    MlsProblem,
    MlsSolution,
    PolynomialBasis,
    assemble,
    check_H1,
    mls_apply,
    mls_coefficients,
    monomial_basis,
)
from .surface import Surface, mls_surface_apply, surface_eval, surface_eval_many
from .weights import (
    WeightSpec,
    cardinal_weight,
    make_interpolatory,
    reciprocal_weight,
    weight_eval,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Curve",
    "Dataset",
    "KnotVector",
    "MlsProblem",
    "MlsSolution",
    "PolynomialBasis",
    "SearchGrid",
    "Surface",
    "VerificationReport",
    "WeightSpec",
    "assemble",
    "basis_derivative",
    "basis_eval",
    "basis_eval_cubic_closed",
    "basis_values",
    "brute_force_minimize",
    "builtin_dataset",
    "cardinal_weight",
    "check_H1",
    "curve_eval",
    "curve_eval_many",
    "emit_samples",
    "make_interpolatory",
    "make_uniform_knots",
    "mls_apply",
    "mls_coefficients",
    "mls_surface_apply",
    "monomial_basis",
    "parse_points_csv",
    "reciprocal_weight",
    "surface_eval",
    "surface_eval_many",
    "verify_curve_equivalence",
    "verify_interpolation",
    "verify_surface_equivalence",
    "verify_whole_interval",
    "weight_eval",
]
