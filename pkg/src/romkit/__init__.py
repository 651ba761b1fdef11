"""Reduced bases, empirical interpolants and spline surrogates from sampled data."""

from .basis_ops import Basis
from .eim import EIMOperator, build_eim, eim_interpolate
from .gram_schmidt import gs_add, orthonormalize
from .integration import Quadrature, Rule, make_quadrature
from .reduced_basis import ReducedBasis, TrainingSet, projection_error_history, reduce_basis
from .splines import Spline, eval_spline, fit_spline
from .surrogate import Surrogate, build_surrogate, eval_surrogate, relative_l2_error

__version__ = "0.1.0"

__all__ = [
    "Basis",
    "EIMOperator",
    "Quadrature",
    "ReducedBasis",
    "Rule",
    "Spline",
    "Surrogate",
    "TrainingSet",
    "build_eim",
    "build_surrogate",
    "eim_interpolate",
    "eval_spline",
    "eval_surrogate",
    "fit_spline",
    "gs_add",
    "make_quadrature",
    "orthonormalize",
    "projection_error_history",
    "reduce_basis",
    "relative_l2_error",
]
