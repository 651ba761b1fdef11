"""Surrogate models: reduced basis + empirical interpolation + spline fits.

The build (offline stage) runs once in :func:`build_surrogate`. Evaluating
the returned :class:`Surrogate` (online stage) costs one spline evaluation
per empirical node plus an ``n x L`` product.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .eim import EIMOperator, build_eim
from .errors import DomainError, InvalidDataError, UnsupportedError, ZeroNormError
from .integration import ZERO_NORM, Quadrature, make_quadrature
from .reduced_basis import ReducedBasis, TrainingSet, reduce_basis
from .splines import Spline, eval_spline, fit_spline

DEFAULT_RULE = "riemann"
DEFAULT_GREEDY_TOL = 1e-12
DEFAULT_POLY_DEG = 3


@dataclass(frozen=True, eq=False)
class Surrogate:
    """A built surrogate model; call it with a parameter value.

    ``fits`` is a single vector-valued spline whose column ``i`` fits the
    training values at empirical node ``i``.
    """

    eim: EIMOperator
    rb: ReducedBasis
    fits: Spline
    parameter_domain: tuple
    physical_points: np.ndarray
    build_report: dict = field(default_factory=dict)

    @property
    def quadrature(self) -> Quadrature:
        return self.rb.quadrature

    @property
    def basis_size(self) -> int:
        return self.eim.basis_size

    def __call__(self, parameter):
        return eval_surrogate(self, parameter)


def build_surrogate(
    training: TrainingSet,
    quadrature: Quadrature | None = None,
    greedy_tol=DEFAULT_GREEDY_TOL,
    poly_deg=DEFAULT_POLY_DEG,
    normalize=True,
) -> Surrogate:
    """Build a surrogate for a real, one-parameter training set.

    Parameters
    ----------
    training : TrainingSet
        Real values with strictly increasing scalar parameter points.
    quadrature : Quadrature, optional
        Defaults to the Riemann rule on ``training.physical_points``.
    greedy_tol : float
        Tolerance of the reduced-basis greedy.
    poly_deg : {1, 3, 5}
        Degree of the parameter-space splines.
    normalize : bool
        Run the greedy on normalized training functions.
    """
    if np.iscomplexobj(training.values):
        raise UnsupportedError("surrogates support real-valued training data only")
    params = training.parameter_points
    if params.ndim == 2:
        if params.shape[1] != 1:
            raise UnsupportedError("surrogates support one-dimensional parameters only")
        params = params[:, 0]
    if np.any(np.diff(params) <= 0):
        raise InvalidDataError("parameter points must be strictly increasing")
    if quadrature is None:
        quadrature = make_quadrature(training.physical_points, DEFAULT_RULE)

    start = time.perf_counter()
    rb = reduce_basis(training, quadrature, greedy_tol=greedy_tol, normalize=normalize)
    eim = build_eim(rb)
    fits = fit_spline(params, training.values[:, eim.nodes], degree=poly_deg)
    elapsed = time.perf_counter() - start

    report = {
        "n": rb.size,
        "greedy_errors": rb.greedy_errors.tolist(),
        "final_error": rb.final_error,
        "greedy_tol": float(greedy_tol),
        "poly_deg": int(poly_deg),
        "normalize": bool(normalize),
        "eim_condition_number": eim.condition_number,
        "build_seconds": elapsed,
    }
    return Surrogate(
        eim=eim,
        rb=rb,
        fits=fits,
        parameter_domain=(float(params[0]), float(params[-1])),
        physical_points=np.asarray(training.physical_points, dtype=float),
        build_report=report,
    )


def eval_surrogate(surrogate: Surrogate, parameter):
    """Surrogate values on the physical grid.

    A scalar parameter gives shape ``(L,)``; a 1-D array of ``m`` parameters
    gives ``(m, L)``.
    """
    lo, hi = surrogate.parameter_domain
    parameter = np.asarray(parameter, dtype=float)
    if np.any(~((parameter >= lo) & (parameter <= hi))):
        raise DomainError(f"parameter outside the surrogate domain [{lo}, {hi}]")
    return eval_spline(surrogate.fits, parameter) @ surrogate.eim.b_matrix


def relative_l2_error(approx, truth, quadrature: Quadrature):
    """``||approx - truth|| / ||truth||``, row-wise for 2-D input."""
    truth = np.asarray(truth)
    norm = quadrature.norm(truth)
    if np.any(norm <= ZERO_NORM):
        raise ZeroNormError("reference function has zero norm")
    return quadrature.norm(np.asarray(approx) - truth) / norm
