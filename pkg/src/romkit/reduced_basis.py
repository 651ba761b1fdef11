"""Greedy reduced-basis construction."""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import DimensionError, InvalidDataError, ZeroNormError
from .gram_schmidt import DEPENDENCE_RTOL, MAX_PASSES, REORTH_TRIGGER, working_dtype
from .integration import ZERO_NORM, Quadrature

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class TrainingSet:
    """Sampled functions, one per row, with the points that index them.

    ``parameter_points`` is ``(N,)`` for scalar parameters or ``(N, d)``.
    """

    values: np.ndarray
    parameter_points: np.ndarray
    physical_points: np.ndarray

    def __post_init__(self):
        values = np.atleast_2d(np.asarray(self.values))
        params = np.asarray(self.parameter_points, dtype=float)
        physical = np.asarray(self.physical_points, dtype=float)
        if values.ndim != 2:
            raise DimensionError("training values must be a 2-D array")
        n, length = values.shape
        if n < 1 or length < 2:
            raise DimensionError(f"training set needs N >= 1 and L >= 2, got {values.shape}")
        if physical.shape != (length,):
            raise DimensionError(
                f"{length} training columns but {physical.size} physical points"
            )
        if len(params) != n or params.ndim not in (1, 2):
            raise DimensionError(f"{n} training rows but {len(params)} parameter points")
        if not np.all(np.isfinite(values)):
            raise InvalidDataError("training values contain non-finite entries")
        rows = params.reshape(n, -1)
        if len(np.unique(rows, axis=0)) != n:
            raise InvalidDataError("parameter points must be unique")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "parameter_points", params)
        object.__setattr__(self, "physical_points", physical)

    @property
    def shape(self):
        return self.values.shape


@dataclass(frozen=True, eq=False)
class ReducedBasis:
    """Output of :func:`reduce_basis`.

    ``greedy_errors[k]`` is the maximum squared projection error over the
    training set onto the first ``k`` elements, i.e. the error of the
    function selected as element ``k`` at the moment it was picked
    (``greedy_errors[0]`` is the squared norm of the seed). ``final_error``
    is the maximum error left once all elements were added.
    """

    elements: np.ndarray
    greedy_indices: np.ndarray
    greedy_errors: np.ndarray
    quadrature: Quadrature
    normalized_build: bool
    final_error: float
    greedy_tol: float = field(default=np.nan)

    @property
    def size(self) -> int:
        return len(self.elements)

    def __len__(self):
        return self.size


def _as_values(training):
    if isinstance(training, TrainingSet):
        return training.values
    values = np.atleast_2d(np.asarray(training))
    if values.ndim != 2:
        raise DimensionError("training values must be a 2-D array")
    if not np.all(np.isfinite(values)):
        raise InvalidDataError("training values contain non-finite entries")
    return values


def reduce_basis(training, quadrature: Quadrature, greedy_tol=1e-12, normalize=False):
    """Greedily select training functions into an orthonormal reduced basis.

    Parameters
    ----------
    training : TrainingSet or array_like, shape (N, L)
    quadrature : Quadrature
        Rule on the L physical points.
    greedy_tol : float
        Stop once the largest squared projection error over the training
        set is at or below this value.
    normalize : bool
        Run the greedy on unit-norm copies of the training functions. The
        errors are then relative; otherwise they are absolute.

    Returns
    -------
    ReducedBasis
    """
    values = _as_values(training)
    if values.shape[1] != quadrature.size:
        raise DimensionError(
            f"training has {values.shape[1]} columns, quadrature has {quadrature.size} points"
        )
    if not greedy_tol > 0:
        raise InvalidDataError("greedy_tol must be positive")

    norms = quadrature.norm(values)
    valid = norms > ZERO_NORM
    if not np.any(valid):
        raise ZeroNormError("every training function has zero norm")
    if not np.all(valid):
        warnings.warn(
            f"skipping {np.count_nonzero(~valid)} zero-norm training functions",
            RuntimeWarning,
            stacklevel=2,
        )

    dtype = working_dtype(values)
    if normalize:
        work = np.zeros(values.shape, dtype=dtype)
        work[valid] = values[valid] / norms[valid, np.newaxis]
        sigma = np.real(quadrature.dot(work, work))
    else:
        work = np.ascontiguousarray(values, dtype=dtype)
        sigma = norms**2
    sigma = np.where(valid, sigma, 0.0)

    max_size = min(np.count_nonzero(valid), work.shape[1])
    # seed with the largest original function; argmax returns the lowest index on ties
    seed = int(np.argmax(np.where(valid, norms, -np.inf)))
    elements, indices, errors, error, status = _kernels.greedy(
        work,
        quadrature.weights,
        sigma,
        seed,
        float(greedy_tol),
        max_size,
        ZERO_NORM,
        DEPENDENCE_RTOL,
        REORTH_TRIGGER,
        MAX_PASSES,
    )
    if status == _kernels.STATUS_DEPENDENT:
        logger.info("greedy stopped: selected function is dependent on the basis")
    logger.debug("reduced basis: %d elements, final error %.3e", len(indices), error)
    return ReducedBasis(
        elements=elements,
        greedy_indices=indices,
        greedy_errors=errors,
        quadrature=quadrature,
        normalized_build=bool(normalize),
        final_error=float(error),
        greedy_tol=float(greedy_tol),
    )


def projection_error_history(rb: ReducedBasis) -> np.ndarray:
    return rb.greedy_errors.copy()
