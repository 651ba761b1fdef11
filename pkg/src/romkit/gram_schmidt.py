"""Iterated Gram-Schmidt orthonormalization under a quadrature inner product."""

from __future__ import annotations

import numpy as np

from . import _kernels
from .errors import DimensionError, LinearDependenceError, ZeroNormError
from .integration import ZERO_NORM, Quadrature

DEPENDENCE_RTOL = 1e-12
REORTH_TRIGGER = 0.5
MAX_PASSES = 3


def working_dtype(*arrays):
    return np.complex128 if any(np.iscomplexobj(a) for a in arrays) else np.float64


def gs_add(basis, candidate, quadrature: Quadrature):
    """Orthonormalize ``candidate`` against an orthonormal ``basis``.

    Uses modified Gram-Schmidt, repeating the pass while it shrinks the
    norm below half of its previous value (at most ``MAX_PASSES`` passes).

    Parameters
    ----------
    basis : array_like, shape (k, L)
        Orthonormal rows. ``k`` may be zero.
    candidate : array_like, shape (L,)
    quadrature : Quadrature

    Returns
    -------
    element : ndarray, shape (L,)
        Unit-norm vector orthogonal to every row of ``basis``.
    surviving_norm : float
        Norm of the candidate once the basis components were removed.

    Raises
    ------
    LinearDependenceError
        If less than ``DEPENDENCE_RTOL`` of the original norm survives.
    """
    dtype = working_dtype(basis, candidate)
    v = np.array(candidate, dtype=dtype)
    basis = np.ascontiguousarray(np.reshape(basis, (-1, quadrature.size)), dtype=dtype)
    if v.shape != (quadrature.size,):
        raise DimensionError(f"candidate of shape {v.shape} on a grid of {quadrature.size}")

    original, surviving = _kernels.gs_passes(
        basis, len(basis), v, quadrature.weights, REORTH_TRIGGER, MAX_PASSES
    )
    if original <= ZERO_NORM:
        raise ZeroNormError("candidate has zero norm")
    if surviving < DEPENDENCE_RTOL * original:
        raise LinearDependenceError(
            f"candidate is linearly dependent on the basis "
            f"(relative surviving norm {surviving / original:.3e})"
        )
    return v / surviving, float(surviving)


def orthonormalize(vectors, quadrature: Quadrature):
    """Orthonormalize the rows of ``vectors`` in order.

    Row ``i`` of the result spans the same space as rows ``0..i`` of the
    input. Raises ``LinearDependenceError`` with ``index`` set to the first
    dependent row (0-based).
    """
    vectors = np.atleast_2d(np.asarray(vectors))
    m, length = vectors.shape
    if m > length:
        raise LinearDependenceError(
            f"{m} vectors of length {length} cannot be independent", index=length
        )
    out = np.empty(vectors.shape, dtype=working_dtype(vectors))
    for i, row in enumerate(vectors):
        try:
            out[i], _ = gs_add(out[:i], row, quadrature)
        except (LinearDependenceError, ZeroNormError) as exc:
            raise LinearDependenceError(
                f"row {i} is linearly dependent on the previous rows", index=i
            ) from exc
    return out
