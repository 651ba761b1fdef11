"""Empirical interpolation: node selection and interpolant assembly."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from .errors import DegenerateBasisError, DimensionError

logger = logging.getLogger(__name__)

DEGENERATE_RESIDUAL = 1e-14


@dataclass(frozen=True, eq=False)
class EIMOperator:
    """Empirical interpolant of a basis.

    Attributes
    ----------
    nodes : ndarray of int, shape (n,)
        Grid indices of the empirical nodes, in selection order.
    v_matrix : ndarray, shape (n, n)
        ``v_matrix[i, j]`` is basis element ``j`` evaluated at node ``i``.
    b_matrix : ndarray, shape (n, L)
        Row ``i`` is the cardinal function attached to node ``i``.
    condition_number : float
        2-norm condition number of ``v_matrix``.
    """

    nodes: np.ndarray
    v_matrix: np.ndarray
    b_matrix: np.ndarray
    condition_number: float = np.nan

    @property
    def basis_size(self) -> int:
        return len(self.nodes)

    def __call__(self, f):
        return eim_interpolate(self, f)


def build_eim(basis) -> EIMOperator:
    """Select empirical nodes for ``basis`` and assemble the interpolant.

    ``basis`` is a ``ReducedBasis`` or any array of shape (n, L) with
    linearly independent rows.
    """
    elements = np.atleast_2d(np.asarray(getattr(basis, "elements", basis)))
    n, _ = elements.shape
    if n < 1:
        raise DegenerateBasisError("cannot interpolate with an empty basis")

    nodes = [int(np.argmax(np.abs(elements[0])))]
    if np.abs(elements[0, nodes[0]]) < DEGENERATE_RESIDUAL:
        raise DegenerateBasisError("first basis element vanishes on the grid")
    for j in range(1, n):
        # V[i, k] = e_k(X_i); interpolate e_j through the current nodes
        v = elements[:j, nodes].T
        coefficients = linalg.lu_solve(linalg.lu_factor(v), elements[j, nodes])
        residual = elements[j] - coefficients @ elements[:j]
        node = int(np.argmax(np.abs(residual)))
        if np.abs(residual[node]) < DEGENERATE_RESIDUAL:
            raise DegenerateBasisError(
                f"residual of basis element {j} vanishes; only {j} nodes found"
            )
        nodes.append(node)

    nodes = np.array(nodes, dtype=int)
    v_matrix = elements[:, nodes].T
    # B = V^{-T} E, so that B[:, nodes] is the identity
    b_matrix = linalg.lu_solve(linalg.lu_factor(v_matrix.T), elements)
    if not np.all(np.isfinite(b_matrix)):
        raise DegenerateBasisError("node-evaluation matrix is singular")
    condition = float(np.linalg.cond(v_matrix))
    logger.debug("EIM with %d nodes, cond(V) = %.3e", n, condition)
    return EIMOperator(
        nodes=nodes, v_matrix=v_matrix, b_matrix=b_matrix, condition_number=condition
    )


def eim_interpolate(op: EIMOperator, f):
    """Interpolate ``f`` (shape (L,) or (m, L)) through the empirical nodes."""
    f = np.asarray(f)
    if f.shape[-1:] != op.b_matrix.shape[-1:]:
        raise DimensionError(
            f"expected last dimension {op.b_matrix.shape[1]}, got shape {f.shape}"
        )
    return f[..., op.nodes] @ op.b_matrix


def lebesgue_constant(op: EIMOperator) -> float:
    """Grid maximum of the sum of absolute cardinal functions."""
    return float(np.max(np.sum(np.abs(op.b_matrix), axis=0)))
