"""Projection and interpolation onto an orthonormal basis."""

from __future__ import annotations

import threading

import numpy as np

from .eim import EIMOperator, build_eim, eim_interpolate
from .errors import DimensionError, InvalidBasisError
from .integration import Quadrature

ORTHONORMALITY_TOL = 1e-8


class Basis:
    """An orthonormal basis on a quadrature grid.

    Orthonormality is checked on construction. The empirical interpolant
    is built on first use of :meth:`interpolate` and reused afterwards.

    Parameters
    ----------
    elements : array_like, shape (n, L)
        Basis functions as rows, or a ``ReducedBasis``.
    quadrature : Quadrature, optional
        Defaults to the quadrature of ``elements`` if it carries one.
    """

    def __init__(self, elements, quadrature: Quadrature | None = None):
        if quadrature is None:
            quadrature = getattr(elements, "quadrature", None)
        if quadrature is None:
            raise InvalidBasisError("a quadrature is required")
        elements = np.atleast_2d(np.asarray(getattr(elements, "elements", elements)))
        if elements.ndim != 2 or elements.shape[1] != quadrature.size:
            raise DimensionError(
                f"basis of shape {elements.shape} does not match a grid of "
                f"{quadrature.size} points"
            )
        deviation = np.max(np.abs(quadrature.gram(elements, elements) - np.eye(len(elements))))
        if deviation > ORTHONORMALITY_TOL:
            raise InvalidBasisError(
                f"basis is not orthonormal (Gram deviation {deviation:.3e})"
            )
        elements = elements.copy()
        elements.setflags(write=False)
        self.elements = elements
        self.quadrature = quadrature
        self._eim = None
        self._lock = threading.Lock()

    @property
    def size(self) -> int:
        return len(self.elements)

    def __len__(self):
        return self.size

    @property
    def eim(self) -> EIMOperator:
        if self._eim is None:
            with self._lock:
                if self._eim is None:
                    self._eim = build_eim(self.elements)
        return self._eim

    def coefficients(self, f):
        """Inner products of every basis element with ``f``."""
        f = np.asarray(f)
        if f.ndim == 1:
            return self.quadrature.dot(self.elements, f)
        return self.quadrature.gram(f, self.elements).conj()

    def project(self, f):
        """Orthogonal projection of ``f`` (shape (L,) or (m, L))."""
        return self.coefficients(f) @ self.elements

    def projection_error(self, f):
        """Squared norm of ``f - project(f)``."""
        f = np.asarray(f)
        return np.real(self.quadrature.norm(f - self.project(f)) ** 2)

    def interpolate(self, f):
        """Empirical interpolant of ``f`` through the basis nodes."""
        return eim_interpolate(self.eim, f)


def project(basis, quadrature, f):
    return Basis(basis, quadrature).project(f)


def projection_error(basis, quadrature, f):
    return Basis(basis, quadrature).projection_error(f)


def interpolate(basis, quadrature, f):
    return Basis(basis, quadrature).interpolate(f)
