"""Quadrature rules on equispaced 1-D grids.

A :class:`Quadrature` bundles grid points and weights and provides the
discrete integral, inner product, norm and normalization used everywhere
else in the package. All operations work along the last axis, so a 2-D
array is treated as a stack of functions (one per row).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, InvalidGridError, ZeroNormError

ZERO_NORM = 1e-30
SPACING_RTOL = 1e-10


class Rule(str, enum.Enum):
    RIEMANN = "riemann"
    TRAPEZOIDAL = "trapezoidal"
    EUCLIDEAN = "euclidean"


def _riemann_weights(points):
    # left sum: the last node carries no weight
    dx = (points[-1] - points[0]) / (len(points) - 1)
    weights = np.full(len(points), dx)
    weights[-1] = 0.0
    return weights


def _trapezoidal_weights(points):
    dx = (points[-1] - points[0]) / (len(points) - 1)
    weights = np.full(len(points), dx)
    weights[0] = weights[-1] = dx / 2
    return weights


def _euclidean_weights(points):
    return np.ones(len(points))


_WEIGHTS = {
    Rule.RIEMANN: _riemann_weights,
    Rule.TRAPEZOIDAL: _trapezoidal_weights,
    Rule.EUCLIDEAN: _euclidean_weights,
}


@dataclass(frozen=True, eq=False)
class Quadrature:
    """Grid points, per-point weights and the rule that produced them.

    Build instances with :func:`make_quadrature`; the constructor itself
    does not validate.
    """

    points: np.ndarray
    weights: np.ndarray
    rule: Rule

    def __post_init__(self):
        self.points.setflags(write=False)
        self.weights.setflags(write=False)

    @property
    def size(self) -> int:
        return len(self.points)

    def _check(self, f):
        f = np.asarray(f)
        if f.shape[-1:] != (self.size,):
            raise DimensionError(
                f"expected arrays with last dimension {self.size}, got shape {f.shape}"
            )
        return f

    def integral(self, f):
        """Weighted sum of ``f`` over the grid."""
        f = self._check(f)
        return f @ self.weights

    def dot(self, f, g):
        """Discrete inner product, conjugate-linear in ``f``.

        If one argument is 2-D and the other 1-D, the result holds one inner
        product per row. Two 2-D arrays are paired row by row.
        """
        f = self._check(f)
        g = self._check(g)
        if f.ndim == 1:
            return g @ (np.conj(f) * self.weights)
        if g.ndim == 1:
            # conj(F @ conj(g w)) avoids a weighted copy of F
            return np.conj(f @ np.conj(g * self.weights))
        return np.sum(np.conj(f) * self.weights * g, axis=-1)

    def gram(self, f, g):
        """Matrix of all pairwise inner products between rows of ``f`` and ``g``."""
        f = np.atleast_2d(self._check(f))
        g = np.atleast_2d(self._check(g))
        return (np.conj(f) * self.weights) @ g.T

    def norm(self, f):
        return np.sqrt(np.real(self.dot(f, f)))

    def normalize(self, f):
        """Return ``f`` scaled to unit norm (row-wise for 2-D input)."""
        f = self._check(f)
        norms = self.norm(f)
        if np.any(norms <= ZERO_NORM):
            raise ZeroNormError("cannot normalize a function with zero norm")
        if f.ndim == 1:
            return f / norms
        return f / norms[..., np.newaxis]


def make_quadrature(points, rule="riemann") -> Quadrature:
    """Build a quadrature rule on ``points``.

    Parameters
    ----------
    points : array_like
        Strictly increasing grid of at least two points. Must be equispaced
        unless ``rule`` is ``"euclidean"``.
    rule : {"riemann", "trapezoidal", "euclidean"}
        Riemann is a left sum (zero weight on the last node), trapezoidal
        the composite trapezoid rule and euclidean gives unit weights.

    Raises
    ------
    InvalidGridError
        If the grid is too short, not increasing, or not equispaced.
    """
    try:
        rule = Rule(rule.lower() if isinstance(rule, str) else rule)
    except ValueError:
        raise InvalidGridError(
            f"unknown integration rule {rule!r}; expected one of "
            f"{[r.value for r in Rule]}"
        ) from None

    points = np.array(points, dtype=float)
    if points.ndim != 1 or len(points) < 2:
        raise InvalidGridError("a grid needs at least two points")
    if not np.all(np.isfinite(points)):
        raise InvalidGridError("grid points must be finite")
    steps = np.diff(points)
    if np.any(steps <= 0):
        raise InvalidGridError("grid points must be strictly increasing")
    if rule is not Rule.EUCLIDEAN:
        dx = (points[-1] - points[0]) / (len(points) - 1)
        if np.max(np.abs(steps - dx)) > SPACING_RTOL * dx:
            raise InvalidGridError(f"{rule.value} rule requires an equispaced grid")

    return Quadrature(points=points, weights=_WEIGHTS[rule](points), rule=rule)
