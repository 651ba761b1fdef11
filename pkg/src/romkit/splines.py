"""Interpolating splines of odd degree over a parameter interval.

Thin layer over :func:`scipy.interpolate.make_interp_spline`. Its default
end conditions for odd degree ``k`` drop ``(k - 1) / 2`` interior knots at
each end (not-a-knot), so every polynomial of degree ``<= k`` is reproduced.
Values may be vector valued: ``y`` of shape ``(N, m)`` fits ``m`` splines
that share abscissae and knots and are evaluated together.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.interpolate import BSpline, make_interp_spline

from .errors import DomainError, InsufficientDataError, InvalidAbscissaError, UnsupportedError

DEGREES = (1, 3, 5)


@dataclass(frozen=True, eq=False)
class Spline:
    """Piecewise polynomial in B-spline form.

    Attributes
    ----------
    knots : ndarray
        The interpolated abscissae.
    knot_vector : ndarray
        B-spline knot vector.
    coefficients : ndarray
        B-spline coefficients, shape ``(len(knot_vector) - degree - 1, ...)``.
        Complex coefficients are evaluated as two real splines.
    degree : int
    """

    knots: np.ndarray
    knot_vector: np.ndarray
    coefficients: np.ndarray
    degree: int

    def __post_init__(self):
        coefficients = self.coefficients
        parts = [BSpline(self.knot_vector, coefficients.real, self.degree, extrapolate=False)]
        if np.iscomplexobj(coefficients):
            parts.append(
                BSpline(self.knot_vector, coefficients.imag, self.degree, extrapolate=False)
            )
        object.__setattr__(self, "_parts", parts)

    @property
    def domain(self):
        return float(self.knots[0]), float(self.knots[-1])

    def __call__(self, x):
        return eval_spline(self, x)


def fit_spline(x, y, degree=3) -> Spline:
    """Interpolate ``y`` at the strictly increasing abscissae ``x``."""
    if degree not in DEGREES:
        raise UnsupportedError(f"spline degree must be one of {DEGREES}, got {degree}")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y)
    if x.ndim != 1 or len(y) != len(x):
        raise InvalidAbscissaError(f"{len(x)} abscissae for {len(y)} values")
    if len(x) <= degree:
        raise InsufficientDataError(
            f"a degree {degree} spline needs at least {degree + 1} points, got {len(x)}"
        )
    if np.any(np.diff(x) <= 0):
        raise InvalidAbscissaError("abscissae must be strictly increasing")

    real = make_interp_spline(x, y.real, k=degree)
    coefficients = real.c
    if np.iscomplexobj(y):
        coefficients = coefficients + 1j * make_interp_spline(x, y.imag, k=degree).c
    return Spline(knots=x, knot_vector=real.t, coefficients=coefficients, degree=degree)


def eval_spline(spline: Spline, x):
    """Evaluate inside the closed interval spanned by the knots.

    Raises
    ------
    DomainError
        If any ``x`` falls outside the interval (no extrapolation).
    """
    x = np.asarray(x, dtype=float)
    lo, hi = spline.domain
    if np.any(~((x >= lo) & (x <= hi))):
        raise DomainError(f"evaluation point outside the spline domain [{lo}, {hi}]")
    real, *imag = spline._parts
    value = real(x)
    if imag:
        value = value + 1j * imag[0](x)
    return value
