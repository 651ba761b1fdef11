"""Damped pendulum training data.

Solves ``theta'' = -b theta' - lam sin(theta)`` with classical fixed-step
RK4. All parameter values are integrated together as one vector state;
each row is computed independently of the others.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import IntegrationFailureError, InvalidDataError, InvalidGridError
from .reduced_basis import TrainingSet


def _default_lambdas():
    return np.linspace(1.0, 5.0, 101)


def _default_times():
    return np.linspace(0.0, 50.0, 1001)


@dataclass(frozen=True)
class PendulumConfig:
    b: float = 0.2
    lambda_grid: np.ndarray = field(default_factory=_default_lambdas)
    t_grid: np.ndarray = field(default_factory=_default_times)
    theta0: float = np.pi / 2
    omega0: float = 0.0
    substeps: int = 10

    def __post_init__(self):
        lambdas = np.atleast_1d(np.asarray(self.lambda_grid, dtype=float))
        times = np.asarray(self.t_grid, dtype=float)
        object.__setattr__(self, "lambda_grid", lambdas)
        object.__setattr__(self, "t_grid", times)
        if self.b < 0:
            raise InvalidDataError("damping b must be non-negative")
        if np.any(lambdas <= 0) or np.any(np.diff(lambdas) <= 0):
            raise InvalidDataError("lambda values must be positive and strictly increasing")
        if times.ndim != 1 or len(times) < 2 or np.any(np.diff(times) <= 0):
            raise InvalidGridError("time grid needs at least two increasing points")
        if int(self.substeps) != self.substeps or self.substeps < 1:
            raise InvalidDataError("substeps must be a positive integer")


def pendulum_rhs(theta, omega, b, lam):
    return omega, -b * omega - lam * np.sin(theta)


def _integrate(cfg: PendulumConfig, lams):
    lams = np.asarray(lams, dtype=float)
    theta = np.full(lams.shape, float(cfg.theta0))
    omega = np.full(lams.shape, float(cfg.omega0))
    out = np.empty(lams.shape + (len(cfg.t_grid),))
    out[..., 0] = theta
    b = cfg.b
    # overflow is reported as IntegrationFailureError below
    with np.errstate(over="ignore", invalid="ignore"):
        for k, dt in enumerate(np.diff(cfg.t_grid), start=1):
            h = dt / cfg.substeps
            for _ in range(cfg.substeps):
                k1t, k1w = pendulum_rhs(theta, omega, b, lams)
                k2t, k2w = pendulum_rhs(theta + h / 2 * k1t, omega + h / 2 * k1w, b, lams)
                k3t, k3w = pendulum_rhs(theta + h / 2 * k2t, omega + h / 2 * k2w, b, lams)
                k4t, k4w = pendulum_rhs(theta + h * k3t, omega + h * k3w, b, lams)
                theta = theta + h / 6 * (k1t + 2 * k2t + 2 * k3t + k4t)
                omega = omega + h / 6 * (k1w + 2 * k2w + 2 * k3w + k4w)
            if not (np.all(np.isfinite(theta)) and np.all(np.isfinite(omega))):
                raise IntegrationFailureError(f"non-finite state at t = {cfg.t_grid[k]}")
            out[..., k] = theta
    return out


def simulate_pendulum(cfg: PendulumConfig, lam) -> np.ndarray:
    """Angle on ``cfg.t_grid`` for a single gravity parameter ``lam``."""
    return _integrate(cfg, np.array([lam]))[0]


def generate_training(cfg: PendulumConfig) -> TrainingSet:
    return TrainingSet(
        values=_integrate(cfg, cfg.lambda_grid),
        parameter_points=cfg.lambda_grid,
        physical_points=cfg.t_grid,
    )
