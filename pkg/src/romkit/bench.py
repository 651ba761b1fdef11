"""Timing harness for :func:`reduce_basis` on random training sets."""

from __future__ import annotations

import itertools
import logging
import time
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, fields

import numpy as np

from .errors import InsufficientDataError, RomError
from .integration import make_quadrature
from .reduced_basis import reduce_basis

logger = logging.getLogger(__name__)

DEFAULT_RULES = ("riemann", "trapezoidal", "euclidean")
DEFAULT_TOLS = (1e-14, 1e-12)
DEFAULT_NORMALIZE = (True, False)


@dataclass(frozen=True)
class BenchRecord:
    rule: str
    normalize: bool
    greedy_tol: float
    N: int
    L: int
    seed: int
    rep: int
    wall_time_seconds: float
    n_basis: int
    error: str = ""

    @classmethod
    def header(cls):
        return [f.name for f in fields(cls)]

    def as_row(self):
        return list(asdict(self).values())


def random_training(seed, size_index, rep, shape):
    """Uniform(-1, 1) matrix from a Philox stream keyed by ``seed``.

    The counter is offset by ``(size_index, rep)`` so each matrix can be
    regenerated without producing the others first.
    """
    bitgen = np.random.Philox(key=seed, counter=[0, 0, rep, size_index])
    return np.random.Generator(bitgen).uniform(-1.0, 1.0, size=shape)


def _warm_up():
    # load the compiled greedy before any timing starts
    grid = np.linspace(0.0, 1.0, 3)
    reduce_basis(np.eye(2, 3), make_quadrature(grid), greedy_tol=1e-12)


def _run_cell(cell, seed):
    (size_index, (n_rows, length)), rule, tol, normalize, rep = cell
    values = random_training(seed, size_index, rep, (n_rows, length))
    quadrature = make_quadrature(np.linspace(0.0, 1.0, length), rule)
    start = time.perf_counter()
    try:
        rb = reduce_basis(values, quadrature, greedy_tol=tol, normalize=normalize)
    except RomError as exc:
        elapsed = time.perf_counter() - start
        return BenchRecord(
            rule, normalize, tol, n_rows, length, seed, rep, elapsed, 0, repr(exc)
        )
    elapsed = time.perf_counter() - start
    return BenchRecord(rule, normalize, tol, n_rows, length, seed, rep, elapsed, rb.size)


def run_benchmark(
    sizes,
    rules=DEFAULT_RULES,
    tols=DEFAULT_TOLS,
    normalize_opts=DEFAULT_NORMALIZE,
    reps=100,
    seed=0,
    parallel=False,
):
    """Time ``reduce_basis`` over every combination of the given options.

    Records come back ordered by size, rule, tolerance, normalize flag and
    repetition regardless of ``parallel``. Only the greedy itself is timed.
    """
    if reps < 1:
        raise InsufficientDataError("reps must be at least 1")
    sizes = [(int(n), int(length)) for n, length in sizes]
    if not sizes or any(n < 1 or length < 2 for n, length in sizes):
        raise InsufficientDataError(f"invalid benchmark sizes {sizes}")

    _warm_up()
    cells = list(
        itertools.product(enumerate(sizes), rules, tols, normalize_opts, range(reps))
    )
    if parallel:
        warnings.warn(
            "parallel benchmark cells share the CPU; timings are only comparative",
            RuntimeWarning,
            stacklevel=2,
        )
        with ThreadPoolExecutor() as pool:
            return list(pool.map(lambda cell: _run_cell(cell, seed), cells))
    return [_run_cell(cell, seed) for cell in cells]


def fit_scaling_exponent(records, min_sizes=4, min_range=6.0):
    """Slope of log(time) against log(N) over square random inputs.

    Times are reduced to the median per size before the least-squares fit
    so a few slow outliers do not dominate.
    """
    square = {}
    for record in records:
        if record.N == record.L and not record.error:
            square.setdefault(record.N, []).append(record.wall_time_seconds)
    if len(square) < min_sizes:
        raise InsufficientDataError(
            f"need at least {min_sizes} distinct square sizes, got {len(square)}"
        )
    sizes = np.array(sorted(square), dtype=float)
    if sizes[-1] / sizes[0] < min_range:
        raise InsufficientDataError(
            f"sizes must span a factor of {min_range}, got {sizes[-1] / sizes[0]:.3g}"
        )
    times = np.array([np.median(square[n]) for n in sorted(square)])
    slope, _ = np.polyfit(np.log(sizes), np.log(times), 1)
    return float(slope)
