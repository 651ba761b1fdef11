import threading
import time

import numpy as np
import pytest

from romkit import (
    TrainingSet,
    build_surrogate,
    eim_interpolate,
    eval_surrogate,
    gs_add,
    make_quadrature,
    relative_l2_error,
)
from romkit.eim import lebesgue_constant
from romkit.errors import DomainError, InvalidDataError, UnsupportedError, ZeroNormError


@pytest.fixture(scope="module")
def pendulum_model(pendulum_training):
    return build_surrogate(pendulum_training, greedy_tol=1e-14, poly_deg=5)


def test_identical_rows():
    x = np.linspace(0, 1, 50)
    g = np.exp(x) * np.cos(4 * x)
    s = build_surrogate(TrainingSet(np.tile(g, (6, 1)), np.arange(6.0), x))
    assert s.basis_size == 1 and s.build_report["n"] == 1
    for lam in np.linspace(0, 5, 23):
        np.testing.assert_allclose(s(lam), g, atol=1e-12)


@pytest.mark.parametrize("k", [1, 3])
def test_linear_family(k):
    x = np.linspace(0, 1, 101)
    lam = np.arange(1.0, 6.0)
    s = build_surrogate(TrainingSet(np.outer(lam, x), lam, x), poly_deg=k)
    assert s.basis_size == 1
    np.testing.assert_allclose(s(2.5), 2.5 * x, atol=1e-10)


def test_knots_give_interpolant(pendulum_training, pendulum_model):
    s = pendulum_model
    lam = pendulum_training.parameter_points
    interp = eim_interpolate(s.eim, pendulum_training.values)
    np.testing.assert_allclose(s(lam), interp, atol=1e-12)
    assert len(s.eim.nodes) == s.fits.coefficients.shape[1]


def test_pendulum_initial_value(pendulum_model):
    assert pendulum_model(2.0)[0] == pytest.approx(np.pi / 2, abs=1e-9)
    head = pendulum_model(2.0)[:3]
    np.testing.assert_allclose(head, [1.57079633, 1.5683046, 1.56086267], atol=1e-6)


def test_domain(pendulum_model):
    assert np.all(np.isfinite(pendulum_model(1.0)))
    assert np.all(np.isfinite(pendulum_model(5.0)))
    assert pendulum_model(np.array([1.0, 3.0, 5.0])).shape == (3, 1001)
    for bad in (0.999, 5.001, np.nan):
        with pytest.raises(DomainError):
            eval_surrogate(pendulum_model, bad)


def test_training_reproduction_bound(pendulum_training):
    tol = 1e-12
    s = build_surrogate(pendulum_training, greedy_tol=tol, poly_deg=3)
    errors = relative_l2_error(
        s(pendulum_training.parameter_points), pendulum_training.values, s.quadrature
    )
    assert np.max(errors) <= np.sqrt(tol) * lebesgue_constant(s.eim) * 10


def test_determinism(pendulum_training, pendulum_model):
    again = build_surrogate(pendulum_training, greedy_tol=1e-14, poly_deg=5)
    np.testing.assert_array_equal(again.rb.greedy_indices, pendulum_model.rb.greedy_indices)
    np.testing.assert_array_equal(again.eim.nodes, pendulum_model.eim.nodes)
    probe = np.linspace(1, 5, 37)
    np.testing.assert_allclose(again(probe), pendulum_model(probe), atol=1e-14, rtol=0)


def test_online_stage(pendulum_model):
    s = pendulum_model
    before = s.eim.b_matrix.copy(), s.fits.coefficients.copy()
    lams = np.linspace(1, 5, 1000)
    start = time.perf_counter()
    for lam in lams:
        s(lam)
    per_call = (time.perf_counter() - start) / len(lams)
    assert s.basis_size <= 100
    assert per_call < 1e-3
    np.testing.assert_array_equal(s.eim.b_matrix, before[0])
    np.testing.assert_array_equal(s.fits.coefficients, before[1])


def test_concurrent_evaluation(pendulum_model):
    expected = pendulum_model(np.linspace(1, 5, 16))
    results = [None] * 8

    def worker(i):
        results[i] = pendulum_model(np.linspace(1, 5, 16))

    threads = [threading.Thread(target=worker, args=(i,)) for i in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    for r in results:
        np.testing.assert_array_equal(r, expected)


def test_report(pendulum_model):
    report = pendulum_model.build_report
    assert report["n"] == pendulum_model.basis_size
    assert len(report["greedy_errors"]) == report["n"]
    assert report["poly_deg"] == 5 and report["build_seconds"] > 0


def test_build_errors():
    x = np.linspace(0, 1, 20)
    values = np.outer(np.arange(1.0, 5.0), x)
    with pytest.raises(UnsupportedError):
        build_surrogate(TrainingSet(values + 0j, np.arange(4.0), x))
    with pytest.raises(UnsupportedError):
        build_surrogate(TrainingSet(values, np.arange(8.0).reshape(4, 2), x))
    with pytest.raises(InvalidDataError):
        build_surrogate(TrainingSet(values, [0.0, 2.0, 1.0, 3.0], x))


def test_relative_l2_examples(rng, unit_trap):
    truth = np.sin(3 * unit_trap.points) + 0.5
    assert relative_l2_error(truth, truth, unit_trap) == 0.0
    assert relative_l2_error(1.01 * truth, truth, unit_trap) == pytest.approx(0.01, abs=1e-12)
    g, _ = gs_add(unit_trap.normalize(truth)[None, :], rng.normal(size=101), unit_trap)
    g = g * unit_trap.norm(truth)
    assert relative_l2_error(truth + g, truth, unit_trap) == pytest.approx(1.0, abs=1e-10)
    with pytest.raises(ZeroNormError):
        relative_l2_error(truth, np.zeros(101), unit_trap)


def test_explicit_quadrature():
    x = np.linspace(0, 1, 80)
    lam = np.linspace(1, 2, 12)
    values = np.exp(-np.outer(lam, x))
    s = build_surrogate(TrainingSet(values, lam, x), make_quadrature(x, "trapezoidal"))
    assert s.quadrature.rule.value == "trapezoidal"
    # squared relative tolerance 1e-12 bounds the error near 1e-6
    np.testing.assert_allclose(s(lam), values, atol=1e-6)
