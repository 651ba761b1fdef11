import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from romkit import build_eim, eim_interpolate, make_quadrature, orthonormalize, reduce_basis
from romkit.eim import lebesgue_constant
from romkit.errors import DegenerateBasisError, DimensionError


@pytest.fixture
def sincos_eim(sincos_training):
    x, values = sincos_training
    q = make_quadrature(x, "trapezoidal")
    rb = reduce_basis(values, q, 1e-12, normalize=True)
    return q, rb, build_eim(rb)


def test_hat_function_node():
    x = np.linspace(0, 1, 101)
    q = make_quadrature(x, "trapezoidal")
    hat = np.maximum(0.0, 1 - np.abs(x - x[37]) / 0.1)
    op = build_eim(q.normalize(hat)[None, :])
    assert op.nodes.tolist() == [37]


def test_sin_cos(sincos_eim):
    q, rb, op = sincos_eim
    assert op.basis_size == 2 and len(set(op.nodes.tolist())) == 2
    # analytic 2x2 solve at the selected nodes reproduces sin and cos
    x = q.points
    nodes = x[op.nodes]
    system = np.array([[np.sin(t), np.cos(t)] for t in nodes])
    for f in (np.sin(x), np.cos(x)):
        a, b = np.linalg.solve(system, f[op.nodes])
        np.testing.assert_allclose(a * np.sin(x) + b * np.cos(x), f, atol=1e-12)
        np.testing.assert_allclose(op(f), f, atol=1e-12)


def test_cardinal_property(sincos_eim):
    _, _, op = sincos_eim
    np.testing.assert_allclose(op.b_matrix[:, op.nodes], np.eye(2), atol=1e-10)
    np.testing.assert_allclose(op.v_matrix, op.b_matrix[:, op.nodes] @ op.v_matrix, atol=1e-12)
    assert np.isfinite(op.condition_number)


def test_basis_elements_reproduced(sincos_eim):
    _, rb, op = sincos_eim
    for e in rb.elements:
        assert np.max(np.abs(eim_interpolate(op, e) - e)) <= 1e-10


def test_zero_and_dimension(sincos_eim):
    q, _, op = sincos_eim
    np.testing.assert_array_equal(op(np.zeros(q.size)), 0.0)
    with pytest.raises(DimensionError):
        op(np.zeros(q.size - 1))


def test_training_rows_within_lebesgue_bound(sincos_training):
    # f - I f = r - I r with r = f - P f, hence |f - I f| <= (1 + Lambda) max|r|
    x = np.linspace(0, 1, 400)
    q = make_quadrature(x, "trapezoidal")
    lam = np.linspace(1, 2, 30)
    values = np.exp(-np.outer(lam, x)) * np.sin(4 * np.outer(lam, x))
    rb = reduce_basis(values, q, 1e-8, normalize=False)
    op = build_eim(rb)
    bound = 1 + lebesgue_constant(op)
    residual = values - q.gram(values, rb.elements).conj() @ rb.elements
    error = np.max(np.abs(op(values) - values), axis=1)
    assert np.all(error <= bound * np.max(np.abs(residual), axis=1) + 1e-14)


def test_degenerate_basis():
    x = np.linspace(0, 1, 50)
    with pytest.raises(DegenerateBasisError):
        build_eim(np.array([np.sin(x), 2 * np.sin(x)]))
    with pytest.raises(DegenerateBasisError):
        build_eim(np.zeros((1, 50)))


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_properties(seed):
    rng = np.random.default_rng(seed)
    x = np.linspace(0, 1, 300)
    q = make_quadrature(x, "riemann")
    lam = np.sort(rng.uniform(1, 3, 50))
    values = np.cos(np.outer(lam, x) * rng.uniform(3, 8)) / (1 + np.outer(lam, x))
    rb = reduce_basis(values, q, 1e-10, normalize=True)
    op = build_eim(rb)
    assert len(set(op.nodes.tolist())) == rb.size
    f = rng.normal(size=(5, 300))
    interp = op(f)
    np.testing.assert_allclose(interp[:, op.nodes], f[:, op.nodes], atol=1e-12, rtol=0)
    np.testing.assert_allclose(op(interp), interp, atol=1e-10 * np.max(np.abs(interp)))
    combo = rng.normal(size=rb.size) @ rb.elements
    assert np.max(np.abs(op(combo) - combo)) <= 1e-10 * np.max(np.abs(combo))
    again = build_eim(rb)
    np.testing.assert_array_equal(again.nodes, op.nodes)
    np.testing.assert_array_equal(again.b_matrix, op.b_matrix)


def test_complex_basis(rng):
    q = make_quadrature(np.linspace(0, 1, 80), "trapezoidal")
    basis = orthonormalize(rng.normal(size=(6, 80)) + 1j * rng.normal(size=(6, 80)), q)
    op = build_eim(basis)
    np.testing.assert_allclose(op(basis), basis, atol=1e-10)
