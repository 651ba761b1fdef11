import numpy as np
import pytest

from romkit import make_quadrature
from romkit.pendulum import PendulumConfig, generate_training


@pytest.fixture
def rng():
    return np.random.default_rng(20211016)


@pytest.fixture
def unit_trap():
    return make_quadrature(np.linspace(0.0, 1.0, 101), "trapezoidal")


@pytest.fixture
def sincos_training():
    x = np.linspace(0.0, 2 * np.pi, 1001)
    values = np.array([np.sin(x), 2 * np.sin(x), np.cos(x)])
    return x, values


@pytest.fixture(scope="session")
def pendulum_training():
    return generate_training(PendulumConfig())


@pytest.fixture(scope="session")
def pendulum_test_set():
    return generate_training(PendulumConfig(lambda_grid=np.linspace(1.0, 5.0, 1001)))


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(module, "RESULTS", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
