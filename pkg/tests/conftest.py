import numpy as np
import pytest

from uncertainty_lab.operators import ladder_operators, position_momentum, quadratures, spin_operators
from uncertainty_lab.random_states import make_rng

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def spin1():
    return spin_operators(1)


@pytest.fixture(scope="session")
def fock20():
    alg = ladder_operators(20)
    return alg, *quadratures(alg)


@pytest.fixture(scope="session")
def fock40():
    alg = ladder_operators(40)
    return alg, *quadratures(alg)


@pytest.fixture(scope="session")
def xp20():
    return position_momentum(ladder_operators(20))


@pytest.fixture
def rng():
    return make_rng(20240611)


def vacuum(n):
    v = np.zeros(n, dtype=complex)
    v[0] = 1
    return v


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
