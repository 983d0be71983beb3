import numpy as np
import pytest

from densemask import BipartiteState, random_state


def random_skew_hermitian(n, rng):
    X = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return X - X.conj().T


def random_unitary(n, rng):
    X = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    Q, R = np.linalg.qr(X)
    return Q * (np.diag(R) / np.abs(np.diag(R)))


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)


@pytest.fixture
def bell():
    return BipartiteState(2, 2, np.array([1, 0, 0, 1]) / np.sqrt(2))


@pytest.fixture
def product00():
    return BipartiteState(2, 2, np.array([1, 0, 0, 0]))


@pytest.fixture
def e1_state():
    """n=2, p=1 with phi_1 = (1, 0)."""
    return BipartiteState(2, 1, np.array([1, 0]))


@pytest.fixture
def headline_state():
    """n=8, p=2: three sender qubits, one receiver qubit."""
    return random_state(8, 2, 2, seed=7)


ACCEPTANCE_RESULTS = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {key}: {detail}")
