import numpy as np
import pytest

from bsmls.datasets import builtin_dataset


@pytest.fixture(scope="session")
def xi0_curve():
    return builtin_dataset("xi0-curve").values


@pytest.fixture(scope="session")
def xi0_surface():
    return builtin_dataset("xi0-surface").values


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[number])
