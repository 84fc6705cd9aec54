import numpy as np
import pytest

from fracpw import build_grid, make_params


@pytest.fixture
def rng():
    return np.random.default_rng(42)


@pytest.fixture(scope="session")
def grid1():
    return build_grid(1.0)


@pytest.fixture(scope="session")
def params_small():
    return make_params(1.0, 0.25)


@pytest.fixture(scope="session")
def params_large():
    return make_params(1.0, 1.7)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for ln in lines:
            terminalreporter.write_line(ln)
