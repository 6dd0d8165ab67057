import numpy as np
import pytest

from homnovikov.families import heisenberg_novikov, monomial_algebra
from homnovikov.superalgebra import SuperAlgebra

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion n")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marker = getattr(report, "criterion", None)
    if marker is not None:
        n, title = marker
        prev = _CRITERIA.get(n, (title, True))
        _CRITERIA[n] = (title, prev[1] and report.outcome == "passed")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is not None:
        report.criterion = tuple(m.args)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        title, ok = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {title}")


@pytest.fixture
def rng():
    return np.random.default_rng(20261018)


@pytest.fixture
def e1():
    """Lambda(theta): e0 = 1 (even), e1 = theta (odd)."""
    return SuperAlgebra.from_entries([0, 1], {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1})


@pytest.fixture
def unit_line():
    """Dimension 1, e.e = e."""
    return SuperAlgebra.from_entries([0], {(0, 0, 0): 1})


@pytest.fixture
def zero_line():
    return SuperAlgebra.from_entries([0], {})


@pytest.fixture
def heisenberg():
    return heisenberg_novikov()


@pytest.fixture
def exterior2():
    return monomial_algebra((), 2)[0]
