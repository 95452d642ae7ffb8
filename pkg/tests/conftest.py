import random

import pytest

from ibeta.algebraic import make_beta
from ibeta.polynomial import multinacci_poly

_CRITERIA = {}


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance" not in report.nodeid:
        return
    name = report.nodeid.rsplit("::", 1)[-1]
    if name.startswith("test_criterion_"):
        _CRITERIA[name] = (report.outcome, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_CRITERIA, key=lambda s: int(s.split("_")[2])):
        outcome, duration = _CRITERIA[name]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict}  {name}  ({duration:.1f} s)")


@pytest.fixture(scope="session")
def golden():
    return make_beta([-1, -1, 1])


@pytest.fixture(scope="session")
def sqrt_golden():
    return make_beta([-1, 0, -1, 0, 1])


@pytest.fixture(scope="session")
def tribonacci():
    return make_beta(multinacci_poly(3))


@pytest.fixture
def rng():
    return random.Random(1234)
