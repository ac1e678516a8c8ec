import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from minterp.analytic import AnalyticCurve3, DomainSpec
from minterp.bjorling import build_base
from minterp.normal_field import IndexPermutation, construct

settings.register_profile(
    "default", deadline=None, max_examples=25, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def zero(w):
    return 0 * w


@pytest.fixture(scope="session")
def circle_domain():
    return DomainSpec(-0.8, 0.8, 1.2)


@pytest.fixture(scope="session")
def unit_domain():
    return DomainSpec(-1.0, 1.0, 1.2)


@pytest.fixture(scope="session")
def circle(circle_domain):
    return AnalyticCurve3.from_functions([np.cos, np.sin, zero], circle_domain)


@pytest.fixture(scope="session")
def line(unit_domain):
    return AnalyticCurve3.from_functions([lambda w: w, zero, zero], unit_domain)


@pytest.fixture(scope="session")
def catenoid_perm():
    return IndexPermutation.from_one_based((2, 3, 1))


@pytest.fixture(scope="session")
def circle_nf(circle, catenoid_perm):
    return construct(circle, catenoid_perm)


@pytest.fixture(scope="session")
def circle_base(circle, circle_nf):
    return build_base(circle, circle_nf)


@pytest.fixture(scope="session")
def line_nf(line):
    return construct(line)


@pytest.fixture(scope="session")
def line_base(line, line_nf):
    return build_base(line, line_nf, 0.0)
