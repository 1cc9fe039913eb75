import os

os.environ.setdefault("VKH_CHECK_D2", "1")

import sys

import pytest
from hypothesis import HealthCheck, settings

from vkh.diagram import UNKNOT, link_from_gauss, parse_gauss, unlink

settings.register_profile(
    "suite", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("suite")

VT_CODE = "O1+O2+U1+U2+"
TREFOIL_CODE = "O1+U2+O3+U1+O2+U3+"


@pytest.fixture
def vt():
    return parse_gauss(VT_CODE)


@pytest.fixture
def trefoil():
    return parse_gauss(TREFOIL_CODE)


@pytest.fixture
def kink():
    return parse_gauss("O1+U1+")


@pytest.fixture
def hopf():
    return link_from_gauss(["O1+U2+", "U1+O2+"])


@pytest.fixture
def u0():
    return UNKNOT


@pytest.fixture
def unlink2():
    return unlink(2)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module and module.LINES:
        terminalreporter.section("acceptance")
        for line in module.LINES:
            terminalreporter.write_line(line)
