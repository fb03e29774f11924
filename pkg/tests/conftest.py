import os
import sys

import pytest
from hypothesis import HealthCheck, settings

from mvspec.corpus import default_corpus
from mvspec.lgroups import lukasiewicz
from mvspec.mv import boolean_algebra, product

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=300, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def pair(A, B, a, b):
    """Index of (a, b) in product(A, B)."""
    return a * B.size + b


@pytest.fixture(scope="session")
def corpus():
    return default_corpus()


@pytest.fixture
def L2():
    return lukasiewicz(2)


@pytest.fixture
def two():
    return boolean_algebra()


@pytest.fixture
def L2xL2():
    L = lukasiewicz(2)
    return product(L, L)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
