from __future__ import annotations

from fractions import Fraction as F

import pytest
from hypothesis import HealthCheck, settings

from cutoffgame.coxeter import build_family, build_general

settings.register_profile(
    "ci", derandomize=True, deadline=None, max_examples=200, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("ci")

# the two-vertex graph with unequal bond weights and n = 3
ASYM_CARTAN = [[2, -2], [F(-1, 2), 2]]


@pytest.fixture(scope="session")
def asym():
    return build_general(ASYM_CARTAN, {(0, 1): 3})


@pytest.fixture(scope="session")
def fam():
    cache = {}

    def get(label):
        if label not in cache:
            cache[label] = build_family(label)
        return cache[label]

    return get


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[k])
