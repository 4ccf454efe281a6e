from functools import lru_cache

import pytest
from hypothesis import HealthCheck, settings

from powerquotient import build_bundle, enumerate_group, symmetric_group
from powerquotient.permutations import Permutation

settings.register_profile("default", deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@lru_cache(maxsize=None)
def sn_bundle(n):
    return build_bundle(symmetric_group(n))


@lru_cache(maxsize=None)
def sylow_bundle():
    gens = [Permutation.parse("(1 3)", 4), Permutation.parse("(1 2 3 4)", 4)]
    return build_bundle(enumerate_group("gen", 4, gens))


@pytest.fixture
def sn():
    return sn_bundle


@pytest.fixture
def sylow():
    return sylow_bundle()


def pytest_configure(config):
    config._acceptance_lines = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", [])
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
        terminalreporter.write_line(line)
