import sys
from pathlib import Path

import pytest
from hypothesis import settings

from morita.catalog import brandt, chain, corpus, cyclic_group, right_zero, trivial

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def semigroups():
    return corpus()


@pytest.fixture
def E2():
    return chain(2)


@pytest.fixture
def E3():
    return chain(3)


@pytest.fixture
def Z2():
    return cyclic_group(2)


@pytest.fixture
def Z3():
    return cyclic_group(3)


@pytest.fixture
def B2():
    return brandt(2)


@pytest.fixture
def RZ2():
    return right_zero(2)


@pytest.fixture
def T1():
    return trivial()


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
