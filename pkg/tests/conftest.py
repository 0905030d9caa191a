import os
import sys

import pytest
from hypothesis import settings

from known_values import FATHER, FATHER_SON_INFEASIBLE, SON
from oie import ConstraintSet, make_atomic

settings.register_profile("ci", max_examples=200, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))


@pytest.fixture
def oie_A():
    return make_atomic("Dr_A", [(0, 1), (21, 22)])


@pytest.fixture
def oie_B():
    return make_atomic("Dr_B", [(0, 1), (13, 14), (20, 22)])


@pytest.fixture
def oie_C():
    return make_atomic("Dr_C", [(0, 1), (19, 22)])


@pytest.fixture
def three_doctor_cs():
    return ConstraintSet([
        {"Dr_A": (21, 22), "Dr_B": (20, 22), "Dr_C": (19, 22)},
        {"Dr_A": (0, 1), "Dr_B": (0, 1), "Dr_C": (0, 1)},
    ])


@pytest.fixture
def father():
    return make_atomic("father", FATHER)


@pytest.fixture
def son():
    return make_atomic("son", SON)


@pytest.fixture
def father_son_cs():
    return ConstraintSet.from_positional(["father", "son"], FATHER_SON_INFEASIBLE)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.summary_lines():
        terminalreporter.write_line(line)
