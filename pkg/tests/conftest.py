import sys

import pytest

from silting_lab.potential import ginzburg, preprojective
from silting_lab.quiver import parse
from silting_lab.scenarios import ONE_LOOP, TWO_LOOPS, linear_quiver


def make(source, kind="ginzburg", truncation="default"):
    q, w, m = parse(source)
    if kind == "ginzburg":
        return ginzburg(q, w, m, truncation)
    return preprojective(q, w, m, truncation)


@pytest.fixture(scope="session")
def a2_g1():
    return make(linear_quiver(2, 1))


@pytest.fixture(scope="session")
def a3_g2():
    return make(linear_quiver(3, 2))


@pytest.fixture(scope="session")
def one_loop_pi():
    return make(ONE_LOOP, "dpp")


@pytest.fixture(scope="session")
def two_loops_pi():
    return make(TWO_LOOPS, "dpp")


ACCEPTANCE_QUIVERS = [(n, m) for n in (2, 3) for m in (1, 2)]


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.line(k))
