import sys

import numpy as np
import pytest

from graphsum import build_graph, graph_of_partition, parse_partition

TAU = "{2,4,11}{3,5,10}{6,7,8}{9,12,14,16,20}{13,15,17,18}{19,22,24}{21,23}{1}"


@pytest.fixture
def tau():
    return parse_partition(TAU)


@pytest.fixture
def g_tau(tau):
    return graph_of_partition(tau)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def loop_graph():
    return build_graph(["v"], [("e1", "v", "v")])


@pytest.fixture
def cycle3():
    return build_graph(["a", "b", "c"], [("e1", "a", "b"), ("e2", "b", "c"), ("e3", "c", "a")])


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for line in results.values():
            terminalreporter.write_line(line)
