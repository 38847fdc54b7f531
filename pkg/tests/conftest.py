import pytest

from algtype.finalg import FiniteAlgebra
from algtype.signature import Signature


@pytest.fixture
def xor_alg():
    return FiniteAlgebra(Signature.from_pairs([("f", 2)]), 2, {"f": (0, 1, 1, 0)})


@pytest.fixture
def pointed():
    """({0, 1}, c = 0): the free algebra on one generator over {c:0}."""
    return FiniteAlgebra(Signature.from_pairs([("c", 0)]), 2, {"c": (0,)})


def pytest_configure(config):
    config.acceptance_lines = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
