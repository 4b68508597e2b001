from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import pytest

from dicot.core import make_dicot

DATA = Path(__file__).parent / "data"


def example3_graph(x=(1, 1, 1), a12=1, a23=1, b12=1, b23=1):
    """The six-vertex graph with half-turn symmetry j -> j + 3 (mod 6)."""
    x1, x2, x3 = x
    solid = [
        (1, 2, a12), (2, 3, a23), (4, 5, a12), (5, 6, a23),
        (2, 4, b12), (1, 5, b12), (2, 6, b23), (3, 5, b23),
    ]
    return make_dicot([x1, x2, x3, x1, x2, x3], solid, [])


EXAMPLE3_PI = {1: 4, 2: 5, 3: 6, 4: 1, 5: 2, 6: 3}


@pytest.fixture
def data_dir() -> Path:
    return DATA


def F(*args) -> Fraction:
    return Fraction(*args)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
