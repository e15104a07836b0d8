import sys
from pathlib import Path

import pytest

from stralg.automaton import make_dfa
from stralg.presentation import parse_presentation

DATA = Path(__file__).parent / "data"
sys.path.insert(0, str(Path(__file__).parent))

CORPUS = ["gp23", "kronecker", "loop_a2", "gp22"]


def load(name):
    return parse_presentation((DATA / f"{name}.json").read_text())


@pytest.fixture
def gp23():
    return load("gp23")


@pytest.fixture
def kronecker():
    return load("kronecker")


@pytest.fixture
def loop_a2():
    return load("loop_a2")


@pytest.fixture(params=CORPUS)
def corpus(request):
    return load(request.param)


def m1():
    """Accepts 0^n 1 for n > 0."""
    return make_dfa([("p0", "0", "p1"), ("p1", "0", "p1"), ("p1", "1", "p2")], "p0", ["p2"])


def m2():
    """Two states swapped by 1, each with a 0-loop; q accepting."""
    return make_dfa([("p", "0", "p"), ("q", "1", "p"), ("q", "0", "q"), ("p", "1", "q")],
                    "p", ["q"])
