import random
from fractions import Fraction

import pytest

from sdreal.digits import run_deep
from sdreal.stream_ops import reset_precondition_violations


@pytest.fixture
def rng():
    return random.Random(2021)


@pytest.fixture
def rational_grid():
    """Every multiple of 1/16 in [-1, 1]."""
    return [Fraction(n, 16) for n in range(-16, 17)]


@pytest.fixture
def deep():
    """Call a function under run_deep (large stack, raised recursion limit)."""
    def call(fn, *args):
        return run_deep(fn, *args)
    return call


@pytest.fixture(autouse=True)
def clean_violations(monkeypatch):
    monkeypatch.delenv("SDREAL_DEBUG", raising=False)
    reset_precondition_violations()
    yield
    reset_precondition_violations()
