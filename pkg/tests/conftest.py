import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from circlerep.maps import PL

settings.register_profile(
    "suite", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("suite")


@st.composite
def pl_maps(draw, max_breaks=4, den=32, shift=True):
    """Random PL lifts with small denominators."""
    n = draw(st.integers(1, max_breaks))
    xs = sorted(draw(st.lists(st.integers(0, den - 1), min_size=n, max_size=n, unique=True)))
    ys = sorted(draw(st.lists(st.integers(0, den - 1), min_size=n, max_size=n, unique=True)))
    t = draw(st.integers(-2 * den, 2 * den)) if shift else 0
    return PL([(Fraction(x, den), Fraction(y + t, den)) for x, y in zip(xs, ys)])


seeds = st.integers(0, 2 ** 32 - 1)


@pytest.fixture
def rng():
    return random.Random(12345)


# one line per acceptance criterion, repeated in the terminal summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
