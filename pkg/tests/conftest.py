import random
from fractions import Fraction

import pytest

from qdivisor.registry import IdentityInstance


def inst(id, **params):
    """Instance from keyword parameters given as text or numbers."""
    return IdentityInstance.from_params(id, params)


def rand_frac(rng, limit=50, nonzero=True):
    while True:
        v = Fraction(rng.randint(-limit, limit), rng.randint(1, limit))
        if v or not nonzero:
            return v


@pytest.fixture
def rng():
    return random.Random(20240611)


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[key])
