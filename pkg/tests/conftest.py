import random
from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from gammacoh.modular import ALPHA, BETA, I, MINUS_I, S, U, IntMatrix2
from gammacoh.representations import HomogeneousPoly

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")

SL2Z_STEPS = [ALPHA, BETA, ALPHA.inverse(), BETA.inverse()]
THETA_STEPS = [S, U, S.inverse(), U.inverse(), MINUS_I]


def product(steps, idx) -> IntMatrix2:
    g = I
    for i in idx:
        g = g @ steps[i]
    return g


sl2z_elements = st.lists(st.integers(0, 3), max_size=12).map(lambda idx: product(SL2Z_STEPS, idx))
theta_elements = st.lists(st.integers(0, 4), max_size=12).map(lambda idx: product(THETA_STEPS, idx))
small_rationals = st.fractions(min_value=-20, max_value=20, max_denominator=6)


def polys(k, variant):
    return st.lists(small_rationals, min_size=k + 1, max_size=k + 1).map(
        lambda cs: HomogeneousPoly(k, variant, tuple(cs)))


def random_sl2z(rng: random.Random, length: int = 12) -> IntMatrix2:
    return product(SL2Z_STEPS, [rng.randrange(4) for _ in range(rng.randint(0, length))])


def random_theta(rng: random.Random, length: int = 12) -> IntMatrix2:
    return product(THETA_STEPS, [rng.randrange(5) for _ in range(rng.randint(0, length))])


def random_poly(rng: random.Random, k: int, variant: str) -> HomogeneousPoly:
    return HomogeneousPoly(k, variant, tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(k + 1)))


# -- acceptance reporting ---------------------------------------------------------

_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_log():
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
