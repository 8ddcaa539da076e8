import random

import pytest

from cubic_manin.ring import ADMISSIBLE_N, QuadInt, make_field

# lines reported by the acceptance module, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(params=ADMISSIBLE_N, ids=lambda n: f"n{n}")
def field(request):
    return make_field(request.param)


@pytest.fixture
def rng():
    return random.Random(20240607)


def random_element(rng: random.Random, R: int = 30, nonzero: bool = True) -> QuadInt:
    while True:
        x = QuadInt(rng.randint(-R, R), rng.randint(-R, R))
        if x != (0, 0) or not nonzero:
            return x


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
