import random

import pytest
from hypothesis import settings

from mincode import code_from_matrix, code_from_points, field_new
from mincode.geometry import space

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

FIELDS = (2, 3, 4, 5, 7, 8, 9, 11, 13, 16)

# (q, k) pairs with q^k <= 2^12
SMALL_SPACES = [(q, k) for q in (2, 3, 4) for k in range(1, 6) if q ** k <= 1 << 12]


def random_spanning_mask(rng: random.Random, q: int, k: int, n: int | None = None) -> int:
    pg = space(q, k)
    total = pg.num_points
    while True:
        size = n if n is not None else rng.randint(k, total)
        mask = sum(1 << p for p in rng.sample(range(total), size))
        if pg.rank_of_mask(mask) == k:
            return mask


def random_code(rng: random.Random, q: int, k: int, n: int | None = None):
    return code_from_points(field_new(q), k, random_spanning_mask(rng, q, k, n))


def simplex(q: int, k: int):
    pg = space(q, k)
    return code_from_points(field_new(q), k, pg.full_mask)


@pytest.fixture
def rng():
    return random.Random(20241016)


@pytest.fixture
def simplex_7_3():
    return code_from_matrix(field_new(2), [[1, 0, 0, 1, 1, 0, 1],
                                           [0, 1, 0, 1, 0, 1, 1],
                                           [0, 0, 1, 0, 1, 1, 1]])


@pytest.fixture
def conic_4_3_3():
    # points (1,t,t^2) for t in GF(3) and (0,0,1)
    return code_from_matrix(field_new(3), [[1, 1, 1, 0],
                                           [0, 1, 2, 0],
                                           [0, 1, 1, 1]])


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
