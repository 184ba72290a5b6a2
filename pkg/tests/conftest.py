import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from bandsym.band import from_dense
from bandsym.scalar import Poly, canonical


def rationals(max_num=20, max_den=6):
    return st.builds(Fraction, st.integers(-max_num, max_num), st.integers(1, max_den))


def polys(max_degree=3):
    return st.lists(rationals(9, 4), max_size=max_degree + 1).map(Poly)


def nonzero_polys(max_degree=3):
    return polys(max_degree).filter(lambda p: not p.is_zero())


# a Scalar: either a rational or a canonical (possibly symbolic) quotient
scalars = st.one_of(
    rationals(),
    st.builds(canonical, polys(2), nonzero_polys(2)),
)


def random_band_rows(rng: random.Random, n: int, w: int, lo=-2, hi=2, density=0.8):
    """Dense rows of a random band matrix with many zeros."""
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(max(0, i - w), min(n, i + w + 1)):
            if rng.random() < density:
                rows[i][j] = Fraction(rng.randint(lo, hi))
    return rows


@pytest.fixture
def zero_pivot_system():
    """The 2x2 swap matrix [[0, 1], [1, 0]] padded with a unit corner to n = 3."""
    return from_dense([[0, 1, 0], [1, 0, 0], [0, 0, 1]], 1, [1, 2, 5])


def pytest_terminal_summary(terminalreporter):
    from criteria import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
