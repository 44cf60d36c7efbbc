from fractions import Fraction

import pytest

from cyclespec import AlphaParam, PrecisionContext


@pytest.fixture(scope="session")
def ctx200():
    return PrecisionContext(200)


@pytest.fixture(scope="session")
def ctx350():
    return PrecisionContext(350)


@pytest.fixture(scope="session")
def a_third():
    return AlphaParam(Fraction(1, 3))


@pytest.fixture(scope="session")
def a_half():
    return AlphaParam(Fraction(1, 2))


def assert_close(got, want, tol):
    assert abs(got - want) <= tol, f"{got} vs {want} (tol {tol})"
