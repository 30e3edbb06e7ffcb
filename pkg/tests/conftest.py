import pytest
from hypothesis import settings

from quadapprox.algebraic import AlgebraicNumber

settings.register_profile("quick", max_examples=40, deadline=None)
settings.load_profile("quick")


@pytest.fixture(scope="session")
def quartic_xi():
    """Complex root of X^4 - X - 1 with positive imaginary part."""
    return AlgebraicNumber.parse("X^4-X-1@2")


@pytest.fixture(scope="session")
def quintic_xi():
    return AlgebraicNumber.parse("X^5-X-1@3")
