import pytest

from zetakit.precision import PrecisionContext


@pytest.fixture(scope="session")
def ctx30() -> PrecisionContext:
    return PrecisionContext.from_digits(30)


@pytest.fixture(scope="session")
def ctx15() -> PrecisionContext:
    return PrecisionContext.from_digits(15)
