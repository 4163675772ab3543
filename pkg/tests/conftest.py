import pytest

from mrdcodes import Field


@pytest.fixture(scope="session")
def f4():
    return Field(2, 1, 2)


@pytest.fixture(scope="session")
def f16():
    return Field(2, 1, 4)


@pytest.fixture(scope="session")
def f32():
    return Field(2, 1, 5)


@pytest.fixture(scope="session")
def f64():
    return Field(2, 1, 6)


@pytest.fixture(scope="session")
def f81():
    return Field(3, 1, 4)


@pytest.fixture(scope="session")
def f243():
    return Field(3, 1, 5)


@pytest.fixture(scope="session")
def f729():
    # q = 9 tower: p = 3, lambda = 2, n = 3
    return Field(3, 2, 3)
