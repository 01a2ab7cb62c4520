import pytest

from polyrep import RingCtx, build_generators, enumerate_polynomial_functions


@pytest.fixture(scope="session")
def z4():
    return RingCtx(2, 2)


@pytest.fixture(scope="session")
def z8():
    return RingCtx(2, 3)


@pytest.fixture(scope="session")
def z9():
    return RingCtx(3, 2)


@pytest.fixture(scope="session")
def z4_basis(z4):
    return build_generators(z4, 1)


@pytest.fixture(scope="session")
def z8_basis(z8):
    return build_generators(z8, 1)


@pytest.fixture(scope="session")
def z9_basis(z9):
    return build_generators(z9, 1)


@pytest.fixture(scope="session")
def z4_oracle(z4):
    return enumerate_polynomial_functions(z4)


@pytest.fixture(scope="session")
def z8_oracle(z8):
    return enumerate_polynomial_functions(z8)


@pytest.fixture(scope="session")
def z9_oracle(z9):
    return enumerate_polynomial_functions(z9)
