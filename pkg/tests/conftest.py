import pytest

from rtss import PrimeField, designs


@pytest.fixture(scope="session")
def f5():
    return PrimeField(5)


@pytest.fixture(scope="session")
def f7():
    return PrimeField(7)


@pytest.fixture(scope="session")
def f11():
    return PrimeField(11)


@pytest.fixture(scope="session")
def sts9():
    design, classes = designs.kirkman_sts9()
    return design, classes


@pytest.fixture(scope="session")
def fano():
    return designs.pg2(2)


@pytest.fixture(scope="session")
def pg3():
    return designs.pg2(3)


@pytest.fixture(scope="session")
def pg5():
    return designs.pg2(5)
