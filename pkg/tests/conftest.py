import pytest

from orthosign import get_fixture


@pytest.fixture(scope="session")
def q1():
    return get_fixture("q1")


@pytest.fixture(scope="session")
def q2():
    return get_fixture("q2")


@pytest.fixture(scope="session")
def r3():
    return get_fixture("r3")


@pytest.fixture(scope="session")
def s3():
    return get_fixture("s3")


@pytest.fixture(scope="session")
def t3():
    return get_fixture("t3")


@pytest.fixture(scope="session")
def pstar():
    return get_fixture("pstar")
