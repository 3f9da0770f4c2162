import pytest

from toricover import construct_standard


@pytest.fixture
def segment():
    return construct_standard("cube", 1)


@pytest.fixture
def q2():
    return construct_standard("cube", 2)


@pytest.fixture
def q3():
    return construct_standard("cube", 3)


@pytest.fixture
def d2():
    return construct_standard("simplex", 2)


@pytest.fixture
def d3():
    return construct_standard("simplex", 3)
