import pytest

from dlv import build_tower


@pytest.fixture(scope="session")
def tower_3():
    return build_tower(3)


@pytest.fixture(scope="session")
def tower_5():
    return build_tower(5)


@pytest.fixture(scope="session")
def tower_7():
    return build_tower(7)
