import pytest

from topoforge.catalog import enumerate_topologies
from topoforge.space import discrete_space, indiscrete_space, sierpinski


@pytest.fixture(scope="session")
def spaces_up_to_3():
    out = []
    for n in range(1, 4):
        out.extend(enumerate_topologies(n))
    return out


@pytest.fixture(scope="session")
def spaces_up_to_4(spaces_up_to_3):
    return spaces_up_to_3 + list(enumerate_topologies(4))


@pytest.fixture
def sier():
    return sierpinski()


@pytest.fixture
def ind2():
    return indiscrete_space(2)


@pytest.fixture
def disc2():
    return discrete_space(2)


@pytest.fixture
def disc3():
    return discrete_space(3)
