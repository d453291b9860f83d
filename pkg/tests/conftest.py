import pytest

from config import TestConfig
from treesylow import create_app
from treesylow.engine import closure
from treesylow.sylow import s_beta


@pytest.fixture(scope='session')
def app():
    return create_app(TestConfig)


@pytest.fixture(scope='session')
def G_2():
    return closure(s_beta(2))


@pytest.fixture(scope='session')
def G_3():
    return closure(s_beta(3))


@pytest.fixture(scope='session')
def G_4():
    return closure(s_beta(4))
