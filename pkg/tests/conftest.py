import pytest

from src.models import Classical, PowerAP
from src.utils import load_config, set_precision


@pytest.fixture(autouse=True)
def working_precision():
    """Every test starts and ends at 50 digits."""
    set_precision(50)
    yield
    set_precision(50)


@pytest.fixture
def classical():
    return Classical()


@pytest.fixture
def squares():
    return PowerAP(1, 1, 2)


@pytest.fixture
def progression():
    return PowerAP(3, 4, 1)


@pytest.fixture
def config():
    return load_config()
