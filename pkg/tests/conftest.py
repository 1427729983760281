import pytest

from doubledkh import bundled


@pytest.fixture(scope="session")
def table():
    return bundled.table()
