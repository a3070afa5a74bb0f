import pytest

from netenergy.access import Territory
from netenergy.catalog import DEFAULT_CATALOG, GlobalFactors
from netenergy.peakstats import default_household_distribution


@pytest.fixture(scope="session")
def dist():
    return default_household_distribution()


@pytest.fixture(scope="session")
def territory():
    return Territory()


@pytest.fixture(scope="session")
def factors():
    return GlobalFactors()


@pytest.fixture(scope="session")
def catalog():
    return DEFAULT_CATALOG
