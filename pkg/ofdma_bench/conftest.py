import pytest

from ofdma_bench.allocation.fixtures import load_fixture
from ofdma_bench.allocation.tests.factories import GaParamsFactory


@pytest.fixture
def table4():
    return load_fixture("table4")


@pytest.fixture
def table5():
    return load_fixture("table5")


@pytest.fixture
def table6():
    return load_fixture("table6")


@pytest.fixture
def fast_ga():
    return GaParamsFactory()
