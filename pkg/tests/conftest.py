import pytest

from cfreach.systems import fixture


@pytest.fixture
def ferfera():
    return fixture("ferfera")


@pytest.fixture
def lotka_volterra():
    return fixture("lotka-volterra")
