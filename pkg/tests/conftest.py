import pytest

from petersen_census.transfer import Pipeline
from petersen_census.verification import Context


@pytest.fixture(scope="session")
def pipe3():
    return Pipeline.build(3)


@pytest.fixture(scope="session")
def pipe4():
    return Pipeline.build(4)


@pytest.fixture(scope="session")
def ctx3(pipe3):
    c = Context(3)
    c.__dict__["pipeline"] = pipe3
    return c


@pytest.fixture(scope="session")
def ctx4(pipe4):
    c = Context(4)
    c.__dict__["pipeline"] = pipe4
    return c
