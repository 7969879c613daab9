import pytest

from superspecial import acceptance


@pytest.fixture(scope="session")
def censuses_1000():
    """Full census sweep 5 <= p <= 1000, shared by the acceptance criteria."""
    return acceptance.sweep_censuses(1000)


@pytest.fixture(scope="session")
def seeded_models_100():
    """The 100 seed-42 random trace models used by criteria 6 and 7."""
    return acceptance.seeded_models(seed=42, trials=100)
