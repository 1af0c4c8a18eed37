import pytest

from kummer.catalog import ACCEPTANCE_ACTIONS, catalog
from kummer.strata import stratify


@pytest.fixture(scope="session")
def actions():
    """The five headline integral actions, built once."""
    return {name: catalog(name, d=d) for name, d in ACCEPTANCE_ACTIONS}


@pytest.fixture(scope="session")
def reports(actions):
    """Stratification reports for the five headline actions, built once."""
    return {name: stratify(action) for name, action in actions.items()}
