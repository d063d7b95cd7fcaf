import pytest

from inspectkit.dataset import reference_dataset


@pytest.fixture(scope="session")
def reference():
    return reference_dataset()
