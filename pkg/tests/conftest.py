import pytest

import aptuple as ap


@pytest.fixture(scope="session")
def table_small():
    """Covers x = 10^4 censuses with offsets up to 48."""
    return ap.build_omega_table(10_100)


@pytest.fixture(scope="session")
def table_big():
    """Covers x = 10^7 censuses with offsets up to 48."""
    return ap.build_omega_table(10_000_048)
