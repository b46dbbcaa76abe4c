import pytest

from b21parity.gf2series import bt_parity, c_series


@pytest.fixture(scope="session")
def b21_2m():
    """b_21 parity for indices below 2 * 10^6."""
    return bt_parity(21, 2_000_000)


@pytest.fixture(scope="session")
def b21_small():
    return bt_parity(21, 100_000)


@pytest.fixture(scope="session")
def cser():
    """Parity of f_3^4 / f_1 to 5 * 10^5 terms."""
    return c_series(500_000)
