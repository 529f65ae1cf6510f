import pytest

from colpart.modular import delta_series


@pytest.fixture(scope="session")
def tau_700():
    """Ramanujan tau up to the index needed for N = 700."""
    return delta_series((700 * 700 - 1) // 8).int_coeffs()
