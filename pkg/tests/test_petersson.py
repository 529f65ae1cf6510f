import mpmath
import pytest

from colpart.analytic.petersson import PrecisionInfeasibleError, default_terms, petersson_norm
from colpart.modular import cusp_eigenform_1dim, delta_series, eigenforms_numeric

# published value of the integral of |Delta|^2 y^10 over the standard domain
DELTA_NORM_LITERATURE = "1.0353620568043209223478168122e-6"


@pytest.fixture(scope="module")
def tau():
    return delta_series(200).int_coeffs()


def brute_norm(coeffs, weight, terms=40):
    """Two-dimensional quadrature of |f|^2 y^(k-2) over the standard domain at double precision."""
    with mpmath.workdps(15):

        def integrand(x, y):
            q = mpmath.expjpi(2 * mpmath.mpc(x, y))
            s, p = mpmath.mpc(0), mpmath.mpc(1)
            for n in range(1, terms + 1):
                p *= q
                s += coeffs[n] * p
            return abs(s) ** 2 * y ** (weight - 2)

        inner = lambda x: mpmath.quad(lambda y: integrand(x, y), [mpmath.sqrt(1 - x * x), 1.5, 4, 12])
        return 2 * mpmath.quad(inner, [0, 0.5])


def test_delta_norm_positive_and_known(tau):
    norm = petersson_norm(tau, 12, 40)
    assert norm.value > 0
    with mpmath.workdps(40):
        assert abs(norm.value - mpmath.mpf(DELTA_NORM_LITERATURE)) < mpmath.mpf(10) ** -34
    assert norm.error < abs(norm.value) * mpmath.mpf(10) ** -35


def test_delta_norm_against_brute_quadrature(tau):
    brute = brute_norm(tau, 12)
    assert abs(petersson_norm(tau, 12, 30).value - brute) < 1e-13 * brute


def test_norm_stable_under_doubling(tau):
    base = petersson_norm(tau, 12, 30)
    T = base.info["n_terms"]
    Y = mpmath.mpf(base.info["y_max"])
    doubled = petersson_norm(tau, 12, 30, y_max=2 * Y, n_terms=2 * T)
    with mpmath.workdps(40):
        assert abs(doubled.value - base.value) < mpmath.mpf(10) ** -10 * base.value


def test_weight16_against_brute_quadrature():
    a = cusp_eigenform_1dim(16, 60).forms[0]
    assert abs(petersson_norm(a, 16, 30).value - brute_norm(a, 16)) < 1e-12 * brute_norm(a, 16)


def test_numeric_eigenform_norms():
    table = eigenforms_numeric(24, 80, 40)
    norms = [petersson_norm(f, 24, 40) for f in table.forms]
    assert all(n.value > 0 for n in norms)


def test_short_expansion_rejected(tau):
    with pytest.raises(PrecisionInfeasibleError):
        petersson_norm(tau[:10], 12, 60)
    assert default_terms(12, 60) > 10


def test_small_cutoff_reported_as_infeasible(tau):
    with pytest.raises(PrecisionInfeasibleError, match="y-tail"):
        petersson_norm(tau, 12, 60, y_max=2)


def test_not_a_cusp_form():
    with pytest.raises(ValueError):
        petersson_norm([1] * 100, 12, 30)
