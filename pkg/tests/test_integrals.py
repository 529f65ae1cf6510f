from fractions import Fraction

import mpmath
import pytest

from colpart.analytic.hypergeom import HypergeometricDomainError, hyp2f1
from colpart.analytic.integrals import (
    InvalidParameterError,
    _omega_b_prefactor,
    _omega_b_weight,
    etilde,
    integral_I_closed,
    integral_I_quadrature,
    omega_path_a,
    omega_path_b,
    omega_path_b_closed,
)

PREC = 60


def rel(a, b):
    with mpmath.workdps(PREC + 20):
        return abs(a - b) / abs(b)


@pytest.mark.parametrize("r,n,v", [(0, 3, 6), (2, 3, 2), (1, 5, 3)])
def test_integral_dual_path(r, n, v):
    quad = integral_I_quadrature(r, n, v, PREC)
    closed = integral_I_closed(r, n, v, PREC)
    assert rel(quad.value, closed.value) < mpmath.mpf(10) ** (-PREC + 5)


def test_integral_domain():
    with pytest.raises(HypergeometricDomainError):
        integral_I_closed(0, 1, 2)
    with pytest.raises(InvalidParameterError):
        integral_I_closed(3, 3, 2)


@pytest.mark.parametrize("r,v", [(0, 2), (1, 4), (3, 6)])
def test_integral_power_law(r, v):
    expected = 4 * v - 2 * r + 3
    with mpmath.workdps(40):
        # quadrature with the 2F1 factor divided out, n = 5 against n = 10
        stripped = []
        for n in (5, 10):
            F = hyp2f1(1, Fraction(3, 2) + 2 * v - r, Fraction(7, 2) - r, Fraction(1, n * n), 30).value
            stripped.append(integral_I_quadrature(r, n, v, 30).value / F)
        assert abs(mpmath.log(stripped[0] / stripped[1]) / mpmath.log(2) - expected) < 0.01 * expected
        # far out the 2F1 factor is close to 1 and the raw closed form follows the same law
        raw = integral_I_closed(r, 40, v, 30).value / integral_I_closed(r, 80, v, 30).value
        assert abs(mpmath.log(raw) / mpmath.log(2) - expected) < 0.01 * expected


@pytest.mark.parametrize("v,n", [(2, 3), (6, 5), (4, 3), (9, 7), (13, 3)])
def test_omega_paths_agree(v, n):
    a = omega_path_a(v, n, PREC)
    b = omega_path_b(v, n, PREC)
    c = omega_path_b_closed(v, n, PREC)
    assert rel(a.value, b.value) < mpmath.mpf(10) ** (-PREC + 8)
    assert rel(b.value, c.value) < mpmath.mpf(10) ** (-PREC + 8)


@pytest.mark.parametrize("v", [2, 5, 6, 12])
def test_omega_dominant_term(v):
    n = 10**6
    a = omega_path_a(v, n, 40)
    with mpmath.workdps(60):
        leading = (
            _omega_b_prefactor(v) * mpmath.mpf(_omega_b_weight(v, 0).numerator) / _omega_b_weight(v, 0).denominator
        )
        # corrections are O(n^-2)
        assert rel(a.value, leading) < mpmath.mpf(10) ** -10


def test_omega_domain():
    with pytest.raises(HypergeometricDomainError):
        omega_path_a(3, 1)
    with pytest.raises(InvalidParameterError):
        omega_path_b(1, 3)


def test_etilde_small_case():
    e = etilde(2, 0, 0)
    assert (e.r, e.e) == (Fraction(1, 4), -3)


def etilde_numeric(v, j, m):
    g, rf = mpmath.gamma, mpmath.rf
    val = (-1) ** j * mpmath.mpf(8) ** -v * g(v - 1.5) * g(v + 1.5) / (g(3.5) * g(-1.5))
    val *= (2 / mpmath.pi) ** (2 * v - 1)
    val *= mpmath.factorial(2 * v + m - 2) / (
        mpmath.factorial(j) * mpmath.factorial(m) * mpmath.factorial(2 * v - j - 2)
    )
    val *= rf(v - j - 1, v) * rf(2.5, j) / (rf(-1.5 - j, v) * rf(3.5, j))
    return val


@pytest.mark.parametrize("v", [2, 3, 6, 8, 12])
def test_etilde_against_numeric_substitution(v):
    with mpmath.workdps(40):
        for j in range(v - 1):
            for m in (0, 1, 7):
                exact = etilde(v, j, m)
                num = etilde_numeric(v, j, m)
                assert exact.sign() == mpmath.sign(num)
                assert abs(exact.to_mpf() - num) < mpmath.mpf(10) ** -30 * abs(num)


def test_etilde_sign_pattern_from_evaluation():
    with mpmath.workdps(30):
        for v in range(2, 12):
            for j in range(v - 2):
                product = etilde(v, j, 0).sign() * etilde(v, j + 1, 0).sign()
                assert product == mpmath.sign(etilde_numeric(v, j, 0) * etilde_numeric(v, j + 1, 0))


def test_etilde_rising_factorial_never_zero():
    for v in range(2, 20):
        for j in range(v - 1):
            assert all((Fraction(-3, 2) - j + i) != 0 for i in range(v))


def test_etilde_parameter_checks():
    with pytest.raises(InvalidParameterError):
        etilde(4, 3, 0)
    with pytest.raises(InvalidParameterError):
        etilde(1, 0, 0)
    with pytest.raises(InvalidParameterError):
        etilde(3, 0, -1)


@pytest.mark.parametrize("v,n", [(2, 3), (6, 5), (8, 3)])
def test_etilde_resums_omega(v, n):
    # sum_{j,m} Etilde(j,m) n^{-2j-2m} = (2/pi)^{2v-1} omega_v(n) / (8^v Gamma(7/2))
    with mpmath.workdps(PREC + 10):
        x = mpmath.mpf(1) / (n * n)
        total = mpmath.fsum(etilde(v, j, m).to_mpf() * x ** (j + m) for j in range(v - 1) for m in range(160))
        omega = omega_path_a(v, n, PREC).value
        expected = (2 / mpmath.pi) ** (2 * v - 1) * omega / (mpmath.mpf(8) ** v * mpmath.gamma(mpmath.mpf(7) / 2))
        assert rel(total, expected) < mpmath.mpf(10) ** (-PREC + 10)
