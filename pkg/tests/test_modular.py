from fractions import Fraction
from itertools import combinations

import mpmath
import pytest

from colpart.modular import (
    ONE_DIM_WEIGHTS,
    EigenformTable,
    InvalidParameterError,
    TruncationError,
    bernoulli,
    charpoly,
    cusp_dimension,
    cusp_eigenform_1dim,
    delta_series,
    eigenforms_numeric,
    eisenstein,
    hecke_t2_matrix,
    sigma,
    sigma_table,
    victor_miller_cusp_basis,
)
from colpart.series import _conv, euler_product_naive

PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]
TAU_SMALL = [0, 1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920]


def test_bernoulli_values():
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(4) == Fraction(-1, 30)
    assert bernoulli(12) == Fraction(-691, 2730)


@pytest.mark.parametrize("m", [0, 1, 3])
def test_bernoulli_rejects_bad_index(m):
    with pytest.raises(InvalidParameterError):
        bernoulli(m)


def test_sigma():
    assert sigma(3, 6) == 252
    assert all(sigma(e, 1) == 1 for e in range(10))
    assert all(sigma(1, p) == p + 1 for p in PRIMES)
    assert sigma_table(5, 40)[1:] == [sigma(5, n) for n in range(1, 41)]
    with pytest.raises(InvalidParameterError):
        sigma(1, 0)


def test_eisenstein_expansions():
    assert eisenstein(4, 2).series.coeffs == (1, 240, 2160)
    assert eisenstein(2, 2).series.coeffs == (1, -24, -72)
    assert eisenstein(6, 2).series.coeffs == (1, -504, -16632)
    assert all(eisenstein(k, 5)[0] == 1 for k in range(2, 30, 2))


@pytest.mark.parametrize("weight", range(4, 28, 2))
def test_eisenstein_denominators(weight):
    den = (Fraction(-2 * weight) / bernoulli(weight)).denominator
    assert all(den % c.denominator == 0 for c in eisenstein(weight, 30).series)


def test_eisenstein_products():
    N = 60
    E4, E6 = eisenstein(4, N).series, eisenstein(6, N).series
    assert E4 * E4 == eisenstein(8, N).series
    assert E4 * E6 == eisenstein(10, N).series


def test_delta_from_eisenstein_route():
    N = 120
    E4, E6 = eisenstein(4, N).series, eisenstein(6, N).series
    assert (E4**3 - E6**2).scale(Fraction(1, 1728)) == delta_series(N)


def test_delta_from_expanded_product():
    N = 60
    e = euler_product_naive(N - 1).int_coeffs()
    acc = [1] + [0] * (N - 1)
    for _ in range(24):
        acc = _conv(acc, e, N - 1, "schoolbook")
    assert delta_series(N).int_coeffs() == [0] + acc


def test_tau_values():
    tau = delta_series(10)
    assert list(tau.int_coeffs()) == TAU_SMALL
    assert tau[6] == tau[2] * tau[3]


def test_tau_16():
    assert cusp_eigenform_1dim(16, 3).forms[0][2] == 216


def test_weight_12_is_delta():
    assert cusp_eigenform_1dim(12, 50).forms[0] == list(delta_series(50).coeffs)


@pytest.mark.parametrize("weight", ONE_DIM_WEIGHTS)
def test_one_dimensional_eigenforms(weight):
    a = cusp_eigenform_1dim(weight, 100).forms[0]
    assert a[0] == 0 and a[1] == 1
    assert all(c.denominator == 1 for c in a)
    for p, q in combinations([2, 3, 5, 7], 2):
        assert a[p] * a[q] == a[p * q]
    for p in PRIMES:
        assert abs(a[p]) <= 2 * p ** ((weight - 1) / 2)
    # a(p^2) = a(p)^2 - p^{k-1}
    assert a[4] == a[2] ** 2 - 2 ** (weight - 1)


def test_unlisted_weight_rejected():
    with pytest.raises(InvalidParameterError):
        cusp_eigenform_1dim(24, 10)


def test_cusp_dimensions():
    assert [cusp_dimension(k) for k in range(0, 40, 2)] == [0, 0, 0, 0, 0, 0, 1, 0, 1, 1, 1, 1, 2, 1, 2, 2, 2, 2, 3, 2]


def test_victor_miller_basis_shape():
    g1, g2 = victor_miller_cusp_basis(24, 10)
    assert (g1[1], g1[2], g2[1], g2[2]) == (1, 0, 0, 1)
    assert victor_miller_cusp_basis(12, 10) == [delta_series(10)]
    assert victor_miller_cusp_basis(14, 10) == []
    for weight in (36, 48):
        basis = victor_miller_cusp_basis(weight, 20)
        d = len(basis)
        for i, g in enumerate(basis, start=1):
            assert [g[j] for j in range(1, d + 1)] == [int(i == j) for j in range(1, d + 1)]


def test_t2_matrix():
    assert hecke_t2_matrix(12, victor_miller_cusp_basis(12, 4)) == [[-24]]
    C = hecke_t2_matrix(24, victor_miller_cusp_basis(24, 8))
    assert C[0][0] + C[1][1] == 1080
    poly = charpoly(C)
    assert poly == [1, -1080, -20468736]
    assert all(c.denominator == 1 for c in poly)


def test_t2_matrix_needs_enough_terms():
    basis = victor_miller_cusp_basis(48, 4)
    with pytest.raises(TruncationError):
        hecke_t2_matrix(48, basis)


@pytest.mark.parametrize("weight", [24, 36, 48])
def test_charpoly_integral(weight):
    C = hecke_t2_matrix(weight, victor_miller_cusp_basis(weight, 12))
    assert all(c.denominator == 1 for c in charpoly(C))


def test_numeric_falls_back_to_exact():
    table = eigenforms_numeric(12, 20)
    assert table.exact and table.forms[0] == list(delta_series(20).coeffs)


@pytest.fixture(scope="module")
def weight24():
    return eigenforms_numeric(24, 200, prec=60)


def test_weight24_eigenvalues(weight24):
    with mpmath.workdps(80):
        root = 12 * mpmath.sqrt(144169)
        expected = [540 - root, 540 + root]
        for got, want in zip(weight24.labels, expected):
            assert abs(got - want) < mpmath.mpf(10) ** -55 * abs(want)
        assert abs(mpmath.fsum(weight24.labels) - 1080) < mpmath.mpf(10) ** -55
        assert abs(weight24.labels[0] * weight24.labels[1] + 20468736) < mpmath.mpf(10) ** -50


def test_weight24_properties(weight24):
    with mpmath.workdps(80):
        for a in weight24.forms:
            assert a[0] == 0 and abs(a[1] - 1) < mpmath.mpf(10) ** -60
            assert abs(a[2] * a[3] - a[6]) < mpmath.mpf(10) ** -59 * abs(a[6])
            for m, n in [(2, 5), (3, 7), (4, 9), (5, 11), (8, 25)]:
                assert abs(a[m] * a[n] - a[m * n]) < mpmath.mpf(10) ** -55 * abs(a[m * n])
            for p in PRIMES:
                assert abs(a[p]) <= 2 * mpmath.mpf(p) ** (mpmath.mpf(23) / 2)


def test_weight24_coefficients_sum_to_exact_trace(weight24):
    # f = g_1 + a_f(2) g_2 in the echelon basis, so the pair sums to 2 g_1 + 1080 g_2
    g1, g2 = victor_miller_cusp_basis(24, 200)
    with mpmath.workdps(80):
        for n in (1, 2, 3, 10, 199):
            tr = weight24.forms[0][n] + weight24.forms[1][n]
            exact = 2 * g1[n] + 1080 * g2[n]
            assert abs(tr - mpmath.mpf(exact.numerator) / exact.denominator) < mpmath.mpf(10) ** -50 * max(1, abs(tr))


def test_table_json_round_trip(weight24):
    exact = cusp_eigenform_1dim(16, 30)
    assert EigenformTable.from_json(exact.to_json()).forms == exact.forms
    back = EigenformTable.from_json(weight24.to_json())
    with mpmath.workdps(70):
        assert all(
            abs(x - y) <= mpmath.mpf(10) ** -58 * max(1, abs(x)) for x, y in zip(back.forms[1], weight24.forms[1])
        )
