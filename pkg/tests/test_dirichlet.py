from fractions import Fraction
from itertools import pairwise

import mpmath
import pytest

from colpart.analytic.dirichlet import (
    TruncationError,
    TruncationParams,
    dirichlet_partial,
    dirichlet_tail_bound,
    divisor_bound_constant,
    eigen_data,
    has_trace_formula,
    hecke_trace,
    kronecker_m4,
    verify_theorem3,
    weighted_sum_Df,
)
from colpart.analytic.petersson import PrecisionInfeasibleError
from colpart.modular import cusp_eigenform_1dim, divisor_count_table
from colpart.rankin_cohen import beta

LIGHT = TruncationParams(M=40, N=300, prec=40)


def to_mpf(x: Fraction):
    return mpmath.mpf(x.numerator) / x.denominator


def test_kronecker_symbol():
    assert [kronecker_m4(n) for n in range(1, 10)] == [1, 0, -1, 0, 1, 0, -1, 0, 1]


def test_partial_sum_small_cases(tau_700):
    assert dirichlet_partial(tau_700, 1, 14).value == 0
    assert dirichlet_partial(tau_700, 2, 14).value == 0
    with mpmath.workdps(80):
        assert abs(dirichlet_partial(tau_700, 3, 14).value + mpmath.mpf(3) ** -14) < mpmath.mpf(10) ** -66


def test_partial_sum_needs_coefficients(tau_700):
    with pytest.raises(TruncationError):
        dirichlet_partial(tau_700[:100], 50, 14)


@pytest.mark.parametrize("N", [4, 10, 50])
def test_even_n_contribute_nothing(tau_700, N):
    assert dirichlet_partial(tau_700, N, 14).value == dirichlet_partial(tau_700, N - 1, 14).value


def test_partial_sum_against_direct_loop(tau_700):
    with mpmath.workdps(50):
        direct = mpmath.fsum(
            kronecker_m4(n) * tau_700[(n * n - 1) // 8] * mpmath.mpf(n) ** -16 for n in range(1, 80) if n % 2
        )
        assert abs(dirichlet_partial(tau_700, 80, 16, 40).value - direct) < mpmath.mpf(10) ** -45


def test_divisor_bound_constant():
    assert abs(divisor_bound_constant(2) - mpmath.sqrt(3)) < 1e-12
    C = divisor_bound_constant(4)
    d = divisor_count_table(100_000)
    assert all(d[m] <= C * m**0.25 for m in range(1, 100_001))
    assert max(d[m] / m**0.25 for m in range(1, 100_001)) > 0.9 * C


@pytest.mark.parametrize("s", [14, 16, 20])
def test_tail_bound_dominates_actual_tail(tau_700, s):
    N = 100
    with mpmath.workdps(40):
        actual = abs(dirichlet_partial(tau_700, 700, s, 30).value - dirichlet_partial(tau_700, N, s, 30).value)
        assert actual <= dirichlet_tail_bound(12, N, s)


def test_truncation_params_invariants():
    with pytest.raises(ValueError):
        TruncationParams(M=-1)
    with pytest.raises(ValueError):
        TruncationParams(N=0)
    with pytest.raises(ValueError):
        TruncationParams(prec=20)
    assert TruncationParams().coefficient_order == (700 * 700 - 1) // 8


@pytest.fixture(scope="module")
def light_delta(tau_700):
    return weighted_sum_Df(6, tau_700, LIGHT)


def test_weighted_sum_near_beta6(light_delta):
    with mpmath.workdps(40):
        assert abs(light_delta.value - to_mpf(beta(6))) <= light_delta.error
    assert light_delta.info["bound_kind"].startswith("heuristic")


def test_doubling_M_within_m_tail(tau_700, light_delta):
    doubled = weighted_sum_Df(6, tau_700, TruncationParams(M=80, N=300, prec=40))
    with mpmath.workdps(40):
        assert abs(doubled.value - light_delta.value) <= mpmath.mpf(light_delta.info["m_tail"]) + mpmath.mpf(10) ** -38


def test_increasing_N_stays_in_envelope(tau_700):
    values = [weighted_sum_Df(6, tau_700, TruncationParams(M=40, N=N, prec=30)) for N in (50, 100, 200, 400)]
    with mpmath.workdps(40):
        for coarse, fine in pairwise(values):
            assert abs(fine.value - coarse.value) <= coarse.error
            assert fine.error < coarse.error


def test_infeasible_tolerance_suggests_larger_N(tau_700):
    with pytest.raises(PrecisionInfeasibleError, match="try N >="):
        weighted_sum_Df(6, tau_700, TruncationParams(M=20, N=50, prec=30), tol=1e-6)


def test_weight16_weighted_sum_near_beta8():
    a = cusp_eigenform_1dim(16, LIGHT.coefficient_order).forms[0]
    val = weighted_sum_Df(8, a, LIGHT)
    with mpmath.workdps(40):
        assert abs(val.value - to_mpf(beta(8))) <= val.error


def test_trace_formula_weights():
    assert has_trace_formula(6) and has_trace_formula(8) and has_trace_formula(30)
    assert not any(has_trace_formula(v) for v in (2, 3, 4, 5, 7))
    with pytest.raises(ValueError):
        hecke_trace(7, 2, LIGHT)


def test_trace_in_dimension_one():
    data = eigen_data(6, LIGHT)
    tr = hecke_trace(6, 2, LIGHT)
    with mpmath.workdps(50):
        assert abs(tr.value + 24 * data.weights[0].value) < mpmath.mpf(10) ** -38
    assert tr.error == pytest.approx(float(24 * data.weights[0].error), rel=1e-9)


def test_trace_in_dimension_two_is_real():
    tr = hecke_trace(12, 3, LIGHT)
    assert isinstance(tr.value, mpmath.mpf)
    data = eigen_data(12, LIGHT)
    assert all(isinstance(x, mpmath.mpf) for f in data.table.forms for x in f[:50])


def test_verify_trace_recurrence_light():
    report = verify_theorem3(6, 30, LIGHT)
    assert report["status"] == "pass"
    assert set(report) >= {"v", "n_max", "M", "N", "prec", "max_residual", "tail_bound", "status"}
    assert mpmath.mpf(report["max_residual"]) <= mpmath.mpf(report["tail_bound"])
