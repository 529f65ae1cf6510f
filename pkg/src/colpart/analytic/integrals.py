"""The Whittaker integral, its hypergeometric closed form, omega_v(n), and the
exact weights ``Etilde_v(j, m)`` of the twisted Dirichlet sum.

Notation: ``I(r, n)`` (with ``v`` fixed) is

    int_0^inf (pi y/2)^{3/4 - r/2} M_{3/4-r/2, 5/4-r/2}(pi y/2)
              exp(-pi (2n^2 - 1) y / 4) y^{2v-2} dy,

which equals ``(2/pi)^{2v-1} Gamma(2v-r+3/2) n^{-(4v-2r+3)}
2F1(1, 3/2+2v-r; 7/2-r; 1/n^2)`` for ``n > 1``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cache
from math import comb, factorial

import mpmath

from ..rankin_cohen import K_WEIGHT, L_WEIGHT, bracket_coefficient, gamma_half, rising
from .hypergeom import HypergeometricDomainError, hyp2f1, whittakerM
from .numbers import GUARD_DIGITS, PiRat, RealHP, to_mpf

__all__ = [
    "InvalidParameterError",
    "etilde",
    "integral_I_closed",
    "integral_I_quadrature",
    "omega_path_a",
    "omega_path_b",
    "omega_path_b_closed",
]

HALF = Fraction(1, 2)


class InvalidParameterError(ValueError):
    pass


def _check_rn(r: int, n: int, v: int):
    if not 0 <= r <= v:
        raise InvalidParameterError("need 0 <= r <= v")
    if n <= 1:
        raise HypergeometricDomainError("n must exceed 1 (the 2F1 argument 1/n^2 reaches 1)")


def _gamma_mpf(x: Fraction):
    g = gamma_half(x)
    return to_mpf(g.coeff) * mpmath.sqrt(mpmath.pi) ** g.sqrt_pi_power


def integral_I_closed(r: int, n: int, v: int, prec: int = 60) -> RealHP:
    _check_rn(r, n, v)
    b = Fraction(3, 2) + 2 * v - r
    F = hyp2f1(1, b, Fraction(7, 2) - r, Fraction(1, n * n), prec)
    with mpmath.workdps(prec + GUARD_DIGITS):
        pref = (2 / mpmath.pi) ** (2 * v - 1) * _gamma_mpf(b) / mpmath.mpf(n) ** (4 * v - 2 * r + 3)
        return RealHP(pref * F.value, prec, abs(pref) * F.error)


def integral_I_quadrature(r: int, n: int, v: int, prec: int = 60) -> RealHP:
    """Direct tanh-sinh quadrature of the Whittaker integral."""
    _check_rn(r, n, v)
    lam = Fraction(3, 4) - Fraction(r, 2)
    mu = Fraction(5, 4) - Fraction(r, 2)
    wp = prec + GUARD_DIGITS
    with mpmath.workdps(wp):
        c = mpmath.pi / 2
        decay = mpmath.pi * (2 * n * n - 1) / 4

        def integrand(y):
            if y == 0:
                return mpmath.mpf(0)
            t = c * y
            M = whittakerM(lam, mu, t, prec + 5).value
            return t ** (to_mpf(lam)) * M * mpmath.exp(-decay * y) * y ** (2 * v - 2)

        # the integrand behaves like y^p exp(-(n^2-1) pi y/2) for large y
        rate = (n * n - 1) * mpmath.pi / 2
        power = 2 * v - 2 + mpmath.mpf(2) - r  # generous polynomial exponent
        target = (prec + 10) * mpmath.log(10)
        Y = mpmath.mpf(1)
        while rate * Y - power * mpmath.log(Y) - 30 < target:
            Y *= 2
        pieces = [0, Y / 2, Y]
        value, qerr = mpmath.quad(integrand, pieces, error=True, maxdegree=10)
        tail = abs(integrand(Y)) / rate * 4
        return RealHP(value, prec, qerr + tail, info={"y_cut": mpmath.nstr(Y, 8)})


def _c(v: int, r: int) -> Fraction:
    return bracket_coefficient(K_WEIGHT, L_WEIGHT, v, r)


def omega_path_a(v: int, n: int, prec: int = 60) -> RealHP:
    """``sum_r (-1)^r c_{r,v-r} (-5/2)^(r) Gamma(3/2+2v-r) 2F1(1, 3/2+2v-r; 7/2-r; 1/n^2)``."""
    if v < 2:
        raise InvalidParameterError("v must be >= 2")
    if n <= 1:
        raise HypergeometricDomainError("n must exceed 1")
    total = None
    for r in range(v + 1):
        b = Fraction(3, 2) + 2 * v - r
        F = hyp2f1(1, b, Fraction(7, 2) - r, Fraction(1, n * n), prec)
        coef = (-1) ** r * _c(v, r) * rising(Fraction(-5, 2), r)
        with mpmath.workdps(prec + GUARD_DIGITS):
            w = to_mpf(coef) * _gamma_mpf(b)
            term = RealHP(w * F.value, prec, abs(w) * F.error)
        total = term if total is None else total + term
    return total


@cache
def _omega_b_weight(v: int, i: int) -> Fraction:
    # (-1)^i C(2v-2, i) (v-i-1)^(v) (5/2)^(i) / ((-3/2-i)^(v) (7/2)^(i))
    num = comb(2 * v - 2, i) * rising(Fraction(v - i - 1), v) * rising(Fraction(5, 2), i)
    den = rising(Fraction(-3, 2) - i, v) * rising(Fraction(7, 2), i)
    return (-1) ** i * num / den


def _omega_b_prefactor(v: int):
    g = gamma_half(v + K_WEIGHT) * gamma_half(v + L_WEIGHT) / gamma_half(Fraction(-3, 2))
    return to_mpf(g.coeff) * mpmath.sqrt(mpmath.pi) ** g.sqrt_pi_power


def omega_path_b_closed(v: int, n: int, prec: int = 60) -> RealHP:
    """Finite form: prefactor * (1 - 1/n^2)^{1-2v} * sum_{i <= v-2} ..."""
    if v < 2:
        raise InvalidParameterError("v must be >= 2")
    with mpmath.workdps(prec + GUARD_DIGITS):
        x = mpmath.mpf(1) / (n * n)
        s = mpmath.fsum(to_mpf(_omega_b_weight(v, i)) * x**i for i in range(v - 1))
        val = _omega_b_prefactor(v) * (1 - x) ** (1 - 2 * v) * s
        return RealHP(val, prec, abs(val) * mpmath.mpf(10) ** (-prec - 2))


def omega_path_b(v: int, n: int, prec: int = 60) -> RealHP:
    """Double sum over ``(i, m)``; the m-sum is cut when its geometric tail is negligible."""
    if v < 2:
        raise InvalidParameterError("v must be >= 2")
    if n <= 1:
        raise HypergeometricDomainError("n must exceed 1")
    with mpmath.workdps(prec + GUARD_DIGITS):
        x = mpmath.mpf(1) / (n * n)
        eps = mpmath.mpf(10) ** (-(prec + 2))
        # sum_m C(2v+m-2, m) x^m, summed with a ratio bound on the tail
        inner = mpmath.mpf(0)
        term = mpmath.mpf(1)
        m = 0
        while True:
            inner += term
            ratio_next = mpmath.mpf(2 * v + m - 1) / (m + 1) * x
            term *= ratio_next
            m += 1
            rho = mpmath.mpf(2 * v + m - 1) / (m + 1) * x  # non-increasing in m
            if rho < 1 and term / (1 - rho) <= eps * inner:
                tail = term / (1 - rho)
                break
        outer = mpmath.fsum(to_mpf(_omega_b_weight(v, i)) * x**i for i in range(v - 1))
        pref = _omega_b_prefactor(v)
        val = pref * outer * inner
        err = abs(pref * outer) * tail
        return RealHP(val, prec, err, info={"m_terms": m})


@cache
def etilde(v: int, j: int, m: int) -> PiRat:
    """Exact ``Etilde_v(j, m)`` as ``rational * pi^{-(2v-1)}``."""
    if v < 2:
        raise InvalidParameterError("v must be >= 2")
    if not 0 <= j <= v - 2:
        raise InvalidParameterError("need 0 <= j <= v - 2")
    if m < 0:
        raise InvalidParameterError("m must be >= 0")
    g = gamma_half(v + K_WEIGHT) * gamma_half(v + L_WEIGHT)
    g = g / (gamma_half(Fraction(7, 2)) * gamma_half(Fraction(-3, 2)))
    r = Fraction((-1) ** j, 8**v) * g.to_fraction() * 2 ** (2 * v - 1)
    r *= Fraction(factorial(2 * v + m - 2), factorial(j) * factorial(m) * factorial(2 * v - j - 2))
    r *= rising(Fraction(v - j - 1), v) * rising(Fraction(5, 2), j)
    r /= rising(Fraction(-3, 2) - j, v) * rising(Fraction(7, 2), j)
    return PiRat(r, -(2 * v - 1))
