"""Confluent and Gauss hypergeometric series with explicit tail bounds."""

from __future__ import annotations

from fractions import Fraction

import mpmath

from .numbers import GUARD_DIGITS, RealHP, to_mpf

__all__ = ["HypergeometricDomainError", "PoleError", "hyp1f1", "hyp2f1", "whittakerM"]

MAX_TERMS = 100_000


class PoleError(ValueError):
    """A lower parameter is a non-positive integer."""


class HypergeometricDomainError(ValueError):
    """The series does not converge at the requested argument."""


def _is_nonpos_int(x) -> bool:
    x = Fraction(x) if isinstance(x, (int, Fraction)) else x
    if isinstance(x, Fraction):
        return x.denominator == 1 and x <= 0
    return mpmath.isint(x) and x <= 0


def _sum_series(ratio, bound_after, prec: int):
    """Sum ``t_0 = 1, t_{k+1} = t_k * ratio(k)`` to relative accuracy 10^-prec.

    ``bound_after(K)`` returns some rho < 1 bounding every |ratio(k)| with
    ``k >= K`` (or None if no such bound is available yet); the tail after
    term K is then at most ``|t_{K+1}| / (1 - rho)``.
    """
    eps = mpmath.mpf(10) ** (-prec)
    term = mpmath.mpf(1)
    total = mpmath.mpf(1)
    biggest = mpmath.mpf(1)
    for k in range(MAX_TERMS):
        q = ratio(k)
        if q == 0:
            return total, biggest, mpmath.mpf(0)
        term *= q
        total += term
        a = abs(term)
        biggest = max(biggest, a)
        # the tail test cannot pass before this unless rho < 1e-6
        if a > eps * abs(total) * 1_000_000:
            continue
        rho = bound_after(k + 1)
        if rho is not None and rho < 1:
            tail = abs(term) * rho / (1 - rho)
            if tail <= eps * abs(total):
                return total, biggest, tail
    raise HypergeometricDomainError("series did not converge")


def _evaluate(make, prec: int) -> RealHP:
    guard = GUARD_DIGITS
    while True:
        with mpmath.workdps(prec + guard):
            ratio, bound = make()
            total, biggest, tail = _sum_series(ratio, bound, prec + 2)
            if total == 0:
                lost = 0
            else:
                lost = int(mpmath.log10(biggest / abs(total))) + 1
            if lost <= guard - 5:
                return RealHP(+total, prec, tail + abs(total) * mpmath.mpf(10) ** (-(prec + 2)))
        guard = lost + GUARD_DIGITS


def hyp1f1(a, b, z, prec: int = 60) -> RealHP:
    """Kummer's ``1F1(a; b; z)`` by its Maclaurin series."""
    if _is_nonpos_int(b):
        raise PoleError(f"1F1 lower parameter {b} is a non-positive integer")

    def make():
        A, B, Z = to_mpf(a), to_mpf(b), to_mpf(z)
        absz = abs(Z)

        def ratio(k):
            return (A + k) / ((B + k) * (k + 1)) * Z

        def bound(K):
            if K + B <= 0:
                return None
            return absz * (1 + abs(A - B) / (K + B)) / (K + 1)

        return ratio, bound

    return _evaluate(make, prec)


def hyp2f1(a, b, c, z, prec: int = 60) -> RealHP:
    """Gauss ``2F1(a, b; c; z)`` for ``|z| < 1`` by its Maclaurin series."""
    if _is_nonpos_int(c):
        raise PoleError(f"2F1 lower parameter {c} is a non-positive integer")
    terminating = _is_nonpos_int(a) or _is_nonpos_int(b)
    if abs(to_mpf(z)) >= 1 and not terminating:
        raise HypergeometricDomainError("2F1 series needs |z| < 1")

    def make():
        A, B, C, Z = to_mpf(a), to_mpf(b), to_mpf(c), to_mpf(z)
        absz = abs(Z)

        def ratio(k):
            return (A + k) * (B + k) / ((C + k) * (k + 1)) * Z

        def bound(K):
            if K + C <= 0:
                return None
            return absz * (1 + abs(A - 1) / (K + 1)) * (1 + abs(B - C) / (K + C))

        return ratio, bound

    return _evaluate(make, prec)


def whittakerM(lam, mu, z, prec: int = 60) -> RealHP:
    """``M_{lam,mu}(z) = e^{-z/2} z^{mu+1/2} 1F1(mu - lam + 1/2; 1 + 2 mu; z)`` for ``z > 0``."""
    if isinstance(lam, (int, Fraction)) and isinstance(mu, (int, Fraction)):
        a = Fraction(mu) - Fraction(lam) + Fraction(1, 2)
        b = 1 + 2 * Fraction(mu)
    else:
        with mpmath.workdps(prec + GUARD_DIGITS):
            a = to_mpf(mu) - to_mpf(lam) + mpmath.mpf(1) / 2
            b = 1 + 2 * to_mpf(mu)
    if _is_nonpos_int(b):
        raise PoleError(f"1 + 2*mu = {b} is a non-positive integer")
    F = hyp1f1(a, b, z, prec)
    with mpmath.workdps(prec + GUARD_DIGITS):
        Z = to_mpf(z)
        if Z <= 0:
            raise HypergeometricDomainError("whittakerM is evaluated for z > 0 only")
        pref = mpmath.exp(-Z / 2) * Z ** (to_mpf(mu) + mpmath.mpf(1) / 2)
        return RealHP(pref * F.value, prec, pref * F.error)
