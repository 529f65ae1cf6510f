"""Petersson norms of level-one cusp forms by fundamental-domain quadrature.

The standard domain ``|x| <= 1/2, x^2 + y^2 >= 1`` is split at ``y = 1``.

* Above ``y = 1`` the x-integral covers a full period, so only the diagonal
  terms ``a(n)^2 e^{-4 pi n y}`` survive; their y-integrals up to ``y_max``
  are incomplete Gamma values.
* Between ``sqrt(3)/2`` and ``1`` the x-range is ``sqrt(1-y^2) <= |x| <= 1/2``.
  The x-integral of each ``e^{2 pi i (m-n) x}`` is elementary; the remaining
  one-dimensional integral is done by tanh-sinh quadrature in ``theta``
  with ``y = cos(theta)``, which removes the square-root endpoint.
"""

from __future__ import annotations

import mpmath

from .numbers import GUARD_DIGITS, RealHP, to_mpf

__all__ = ["PrecisionInfeasibleError", "default_terms", "default_y_max", "petersson_norm"]


class PrecisionInfeasibleError(ArithmeticError):
    pass


def _tail_bound(weight: int, T: int, y) -> mpmath.mpf:
    # sum_{n > T} 2 sqrt(n) n^{(k-1)/2} e^{-2 pi n y}, with d(n) <= 2 sqrt(n)
    total = mpmath.mpf(0)
    n = T + 1
    while True:
        term = 2 * mpmath.mpf(n) ** (mpmath.mpf(weight) / 2) * mpmath.exp(-2 * mpmath.pi * n * y)
        total += term
        if term < total * mpmath.mpf(10) ** (-5) and n > T + 5:
            return total * 2  # remaining geometric tail is far below this
        n += 1


def default_terms(weight: int, prec: int) -> int:
    """Smallest q-series length whose Deligne tail at ``y = sqrt(3)/2`` is below 10^-(prec+10)."""
    with mpmath.workdps(30):
        y0 = mpmath.sqrt(3) / 2
        T = 4
        while _tail_bound(weight, T, y0) > mpmath.mpf(10) ** (-(prec + 10)):
            T += 4
        return T


def default_y_max(weight: int, prec: int) -> mpmath.mpf:
    # diagonal tail ~ y^{k-2} e^{-4 pi y}; push it below 10^-(prec+10) of ||f|| scale
    with mpmath.workdps(30):
        Y = mpmath.mpf(2)
        while (weight - 2) * mpmath.log(Y) - 4 * mpmath.pi * Y > -(prec + 10) * mpmath.log(10) - 20:
            Y += 1
        return Y


def petersson_norm(coeffs, weight: int, prec: int = 60, y_max=None, n_terms: int | None = None) -> RealHP:
    """``int_F |f|^2 y^{k-2} dx dy`` for ``f = sum_{n>=1} coeffs[n] q^n`` with real coefficients.

    The error budget adds the quadrature estimate, the ``y > y_max`` tail and
    a Deligne-bound estimate for the dropped q-series terms.
    """
    k = weight
    T = n_terms or default_terms(k, prec)
    if len(coeffs) <= T:
        raise PrecisionInfeasibleError(f"need {T} coefficients, got {len(coeffs) - 1}")
    if coeffs[0] != 0:
        raise ValueError("not a cusp form: constant term is non-zero")
    wp = prec + GUARD_DIGITS
    with mpmath.workdps(wp):
        a = [to_mpf(c) for c in coeffs[: T + 1]]
        Y = to_mpf(y_max) if y_max is not None else default_y_max(k, prec)
        twopi = 2 * mpmath.pi

        # region y >= 1: diagonal terms only
        upper = mpmath.mpf(0)
        y_tail = mpmath.mpf(0)
        for n in range(1, T + 1):
            if a[n] == 0:
                continue
            c = 2 * twopi * n
            scale = a[n] ** 2 / c ** (k - 1)
            upper += scale * mpmath.gammainc(k - 1, c, c * Y)
            y_tail += scale * mpmath.gammainc(k - 1, c * Y, mpmath.inf)

        # region sqrt(3)/2 <= y <= 1, y = cos(theta)
        def strip(theta):
            y = mpmath.cos(theta)
            x0 = mpmath.sin(theta)
            e = mpmath.exp(-twopi * y)
            u = [mpmath.mpf(0)] * (T + 1)
            p = mpmath.mpf(1)
            for m in range(1, T + 1):
                p *= e
                u[m] = a[m] * p
            s = (1 - 2 * x0) * mpmath.fsum(x * x for x in u)
            for d in range(1, T):
                corr = mpmath.fsum(u[m] * u[m + d] for m in range(1, T + 1 - d))
                s += 2 * (-mpmath.sin(twopi * d * x0) / (mpmath.pi * d)) * corr
            return s * y ** (k - 2) * x0

        lower, qerr = mpmath.quad(strip, [0, mpmath.pi / 12, mpmath.pi / 6], error=True, maxdegree=10)

        value = upper + lower
        # dropped terms: |f - f_T| <= delta(y); |f|^2 error <= (2|f| + delta) delta
        y0 = mpmath.sqrt(3) / 2
        delta = _tail_bound(k, T, y0)
        fmax = mpmath.fsum(abs(x) * mpmath.exp(-twopi * n * y0) for n, x in enumerate(a))
        trunc = (2 * fmax + delta) * delta * y0 ** (k - 2) / (twopi * (T + 1)) * 10
        err = qerr + y_tail + trunc
        if err > abs(value) * mpmath.mpf(10) ** (-(prec - 5)):
            raise PrecisionInfeasibleError(
                f"error budget {mpmath.nstr(err, 3)} too large for {prec} digits "
                f"(quadrature {mpmath.nstr(qerr, 3)}, y-tail {mpmath.nstr(y_tail, 3)}, "
                f"q-series {mpmath.nstr(trunc, 3)}); raise n_terms or y_max"
            )
        return RealHP(
            value,
            prec,
            err,
            info={
                "n_terms": T,
                "y_max": mpmath.nstr(Y, 8),
                "quad_error": mpmath.nstr(qerr, 3),
                "y_tail": mpmath.nstr(y_tail, 3),
                "series_tail": mpmath.nstr(trunc, 3),
            },
        )
