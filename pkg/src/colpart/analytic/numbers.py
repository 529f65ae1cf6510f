"""Number types for the numerical side: tracked-precision reals and ``r * pi^e``."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

__all__ = ["GUARD_DIGITS", "PiRat", "RealHP", "to_mpf"]

GUARD_DIGITS = 15


def to_mpf(x):
    """Exact-aware conversion (``Fraction`` is not understood by mpmath)."""
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


@dataclass(frozen=True)
class RealHP:
    """A real number known to ``prec`` decimal digits.

    ``error`` is an absolute error budget (heuristic tail bounds plus
    quadrature estimates, not interval-certified).  Combining values of
    different precision keeps the smaller one and sets ``mixed``.
    """

    value: mpmath.mpf
    prec: int
    error: mpmath.mpf = mpmath.mpf(0)
    mixed: bool = False
    info: dict = field(default_factory=dict, compare=False, repr=False)

    def _combine(self, other):
        if isinstance(other, RealHP):
            return (
                other.value,
                other.error,
                min(self.prec, other.prec),
                (self.mixed or other.mixed or self.prec != other.prec),
            )
        return to_mpf(other), mpmath.mpf(0), self.prec, self.mixed

    def __add__(self, other):
        v, e, p, m = self._combine(other)
        with mpmath.workdps(p + GUARD_DIGITS):
            return RealHP(self.value + v, p, self.error + e, m)

    __radd__ = __add__

    def __sub__(self, other):
        v, e, p, m = self._combine(other)
        with mpmath.workdps(p + GUARD_DIGITS):
            return RealHP(self.value - v, p, self.error + e, m)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return RealHP(-self.value, self.prec, self.error, self.mixed)

    def __mul__(self, other):
        v, e, p, m = self._combine(other)
        with mpmath.workdps(p + GUARD_DIGITS):
            err = abs(self.value) * e + abs(v) * self.error + self.error * e
            return RealHP(self.value * v, p, err, m)

    __rmul__ = __mul__

    def __truediv__(self, other):
        v, e, p, m = self._combine(other)
        with mpmath.workdps(p + GUARD_DIGITS):
            q = self.value / v
            err = (self.error + abs(q) * e) / (abs(v) - e) if abs(v) > e else mpmath.inf
            return RealHP(q, p, err, m)

    def __float__(self):
        return float(self.value)

    def __str__(self):
        return self.to_decimal()

    def to_decimal(self, digits: int | None = None) -> str:
        return mpmath.nstr(self.value, digits or self.prec, min_fixed=-5, max_fixed=5)

    def to_json(self) -> dict:
        return {
            "value": self.to_decimal(),
            "digits": self.prec,
            "error": mpmath.nstr(self.error, 5),
            "mixed_precision": self.mixed,
        }


@dataclass(frozen=True)
class PiRat:
    """The exact number ``r * pi**e``."""

    r: Fraction
    e: int

    def __mul__(self, other):
        if isinstance(other, PiRat):
            return PiRat(self.r * other.r, self.e + other.e)
        return PiRat(self.r * Fraction(other), self.e)

    __rmul__ = __mul__

    def to_mpf(self):
        return to_mpf(self.r) * mpmath.pi**self.e

    def sign(self) -> int:
        return (self.r > 0) - (self.r < 0)

    def __str__(self):
        return f"({self.r.numerator}/{self.r.denominator})*pi^{self.e}"
