"""Exact Rankin-Cohen bracket data for ``[1/eta^3, eta^3]_v``.

All Gamma values involved sit at integers or half-integers, so they are
carried as ``rational * sqrt(pi)^e`` (:class:`HalfGammaRatio`) and reduced
to plain fractions once the powers of ``sqrt(pi)`` cancel.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from math import comb, factorial, lcm

from .modular import ONE_DIM_WEIGHTS, bernoulli, cusp_eigenform_1dim, eisenstein, sigma
from .partitions import InvalidParameterError, PartitionTable, oracle_colored
from .series import TruncSeries, mul, triangular

__all__ = [
    "ALPHA_BETA_V",
    "ALPHA_ONLY_V",
    "HalfGammaRatio",
    "LemmaViolation",
    "RvSeries",
    "alpha",
    "beta",
    "bracket_coefficient",
    "calE",
    "calE_closed_n0",
    "gamma_half",
    "nonvanishing_sweep",
    "poly_P",
    "rankin_cohen_bracket",
    "rv_series",
    "rv_series_direct",
    "theorem2_rhs",
    "verify_theorem2",
]

ALPHA_ONLY_V = (2, 3, 4, 5, 7)
ALPHA_BETA_V = tuple(w // 2 for w in ONE_DIM_WEIGHTS)  # 6, 8, 9, 10, 11, 13

HALF = Fraction(1, 2)


class LemmaViolation(AssertionError):
    """A value that must be non-zero turned out to be zero."""


@dataclass(frozen=True)
class HalfGammaRatio:
    """The exact number ``coeff * sqrt(pi)**sqrt_pi_power``."""

    coeff: Fraction
    sqrt_pi_power: int = 0

    def __mul__(self, other):
        if isinstance(other, HalfGammaRatio):
            return HalfGammaRatio(self.coeff * other.coeff, self.sqrt_pi_power + other.sqrt_pi_power)
        return HalfGammaRatio(self.coeff * Fraction(other), self.sqrt_pi_power)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, HalfGammaRatio):
            return HalfGammaRatio(self.coeff / other.coeff, self.sqrt_pi_power - other.sqrt_pi_power)
        return HalfGammaRatio(self.coeff / Fraction(other), self.sqrt_pi_power)

    def __rtruediv__(self, other):
        return HalfGammaRatio(Fraction(other) / self.coeff, -self.sqrt_pi_power)

    def to_fraction(self) -> Fraction:
        if self.sqrt_pi_power != 0:
            raise ValueError(f"sqrt(pi) factors do not cancel (net power {self.sqrt_pi_power})")
        return self.coeff


PI = HalfGammaRatio(Fraction(1), 2)


@cache
def gamma_half(x: Fraction) -> HalfGammaRatio:
    """``Gamma(x)`` for integer or half-integer ``x`` (poles raise)."""
    x = Fraction(x)
    if x.denominator == 1:
        n = x.numerator
        if n <= 0:
            raise ValueError(f"Gamma has a pole at {n}")
        return HalfGammaRatio(Fraction(factorial(n - 1)))
    if x.denominator != 2:
        raise ValueError("only integer and half-integer arguments are exact")
    m = x - HALF  # integer
    m = m.numerator
    if m >= 0:
        # Gamma(m + 1/2) = (2m)! / (4^m m!) sqrt(pi)
        return HalfGammaRatio(Fraction(factorial(2 * m), 4**m * factorial(m)), 1)
    k = -m
    # Gamma(1/2 - k) = (-4)^k k! / (2k)! sqrt(pi)
    return HalfGammaRatio(Fraction((-4) ** k * factorial(k), factorial(2 * k)), 1)


def rising(a, j: int):
    """Rising factorial ``a (a+1) ... (a+j-1)``; empty product is 1."""
    out = Fraction(1) if isinstance(a, (int, Fraction)) else 1
    for i in range(j):
        out *= a + i
    return out


@cache
def bracket_coefficient(k: Fraction, l: Fraction, v: int, r: int) -> Fraction:
    """``Gamma(k+v)Gamma(l+v) / (s! r! Gamma(k+v-s) Gamma(l+v-r))`` with ``s = v-r``."""
    s = v - r
    num = gamma_half(k + v) * gamma_half(l + v)
    den = gamma_half(k + v - s) * gamma_half(l + v - r) * (factorial(s) * factorial(r))
    return (num / den).to_fraction()


K_WEIGHT = Fraction(-3, 2)
L_WEIGHT = Fraction(3, 2)


@cache
def _calE_skeleton(v: int) -> tuple[int, tuple[int, ...]]:
    # c_{r,v-r} / 8^v = C_r / den with integers C_r
    cs = [bracket_coefficient(K_WEIGHT, L_WEIGHT, v, r) / 8**v for r in range(v + 1)]
    den = 1
    for c in cs:
        den = lcm(den, c.denominator)
    return den, tuple(c.numerator * (den // c.denominator) for c in cs)


def calE_int(v: int, n: int, k: int) -> tuple[int, int]:
    """``calE(v,n,k)`` as an unreduced pair (numerator, denominator)."""
    den, C = _calE_skeleton(v)
    a = 2 * k + 1
    b = 8 * n - a * a
    a2 = a * a
    total = 0
    apow = a  # a^(2s+1) with s = v - r, start from r = v (s = 0)
    for r in range(v, -1, -1):
        term = C[r] * apow * b**r
        total += -term if r % 2 else term
        apow *= a2
    return total, den


def calE(v: int, n: int, k: int) -> Fraction:
    """The bracket coefficient attached to the pair ``p3(n - T_k) q^n``."""
    if v < 0 or n < 0 or k < 0:
        raise InvalidParameterError("v, n, k must be non-negative")
    num, den = calE_int(v, n, k)
    return Fraction(num, den)


def poly_P(v: int, x: int) -> int:
    """``sum_r (-1)^r C(2v+1, 2r) (2r-3)(2r-1) x^r``."""
    total = 0
    for r in range(v + 1):
        term = comb(2 * v + 1, 2 * r) * (2 * r - 3) * (2 * r - 1) * x**r
        total += -term if r % 2 else term
    return total


def calE_closed_n0(v: int, n: int) -> Fraction:
    """``calE(v, n, 0)`` through the integer polynomial ``poly_P(v, 8n-1)``."""
    pref = gamma_half(v + K_WEIGHT) * gamma_half(v + L_WEIGHT) / PI
    pref = pref / (factorial(2 * v + 1) * 2 ** (v + 1))
    return pref.to_fraction() * poly_P(v, 8 * n - 1)


def nonvanishing_sweep(v_max: int, n_max: int) -> dict:
    """Check ``calE(v, n, 0) != 0`` for ``v <= v_max``, ``1 <= n <= n_max``."""
    smallest = None
    where = None
    for v in range(v_max + 1):
        den, _ = _calE_skeleton(v)
        for n in range(1, n_max + 1):
            num, _ = calE_int(v, n, 0)
            if num == 0:
                raise LemmaViolation(f"calE({v}, {n}, 0) == 0")
            val = abs(Fraction(num, den))
            if smallest is None or val < smallest:
                smallest, where = val, (v, n)
    return {
        "v_max": v_max,
        "n_max": n_max,
        "status": "pass",
        "min_abs": f"{smallest.numerator}/{smallest.denominator}" if smallest is not None else None,
        "min_at": list(where) if where else None,
    }


# ---------------------------------------------------------------------------
# R_v as a q-series


@dataclass(frozen=True)
class RvSeries:
    v: int
    series: TruncSeries

    def __getitem__(self, n):
        return self.series[n]


def _p3_table(N: int, p3: PartitionTable | None) -> PartitionTable:
    if p3 is None:
        return oracle_colored(3, N)
    if p3.kind != "colored" or p3.t != 3:
        raise InvalidParameterError("need a 3-colored partition table")
    if p3.order < N:
        raise IndexError(f"p3 table has order {p3.order}, need {N}")
    return p3


def rv_series(v: int, N: int, p3: PartitionTable | None = None) -> RvSeries:
    """``sum_n sum_{T_k <= n} (-1)^k calE(v,n,k) p3(n - T_k) q^n``."""
    p3 = _p3_table(N, p3)
    den, _ = _calE_skeleton(v)
    nums = []
    for n in range(N + 1):
        total = 0
        k = 0
        while triangular(k) <= n:
            e, _ = calE_int(v, n, k)
            term = e * p3[n - triangular(k)]
            total += -term if k % 2 else term
            k += 1
        nums.append(total)
    return RvSeries(v, TruncSeries([Fraction(x, den) for x in nums], N))


def rankin_cohen_bracket(
    f: TruncSeries, f_shift: Fraction, k: Fraction, g: TruncSeries, g_shift: Fraction, l: Fraction, v: int
) -> TruncSeries:
    """``[F, G]_v`` for ``F = q^{f_shift} f`` of weight k and ``G = q^{g_shift} g`` of weight l.

    ``D = q d/dq`` multiplies the ``q^{n + shift}`` term by ``n + shift``.
    The returned series is the coefficient list of the product with the
    total shift ``f_shift + g_shift`` (must be an integer) removed.
    """
    total_shift = Fraction(f_shift) + Fraction(g_shift)
    if total_shift.denominator != 1:
        raise ValueError("fractional exponents do not cancel")
    N = f.order
    out = TruncSeries.constant(0, N)
    for r in range(v + 1):
        s = v - r
        c = bracket_coefficient(Fraction(k), Fraction(l), v, r)
        Df = TruncSeries([(n + f_shift) ** r * a for n, a in enumerate(f.coeffs)], N)
        Dg = TruncSeries([(n + g_shift) ** s * b for n, b in enumerate(g.coeffs)], N)
        term = mul(Df, Dg).scale(c)
        out = out - term if r % 2 else out + term
    return out


def rv_series_direct(v: int, N: int) -> RvSeries:
    """Apply the bracket formula directly to ``1/eta^3`` and ``eta^3``."""
    from .series import invert, triple_product

    eta3 = triple_product(N)
    inv = invert(eta3)
    s = rankin_cohen_bracket(inv, Fraction(-1, 8), K_WEIGHT, eta3, Fraction(1, 8), L_WEIGHT, v)
    return RvSeries(v, s)


# ---------------------------------------------------------------------------
# constants and the exact decomposition


def alpha(v: int) -> Fraction:
    return calE(v, 0, 0)


def beta(v: int) -> Fraction:
    if v not in ALPHA_BETA_V:
        raise InvalidParameterError(f"beta is defined for v in {ALPHA_BETA_V}")
    return 4 * v * calE(v, 0, 0) / bernoulli(2 * v) + 3 * calE(v, 1, 0) - calE(v, 1, 1)


def _frac(x: Fraction | None) -> str | None:
    return None if x is None else f"{x.numerator}/{x.denominator}"


def theorem2_rhs(v: int, n: int, p3: PartitionTable, tau: TruncSeries | None = None) -> Fraction:
    """Right-hand side of the closed recurrence for ``p3(n)``."""
    a = alpha(v)
    total = Fraction(-4 * v) * a / bernoulli(2 * v) * sigma(2 * v - 1, n)
    if v in ALPHA_BETA_V:
        total += beta(v) * tau[n]
    k = 1
    while triangular(k) <= n:
        term = calE(v, n, k) * p3[n - triangular(k)]
        total += term if k % 2 else -term
        k += 1
    return total / calE(v, n, 0)


def verify_theorem2(v: int, N: int, p3: PartitionTable | None = None) -> dict:
    """Exact check of ``R_v = alpha E_2v (+ beta Delta_2v)`` and of the recurrence."""
    if v not in ALPHA_ONLY_V and v not in ALPHA_BETA_V:
        raise InvalidParameterError(f"v={v} is outside {ALPHA_ONLY_V + ALPHA_BETA_V}")
    p3 = _p3_table(N, p3)
    a = alpha(v)
    b = beta(v) if v in ALPHA_BETA_V else None
    rhs = eisenstein(2 * v, N).series.scale(a)
    tau = None
    if b is not None:
        tau = TruncSeries(cusp_eigenform_1dim(2 * v, N).forms[0], N)
        rhs = rhs + tau.scale(b)
    lhs = rv_series(v, N, p3).series
    first_series = next((n for n in range(N + 1) if lhs[n] != rhs[n]), None)
    first_rec = None
    for n in range(1, N + 1):
        if theorem2_rhs(v, n, p3, tau) != p3[n]:
            first_rec = n
            break
    mismatch = [m for m in (first_series, first_rec) if m is not None]
    return {
        "v": v,
        "N": N,
        "status": "pass" if not mismatch else "fail",
        "first_mismatch": min(mismatch) if mismatch else None,
        "alpha": _frac(a),
        "beta": _frac(b),
    }
