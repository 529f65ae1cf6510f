"""Level-one modular forms as exact q-expansions.

Eisenstein series, Bernoulli numbers, divisor sums, the Ramanujan Delta
function and the one-dimensional cusp eigenforms of weights 12..26, plus a
Hecke-operator route to numerical eigenforms in higher-dimensional spaces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache
from itertools import pairwise
from math import comb

import mpmath

from .series import TruncSeries, mul, triple_product

__all__ = [
    "ONE_DIM_WEIGHTS",
    "DegeneracyError",
    "EigenformTable",
    "EisensteinSeries",
    "InvalidParameterError",
    "TruncationError",
    "bernoulli",
    "charpoly",
    "cusp_dimension",
    "cusp_eigenform_1dim",
    "delta_series",
    "eigenforms_numeric",
    "eisenstein",
    "hecke_t2_matrix",
    "sigma",
    "sigma_table",
    "victor_miller_cusp_basis",
]

ONE_DIM_WEIGHTS = (12, 16, 18, 20, 22, 26)


class InvalidParameterError(ValueError):
    pass


class TruncationError(ValueError):
    pass


class DegeneracyError(ArithmeticError):
    pass


# ---------------------------------------------------------------------------
# arithmetic functions


@cache
def _bernoulli_all(m: int) -> tuple[Fraction, ...]:
    B = [Fraction(1)]
    for n in range(1, m + 1):
        s = sum(comb(n + 1, k) * B[k] for k in range(n))
        B.append(-s / (n + 1))
    return tuple(B)


def bernoulli(m: int) -> Fraction:
    """Exact Bernoulli number ``B_m`` for even ``m >= 2``."""
    if m < 2 or m % 2:
        raise InvalidParameterError("bernoulli() takes an even index >= 2")
    return _bernoulli_all(m)[m]


def sigma(e: int, n: int) -> int:
    """Divisor power sum ``sum_{d | n} d^e``."""
    if n < 1:
        raise InvalidParameterError("sigma() needs n >= 1")
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d**e
            other = n // d
            if other != d:
                total += other**e
        d += 1
    return total


def sigma_table(e: int, N: int) -> list[int]:
    """``[0, sigma_e(1), ..., sigma_e(N)]`` by sieving."""
    out = [0] * (N + 1)
    for d in range(1, N + 1):
        de = d**e
        for m in range(d, N + 1, d):
            out[m] += de
    return out


def divisor_count_table(N: int) -> list[int]:
    out = [0] * (N + 1)
    for d in range(1, N + 1):
        for m in range(d, N + 1, d):
            out[m] += 1
    return out


# ---------------------------------------------------------------------------
# Eisenstein series and Delta


@dataclass(frozen=True)
class EisensteinSeries:
    weight: int
    series: TruncSeries

    def __getitem__(self, n):
        return self.series[n]


def eisenstein(weight: int, N: int) -> EisensteinSeries:
    """Normalized ``E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n``.

    ``E_2`` is built by the same formula; it is quasimodular and is only
    meant for expansion checks.
    """
    if weight < 2 or weight % 2:
        raise InvalidParameterError("weight must be even and >= 2")
    factor = Fraction(-2 * weight) / bernoulli(weight)
    sig = sigma_table(weight - 1, N)
    coeffs = [Fraction(1)] + [factor * sig[n] for n in range(1, N + 1)]
    return EisensteinSeries(weight, TruncSeries(coeffs, N))


def delta_series(N: int) -> TruncSeries:
    """``q (q;q)_inf^24``; the coefficient of ``q^n`` is ``tau(n)``."""
    if N < 0:
        raise ValueError("N must be >= 0")
    if N == 0:
        return TruncSeries([0], 0)
    e3 = triple_product(N - 1)
    e6 = mul(e3, e3)
    e12 = mul(e6, e6)
    e24 = mul(e12, e12)
    return TruncSeries([0, *e24.coeffs], N)


def cusp_dimension(weight: int) -> int:
    """``dim S_k(SL_2(Z))`` for even ``k``."""
    if weight % 2 or weight < 0:
        raise InvalidParameterError("weight must be even and non-negative")
    if weight < 12:
        return 0
    d = weight // 12
    return d - 1 if weight % 12 == 2 else d


def _e4e6_exponents(weight: int) -> tuple[int, int]:
    # a, b >= 0 with 4a + 6b == weight; weight in {0, 4, 6, 8, ...}
    if weight == 2 or weight < 0 or weight % 2:
        raise InvalidParameterError(f"no E4^a E6^b of weight {weight}")
    b = 0 if weight % 4 == 0 else 1
    return (weight - 6 * b) // 4, b


def _e4e6_product(a: int, b: int, N: int) -> TruncSeries:
    out = TruncSeries.constant(1, N)
    if a:
        out = out * eisenstein(4, N).series ** a
    if b:
        out = out * eisenstein(6, N).series ** b
    return out


# ---------------------------------------------------------------------------
# eigenforms


def _to_mpf(x: Fraction):
    return mpmath.mpf(x.numerator) / x.denominator


@dataclass
class EigenformTable:
    """Normalized Hecke eigenforms of one weight.

    ``forms[i][n]`` is ``a_f(n)`` for ``0 <= n <= order``; ``labels[i]`` is
    ``a_f(2)``.  Entries are ``Fraction`` when ``exact`` and ``mpf``
    (good to ``prec`` digits) otherwise.
    """

    weight: int
    dim: int
    forms: list[list]
    labels: list
    exact: bool
    prec: int | None = None
    meta: dict = field(default_factory=dict)

    @property
    def order(self) -> int:
        return len(self.forms[0]) - 1 if self.forms else -1

    def to_json(self) -> dict:
        if self.exact:
            enc = lambda x: f"{x.numerator}/{x.denominator}"
        else:
            enc = lambda x: mpmath.nstr(x, self.prec, min_fixed=-1, max_fixed=-1)
        return {
            "weight": self.weight,
            "dim": self.dim,
            "exact": self.exact,
            "prec": self.prec,
            "labels": [enc(x) for x in self.labels],
            "forms": [[enc(x) for x in f] for f in self.forms],
        }

    @classmethod
    def from_json(cls, data: dict) -> EigenformTable:
        if data["exact"]:
            dec = Fraction
        else:
            prec = data["prec"]

            def dec(s):
                with mpmath.workdps(prec + 10):
                    return mpmath.mpf(s)

        return cls(
            weight=data["weight"],
            dim=data["dim"],
            forms=[[dec(x) for x in f] for f in data["forms"]],
            labels=[dec(x) for x in data["labels"]],
            exact=data["exact"],
            prec=data["prec"],
        )


def cusp_eigenform_1dim(weight: int, N: int) -> EigenformTable:
    """Exact ``Delta * E4^a * E6^b`` for the one-dimensional weights."""
    if weight not in ONE_DIM_WEIGHTS:
        raise InvalidParameterError(f"S_{weight} is not one-dimensional with a listed eigenform")
    a, b = _e4e6_exponents(weight - 12)
    f = mul(delta_series(N), _e4e6_product(a, b, N))
    coeffs = list(f.coeffs)
    label = coeffs[2] if N >= 2 else None
    return EigenformTable(weight, 1, [coeffs], [label], exact=True)


def victor_miller_cusp_basis(weight: int, N: int) -> list[TruncSeries]:
    """Echelon basis ``g_i = q^i + O(q^{d+1})``, ``i = 1..d``, of ``S_k``."""
    d = cusp_dimension(weight)
    if d == 0:
        return []
    if N < d:
        raise TruncationError(f"order {N} too small for a {d}-dimensional space")
    delta = delta_series(N)
    raw = []
    dpow = TruncSeries.constant(1, N)
    for i in range(1, d + 1):
        dpow = mul(dpow, delta)
        a, b = _e4e6_exponents(weight - 12 * i)
        raw.append(mul(dpow, _e4e6_product(a, b, N)))
    # raw[i] = q^{i+1} + ...; clear entries above the diagonal, bottom-up
    basis = list(raw)
    for i in range(d - 1, -1, -1):
        g = basis[i]
        for j in range(i + 1, d):
            c = g[j + 1]
            if c:
                g = g - basis[j].scale(c)
        basis[i] = g
    return basis


def hecke_t2_matrix(weight: int, basis: list[TruncSeries]) -> list[list[Fraction]]:
    """Matrix ``C`` with ``T_2 g_i = sum_j C[i][j] g_j``.

    ``T_2`` acts by ``a(n) -> a(2n) + 2^{k-1} a(n/2)``.
    """
    d = len(basis)
    if d == 0:
        return []
    if basis[0].order < 2 * d:
        raise TruncationError(f"need order >= {2 * d} for T_2 on a {d}-dimensional space")
    p = 2 ** (weight - 1)
    C = []
    for g in basis:
        row = []
        for j in range(1, d + 1):
            c = g[2 * j]
            if j % 2 == 0:
                c += p * g[j // 2]
            row.append(c)
        C.append(row)
    return C


def charpoly(C: list[list[Fraction]]) -> list[Fraction]:
    """Monic characteristic polynomial, highest degree first (Faddeev-LeVerrier)."""
    d = len(C)
    ident = [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
    coeffs = [Fraction(1)]
    M = [[Fraction(0)] * d for _ in range(d)]
    for k in range(1, d + 1):
        # M_k = C M_{k-1} + c_{k-1} I ; c_k = -tr(C M_k)/k
        M = [[sum(C[i][t] * M[t][j] for t in range(d)) + coeffs[-1] * ident[i][j] for j in range(d)] for i in range(d)]
        CM = [[sum(C[i][t] * M[t][j] for t in range(d)) for j in range(d)] for i in range(d)]
        coeffs.append(-sum(CM[i][i] for i in range(d)) / k)
    return coeffs


def eigenforms_numeric(weight: int, N: int, prec: int = 60) -> EigenformTable:
    """Normalized eigenforms of ``S_k``, sorted by ascending ``a(2)``.

    One-dimensional spaces return the exact expansion.  Otherwise ``T_2``
    is diagonalized numerically at ``prec`` digits.
    """
    d = cusp_dimension(weight)
    if d == 0:
        raise InvalidParameterError(f"S_{weight} is zero")
    if d == 1:
        basis = victor_miller_cusp_basis(weight, N)
        coeffs = list(basis[0].coeffs)
        return EigenformTable(weight, 1, [coeffs], [coeffs[2] if N >= 2 else None], exact=True)
    basis = victor_miller_cusp_basis(weight, max(N, 2 * d))
    C = hecke_t2_matrix(weight, basis)
    ints = [g.int_coeffs() for g in basis]
    biggest = max(abs(x) for g in ints for x in g[: N + 1])
    guard = 15 + len(str(biggest))
    with mpmath.workdps(prec + guard):
        Ct = mpmath.matrix([[_to_mpf(C[j][i]) for j in range(d)] for i in range(d)])
        evals, evecs = mpmath.eig(Ct)
        pairs = []
        for idx in range(d):
            lam = evals[idx]
            if abs(mpmath.im(lam)) > mpmath.mpf(10) ** (-prec):
                raise DegeneracyError("complex T_2 eigenvalue")
            x = [mpmath.re(evecs[i, idx]) for i in range(d)]
            pairs.append((mpmath.re(lam), [xi / x[0] for xi in x]))
        pairs.sort(key=lambda p: p[0])
        tol = mpmath.mpf(10) ** (-(prec // 2))
        for (l1, _), (l2, _) in pairwise(pairs):
            if abs(l2 - l1) <= tol * max(1, abs(l1)):
                raise DegeneracyError("T_2 eigenvalues coincide to working precision")
        forms = []
        for lam, x in pairs:
            forms.append([mpmath.fsum(x[i] * ints[i][n] for i in range(d)) for n in range(N + 1)])
        labels = [lam for lam, _ in pairs]
    return EigenformTable(
        weight,
        d,
        forms,
        labels,
        exact=False,
        prec=prec,
        meta={"t2_matrix": [[f"{c.numerator}/{c.denominator}" for c in row] for row in C]},
    )
