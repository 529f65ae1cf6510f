"""Twisted Dirichlet series of eigenforms, the weighted sums ``calD_f``,
Hecke traces, and the numerical check of the trace recurrence for ``p3``.

``D(f; N, s) = sum_{n <= N} (-4/n) a_f((n^2-1)/8) n^{-s}``.  Only odd
``n >= 3`` contribute: ``(-4/n)`` kills even ``n`` and ``a_f(0) = 0``.
For odd ``n = 2k+1`` the index ``(n^2-1)/8`` is the triangular number ``T_k``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cache, lru_cache

import mpmath

from ..modular import bernoulli, eigenforms_numeric, sigma
from ..partitions import oracle_colored
from ..rankin_cohen import calE
from ..series import triangular
from .integrals import etilde
from .numbers import GUARD_DIGITS, RealHP, to_mpf
from .petersson import PrecisionInfeasibleError, petersson_norm

__all__ = [
    "EigenData",
    "TruncationError",
    "TruncationParams",
    "build_eigen_data",
    "dirichlet_partial",
    "dirichlet_tail_bound",
    "divisor_bound_constant",
    "eigen_data",
    "eigen_order",
    "has_trace_formula",
    "hecke_trace",
    "kronecker_m4",
    "verify_theorem3",
    "weighted_sum_Df",
]


class TruncationError(ValueError):
    pass


@dataclass(frozen=True)
class TruncationParams:
    """Cutoffs for ``calD_f``: ``M`` for the m-sum, ``N`` for the n-sum."""

    M: int = 100
    N: int = 700
    prec: int = 60

    def __post_init__(self):
        if self.M < 0 or self.N < 1 or self.prec < 30:
            raise ValueError("need M >= 0, N >= 1, prec >= 30")

    @property
    def coefficient_order(self) -> int:
        return (self.N * self.N - 1) // 8


def has_trace_formula(v: int) -> bool:
    return v == 6 or v >= 8


def kronecker_m4(n: int) -> int:
    """Kronecker symbol ``(-4/n)``."""
    if n % 2 == 0:
        return 0
    return 1 if n % 4 == 1 else -1


def _needed_index(N: int) -> int:
    top = N if N % 2 else N - 1
    return (top * top - 1) // 8 if top >= 1 else 0


def _odd_terms(coeffs, N: int):
    need = _needed_index(N)
    if len(coeffs) <= need:
        raise TruncationError(f"need coefficients up to {need}, have {len(coeffs) - 1}")
    for n in range(3, N + 1, 2):
        yield n, kronecker_m4(n), coeffs[triangular((n - 1) // 2)]


def dirichlet_partial(coeffs, N: int, s, prec: int = 60) -> RealHP:
    """``D(f; N, s)`` for real ``s``."""
    with mpmath.workdps(prec + GUARD_DIGITS):
        S = to_mpf(s)
        total = mpmath.fsum(chi * to_mpf(a) * mpmath.mpf(n) ** (-S) for n, chi, a in _odd_terms(coeffs, N))
        return RealHP(total, prec)


@cache
def _divisor_counts(limit: int) -> list[int]:
    d = [0] * (limit + 1)
    for i in range(1, limit + 1):
        for m in range(i, limit + 1, i):
            d[m] += 1
    return d


def _d_triangular(k: int, d: list[int]) -> int:
    # T_k = k(k+1)/2 with k, k+1 coprime
    a, b = k, k + 1
    if a % 2 == 0:
        a //= 2
    else:
        b //= 2
    return d[a] * d[b]


@cache
def divisor_bound_constant(root: int = 4) -> mpmath.mpf:
    """Smallest ``C`` with ``d(m) <= C m^{1/root}`` for all ``m >= 1``.

    ``d(m) / m^{1/root}`` is multiplicative, so its supremum is the product
    over primes ``p < 2^root`` of ``max_k (k+1) / p^{k/root}``.
    """
    C = mpmath.mpf(1)
    for p in range(2, 2**root):
        if any(p % q == 0 for q in range(2, p)):
            continue
        best, k = mpmath.mpf(1), 1
        while True:
            val = mpmath.mpf(k + 1) / mpmath.mpf(p) ** (mpmath.mpf(k) / root)
            if val <= best and k > root:
                break
            best = max(best, val)
            k += 1
        C *= best
    return C


def dirichlet_tail_bound(weight: int, N: int, s, far: int | None = None) -> mpmath.mpf:
    """Bound on ``|D(f; s) - D(f; N, s)|`` from ``|a(m)| <= d(m) m^{(k-1)/2}``.

    Divisor counts are exact for ``n <= far``.  Beyond, ``d(m) <= C m^{1/4}``
    and ``m < n^2/8`` give terms below ``C 8^{-(2k-1)/4} n^{k-1/2-s}``,
    summed by an integral comparison.
    """
    far = far or max(20 * N, 2001)
    d = _divisor_counts(far // 2 + 2)
    half = mpmath.mpf(weight - 1) / 2
    S = to_mpf(s)
    expo = weight - mpmath.mpf(1) / 2 - S
    if expo >= -1:
        raise ValueError("tail bound needs s > weight + 1/2")
    total = mpmath.mpf(0)
    start = N + 1 if (N + 1) % 2 else N + 2
    for n in range(start, far + 1, 2):
        k = (n - 1) // 2
        m = triangular(k)
        total += _d_triangular(k, d) * mpmath.mpf(m) ** half * mpmath.mpf(n) ** (-S)
    C = divisor_bound_constant(4)
    total += C * mpmath.mpf(8) ** (-(2 * mpmath.mpf(weight) - 1) / 4) * mpmath.mpf(far) ** (expo + 1) / (-(expo + 1))
    return total


def weighted_sum_Df(
    v: int, coeffs, params: TruncationParams = TruncationParams(), norm: RealHP | None = None, tol=None
) -> RealHP:
    """``calD_f(M, N) = ||f||^{-1} sum_{j<=v-2} sum_{m<=M} Etilde_v(j,m) D(f; N, 2v+2j+2m+2)``.

    The error budget covers the n-tail (Deligne bound), the m-tail (geometric
    bound on ``Etilde`` growth against ``9^{-m}`` decay) and the norm's own
    error.  ``tol`` turns an oversized budget into ``PrecisionInfeasibleError``.
    """
    if v < 2:
        raise ValueError("v must be >= 2")
    weight = 2 * v
    prec = params.prec
    M, N = params.M, params.N
    if norm is None:
        norm = petersson_norm(coeffs, weight, prec)
    s0 = weight + 2
    tmax = v - 2 + M
    with mpmath.workdps(prec + GUARD_DIGITS):
        terms = [(mpmath.mpf(n), chi * to_mpf(a) * mpmath.mpf(n) ** (-s0)) for n, chi, a in _odd_terms(coeffs, N)]
        Dt = []  # D(f; N, s0 + 2t)
        absD0 = mpmath.fsum(abs(w) for _, w in terms)
        cur = [w for _, w in terms]
        inv2 = [1 / (n * n) for n, _ in terms]
        for t in range(tmax + 1):
            Dt.append(mpmath.fsum(cur))
            cur = [c * q for c, q in zip(cur, inv2)]
        E = {(j, m): etilde(v, j, m).to_mpf() for j in range(v - 1) for m in range(M + 1)}
        inner = mpmath.fsum(E[j, m] * Dt[j + m] for j in range(v - 1) for m in range(M + 1))
        value = inner / norm.value

    # error budget at modest precision
    with mpmath.workdps(30):
        tails = [dirichlet_tail_bound(weight, N, s0 + 2 * t) for t in range(min(tmax, 40) + 1)]

        # beyond t = 40 the n-tail shrinks by at least N^-2 per step
        def tailN(t):
            if t < len(tails):
                return tails[t]
            return tails[-1] * mpmath.mpf(N) ** (-2 * (t - len(tails) + 1))

        n_err = mpmath.fsum(abs(E[j, m]) * tailN(j + m) for j in range(v - 1) for m in range(M + 1))
        A0 = absD0 + tails[0]  # bounds |D(f; s0)|
        rho = mpmath.mpf(2 * v + M) / (M + 2) / 9
        m_err = mpmath.mpf(0)
        if rho < 1:
            for j in range(v - 1):
                e_next = abs(etilde(v, j, M + 1).to_mpf())
                m_err += e_next * A0 * mpmath.mpf(9) ** (-(j + M + 1)) / (1 - rho)
        else:
            m_err = mpmath.inf
        absnorm = abs(norm.value)
        err = (n_err + m_err) / absnorm + abs(value) * norm.error / absnorm
        err += abs(value) * mpmath.mpf(10) ** (-prec)
    info = {
        "M": M,
        "N": N,
        "n_tail": mpmath.nstr(n_err / absnorm, 3),
        "m_tail": mpmath.nstr(m_err / absnorm, 3),
        "norm": mpmath.nstr(norm.value, prec),
        "norm_error": mpmath.nstr(norm.error, 3),
        "bound_kind": "heuristic (Deligne/divisor bound, geometric m-tail)",
    }
    if tol is not None and err > tol:
        # the n-tail falls off like N^-2
        suggest = math.ceil(N * math.sqrt(max(float(err / tol), 2)) * 1.1)
        raise PrecisionInfeasibleError(
            f"error budget {mpmath.nstr(err, 3)} exceeds {tol}; try N >= {suggest}"
            f" (n-tail {info['n_tail']}, m-tail {info['m_tail']})"
        )
    return RealHP(value, prec, err, info=info)


# ---------------------------------------------------------------------------
# eigenbasis data and traces


@dataclass
class EigenData:
    v: int
    params: TruncationParams
    table: object  # EigenformTable
    norms: list
    weights: list  # calD_f as RealHP

    def a(self, i: int, n: int):
        return to_mpf(self.table.forms[i][n])


def build_eigen_data(v: int, params: TruncationParams, table, tol=None) -> EigenData:
    """Norms and ``calD_f`` for a precomputed eigenform table of weight 2v."""
    if not has_trace_formula(v):
        raise ValueError("traces are defined for v = 6 and v >= 8")
    if table.weight != 2 * v:
        raise ValueError(f"table has weight {table.weight}, need {2 * v}")
    norms, weights = [], []
    for f in table.forms:
        nrm = petersson_norm(f, 2 * v, params.prec)
        norms.append(nrm)
        weights.append(weighted_sum_Df(v, f, params, norm=nrm, tol=tol))
    return EigenData(v, params, table, norms, weights)


def eigen_order(params: TruncationParams, min_order: int = 0) -> int:
    return max(params.coefficient_order, min_order, 2)


@lru_cache(maxsize=16)
def eigen_data(v: int, params: TruncationParams = TruncationParams(), min_order: int = 0) -> EigenData:
    """Eigenforms of weight 2v with their Petersson norms and ``calD_f``."""
    if not has_trace_formula(v):
        raise ValueError("traces are defined for v = 6 and v >= 8")
    table = eigenforms_numeric(2 * v, eigen_order(params, min_order), params.prec)
    return build_eigen_data(v, params, table)


def hecke_trace(v: int, n: int, params: TruncationParams = TruncationParams(), data: EigenData | None = None) -> RealHP:
    """``Tr_{2v}(n) = sum_f calD_f a_f(n)`` over the normalized eigenbasis."""
    if data is None or n > data.table.order:
        data = eigen_data(v, params, min_order=n)
    total = None
    for i, w in enumerate(data.weights):
        term = w * data.a(i, n)
        total = term if total is None else total + term
    return total


def verify_theorem3(
    v: int, n_max: int, params: TruncationParams = TruncationParams(), data: EigenData | None = None
) -> dict:
    """Residuals ``p3(n) - RHS(n)`` of the trace recurrence for ``1 <= n <= n_max``.

    A row passes when its residual is within the propagated error envelope
    ``sum_f err(calD_f) |a_f(n)| / |calE_v(n,0)|`` (plus rounding).
    """
    if not has_trace_formula(v):
        raise ValueError("the trace recurrence is stated for v = 6 and v >= 8")
    p3 = oracle_colored(3, n_max)
    if data is None or data.table.order < n_max:
        data = eigen_data(v, params, min_order=n_max)
    prec = params.prec
    eis = Fraction(-4 * v) * calE(v, 0, 0) / bernoulli(2 * v)
    rows = []
    with mpmath.workdps(prec + GUARD_DIGITS):
        for n in range(1, n_max + 1):
            exact = eis * sigma(2 * v - 1, n)
            k = 1
            while triangular(k) <= n:
                term = calE(v, n, k) * p3[n - triangular(k)]
                exact += term if k % 2 else -term
                k += 1
            trace = mpmath.fsum(w.value * data.a(i, n) for i, w in enumerate(data.weights))
            env_tr = mpmath.fsum(w.error * abs(data.a(i, n)) for i, w in enumerate(data.weights))
            e0 = to_mpf(calE(v, n, 0))
            rhs = (to_mpf(exact) + trace) / e0
            resid = to_mpf(p3[n]) - rhs
            env = env_tr / abs(e0) + abs(rhs) * mpmath.mpf(10) ** (-(prec - 5))
            rows.append((n, resid, env))
        max_res = max(abs(r) for _, r, _ in rows)
        max_env = max(e for _, _, e in rows)
        worst_ratio = max(abs(r) / e for _, r, e in rows)
        ok = all(abs(r) <= e for _, r, e in rows)
    return {
        "v": v,
        "n_max": n_max,
        "M": params.M,
        "N": params.N,
        "prec": prec,
        "dim": data.table.dim,
        "max_residual": mpmath.nstr(max_res, 6),
        "tail_bound": mpmath.nstr(max_env, 6),
        "worst_residual_to_bound": mpmath.nstr(worst_ratio, 6),
        "calD": [w.to_decimal(20) for w in data.weights],
        "status": "pass" if ok else "fail",
        "note": "property check against a tail-bound envelope, not an exact proof; error budgets are heuristic, not interval-certified",
    }
