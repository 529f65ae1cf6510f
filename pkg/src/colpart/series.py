"""Truncated power series with exact rational coefficients.

A :class:`TruncSeries` holds the coefficients of ``q^0 .. q^N`` and its
truncation order ``N``.  Combining series of different orders raises
:class:`OrderMismatchError`; lowering or raising the order is always an
explicit call (:meth:`TruncSeries.truncate`, :meth:`TruncSeries.extend`).

Multiplication has two kernels that must agree bit for bit: a sparse
schoolbook convolution for small or sparse operands, and Kronecker
substitution (pack both series into one big integer, multiply with GMP,
unpack) for long dense ones.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from fractions import Fraction

try:
    import gmpy2

    _mpz = gmpy2.mpz
except ImportError:  # pragma: no cover
    _mpz = int

__all__ = [
    "NotInvertibleError",
    "OrderMismatchError",
    "TruncSeries",
    "euler_product",
    "euler_product_naive",
    "invert",
    "mul",
    "pentagonal",
    "triangular",
    "triple_product",
]

# Work estimate (nnz_a * nnz_b) above which the Kronecker kernel is used.
KRONECKER_THRESHOLD = 40_000


class OrderMismatchError(ValueError):
    """Two series with different truncation orders were combined."""


class NotInvertibleError(ZeroDivisionError):
    """Inversion of a series whose constant term is zero."""


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"coefficient {x!r} is not an exact rational")


class TruncSeries:
    """Power series ``sum c_n q^n`` known exactly for ``0 <= n <= order``."""

    __slots__ = ("_coeffs", "_intform", "_order")

    def __init__(self, coeffs: Iterable, order: int):
        if order < 0:
            raise ValueError("order must be >= 0")
        cs = [_as_fraction(c) for c in coeffs]
        if len(cs) > order + 1:
            raise ValueError(f"{len(cs)} coefficients given for order {order}; truncate explicitly")
        cs.extend([Fraction(0)] * (order + 1 - len(cs)))
        self._coeffs = tuple(cs)
        self._order = order
        self._intform = None

    @classmethod
    def _from_ints(cls, nums: Sequence[int], den: int, order: int) -> TruncSeries:
        # trusted fast path: len(nums) == order + 1, den > 0
        obj = cls.__new__(cls)
        if den == 1:
            obj._coeffs = tuple(Fraction(x) for x in nums)
        else:
            obj._coeffs = tuple(Fraction(x, den) for x in nums)
        obj._order = order
        obj._intform = None
        return obj

    @classmethod
    def from_ints(cls, nums: Sequence[int], order: int) -> TruncSeries:
        if len(nums) != order + 1:
            raise ValueError("need exactly order + 1 coefficients")
        return cls._from_ints([int(x) for x in nums], 1, order)

    @classmethod
    def constant(cls, c, order: int) -> TruncSeries:
        return cls([c], order)

    @classmethod
    def monomial(cls, exponent: int, order: int, c=1) -> TruncSeries:
        if exponent > order:
            return cls([], order)
        return cls([0] * exponent + [c], order)

    # -- basic protocol -------------------------------------------------
    @property
    def order(self) -> int:
        return self._order

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    def __len__(self) -> int:
        return self._order + 1

    def __getitem__(self, n):
        if isinstance(n, slice):
            return self._coeffs[n]
        if n < 0:
            return Fraction(0)
        if n > self._order:
            raise IndexError(f"coefficient q^{n} beyond truncation order {self._order}")
        return self._coeffs[n]

    def __iter__(self):
        return iter(self._coeffs)

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self._order == other._order and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((self._order, self._coeffs))

    def __repr__(self):
        shown = ", ".join(str(c) for c in self._coeffs[:8])
        more = ", ..." if self._order >= 8 else ""
        return f"TruncSeries([{shown}{more}], order={self._order})"

    def is_integral(self) -> bool:
        return self._int_form()[1] == 1

    def int_coeffs(self) -> list[int]:
        nums, den = self._int_form()
        if den != 1:
            raise ValueError("series has non-integral coefficients")
        return list(nums)

    def _int_form(self) -> tuple[list[int], int]:
        if self._intform is None:
            den = 1
            for c in self._coeffs:
                if c.denominator != 1:
                    den = math.lcm(den, c.denominator)
            if den == 1:
                nums = [c.numerator for c in self._coeffs]
            else:
                nums = [c.numerator * (den // c.denominator) for c in self._coeffs]
            self._intform = (nums, den)
        return self._intform

    def _check(self, other: TruncSeries):
        if not isinstance(other, TruncSeries):
            raise TypeError("expected a TruncSeries")
        if other._order != self._order:
            raise OrderMismatchError(f"orders differ: {self._order} vs {other._order}")

    # -- ring operations -----------------------------------------------
    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TruncSeries.constant(other, self._order)
        self._check(other)
        return TruncSeries([a + b for a, b in zip(self._coeffs, other._coeffs)], self._order)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries([-a for a in self._coeffs], self._order)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TruncSeries.constant(other, self._order)
        self._check(other)
        return TruncSeries([a - b for a, b in zip(self._coeffs, other._coeffs)], self._order)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return invert(self) ** (-e)
        result = TruncSeries.constant(1, self._order)
        base = self
        while e:
            if e & 1:
                result = mul(result, base)
            e >>= 1
            if e:
                base = mul(base, base)
        return result

    def scale(self, c) -> TruncSeries:
        c = _as_fraction(c)
        return TruncSeries([c * a for a in self._coeffs], self._order)

    # -- explicit order changes and substitutions ------------------------
    def truncate(self, order: int) -> TruncSeries:
        if order > self._order:
            raise ValueError("cannot truncate to a higher order; use extend()")
        return TruncSeries(self._coeffs[: order + 1], order)

    def extend(self, order: int) -> TruncSeries:
        """Zero-pad to a higher order (only valid for polynomials)."""
        if order < self._order:
            raise ValueError("extend() only raises the order")
        return TruncSeries(self._coeffs, order)

    def shift(self, k: int) -> TruncSeries:
        """Multiply by ``q^k`` (k >= 0), keeping the order."""
        if k < 0:
            raise ValueError("negative shifts leave the series ring")
        return TruncSeries(([Fraction(0)] * k + list(self._coeffs))[: self._order + 1], self._order)

    def dilate(self, t: int, order: int | None = None) -> TruncSeries:
        """Substitute ``q -> q^t``; result truncated at ``order`` (default: same)."""
        if t < 1:
            raise ValueError("t must be positive")
        order = self._order if order is None else order
        if order // t > self._order:
            raise ValueError("source series too short for the requested order")
        out = [Fraction(0)] * (order + 1)
        for n in range(order // t + 1):
            out[n * t] = self._coeffs[n]
        return TruncSeries(out, order)

    def theta(self) -> TruncSeries:
        """Apply ``q d/dq``."""
        return TruncSeries([n * c for n, c in enumerate(self._coeffs)], self._order)

    # -- serialization -------------------------------------------------
    def to_json(self) -> dict:
        return {
            "order": self._order,
            "coeffs": [f"{c.numerator}/{c.denominator}" for c in self._coeffs],
        }

    @classmethod
    def from_json(cls, data: dict) -> TruncSeries:
        return cls([Fraction(s) for s in data["coeffs"]], int(data["order"]))


# ---------------------------------------------------------------------------
# multiplication kernels on integer coefficient lists


def _conv_schoolbook(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    out = [0] * (n + 1)
    bnz = [(j, y) for j, y in enumerate(b[: n + 1]) if y]
    for i, x in enumerate(a[: n + 1]):
        if not x:
            continue
        lim = n - i
        for j, y in bnz:
            if j > lim:
                break
            out[i + j] += x * y
    return out


def _conv_kronecker(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    a = a[: n + 1]
    b = b[: n + 1]
    ma = max((abs(x) for x in a), default=0)
    mb = max((abs(x) for x in b), default=0)
    if ma == 0 or mb == 0:
        return [0] * (n + 1)
    bound = ma * mb * min(len(a), len(b))
    w = (bound.bit_length() + 2 + 7) // 8  # bytes per slot
    bits = 8 * w
    half = 1 << (bits - 1)
    slot = b"\x00" * (w - 1) + b"\x80"  # little-endian encoding of `half`

    def pack(vals):
        raw = b"".join((x + half).to_bytes(w, "little") for x in vals)
        return int.from_bytes(raw, "little") - int.from_bytes(slot * len(vals), "little")

    prod = int(_mpz(pack(a)) * _mpz(pack(b)))
    ndig = len(a) + len(b) - 1
    # balanced offset makes every slot non-negative, so no borrows cross slots
    prod += int.from_bytes(slot * ndig, "little")
    keep = min(ndig, n + 1)
    prod &= (1 << (bits * keep)) - 1
    raw = prod.to_bytes(w * keep, "little")
    out = [int.from_bytes(raw[i * w : (i + 1) * w], "little") - half for i in range(keep)]
    out.extend([0] * (n + 1 - keep))
    return out


def _conv(a: Sequence[int], b: Sequence[int], n: int, method: str = "auto") -> list[int]:
    if method == "schoolbook":
        return _conv_schoolbook(a, b, n)
    if method == "kronecker":
        return _conv_kronecker(a, b, n)
    if method != "auto":
        raise ValueError(f"unknown method {method!r}")
    nza = sum(1 for x in a[: n + 1] if x)
    nzb = sum(1 for x in b[: n + 1] if x)
    if nza * nzb <= KRONECKER_THRESHOLD:
        return _conv_schoolbook(a, b, n)
    return _conv_kronecker(a, b, n)


def mul(a: TruncSeries, b: TruncSeries, method: str = "auto") -> TruncSeries:
    """Cauchy product truncated at the common order."""
    a._check(b)
    n = a.order
    na, da = a._int_form()
    nb, db = b._int_form()
    out = _conv(na, nb, n, method)
    den = da * db
    if den != 1:
        g = den
        for x in out:
            if x:
                g = math.gcd(g, x)
                if g == 1:
                    break
        if g > 1:
            den //= g
            out = [x // g for x in out]
    return TruncSeries._from_ints(out, den, n)


def _invert_schoolbook(a: TruncSeries) -> TruncSeries:
    c0 = a[0]
    inv0 = 1 / c0
    b = [inv0]
    cs = a.coeffs
    for n in range(1, a.order + 1):
        s = sum((cs[k] * b[n - k] for k in range(1, n + 1) if cs[k]), Fraction(0))
        b.append(-s * inv0)
    return TruncSeries(b, a.order)


def invert(a: TruncSeries, method: str = "auto") -> TruncSeries:
    """Multiplicative inverse; Newton iteration for long series."""
    if a[0] == 0:
        raise NotInvertibleError("constant term is zero")
    N = a.order
    if method == "schoolbook" or (method == "auto" and N < 64):
        return _invert_schoolbook(a)
    # b <- b (2 - a b), doubling the number of correct terms each step
    b = TruncSeries.constant(1 / a[0], 0)
    k = 0
    while k < N:
        k = min(2 * k + 1, N)
        ak = a.truncate(k)
        bk = b.extend(k)
        e = mul(ak, bk)
        b = mul(bk, 2 - e)
    return b


# ---------------------------------------------------------------------------
# classical q-series


def pentagonal(j: int) -> int:
    """Generalized pentagonal number (3j^2 + j)/2 for any integer j."""
    return (3 * j * j + j) // 2


def triangular(k: int) -> int:
    return (k * k + k) // 2


def euler_product(N: int) -> TruncSeries:
    """``(q;q)_inf`` to order N via the pentagonal number theorem."""
    if N < 0:
        raise ValueError("N must be >= 0")
    out = [0] * (N + 1)
    out[0] = 1
    j = 1
    while pentagonal(-j) <= N:
        sign = -1 if j % 2 else 1
        out[pentagonal(-j)] = sign
        if pentagonal(j) <= N:
            out[pentagonal(j)] = sign
        j += 1
    return TruncSeries._from_ints(out, 1, N)


def euler_product_naive(N: int) -> TruncSeries:
    """``prod_{n=1}^{N} (1 - q^n)`` expanded factor by factor."""
    out = [0] * (N + 1)
    out[0] = 1
    for n in range(1, N + 1):
        for m in range(N, n - 1, -1):
            out[m] -= out[m - n]
    return TruncSeries._from_ints(out, 1, N)


def triple_product(N: int) -> TruncSeries:
    """``(q;q)_inf^3 = sum_k (-1)^k (2k+1) q^{T_k}`` to order N."""
    if N < 0:
        raise ValueError("N must be >= 0")
    out = [0] * (N + 1)
    k = 0
    while triangular(k) <= N:
        out[triangular(k)] = (-1) ** k * (2 * k + 1)
        k += 1
    return TruncSeries._from_ints(out, 1, N)
