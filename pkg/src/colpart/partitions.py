"""Partition counts from generating functions, and Euler-type recurrences.

Three families are covered:

* ordinary partitions ``p(n)``;
* ``t``-colored partitions, generating function ``1/(q;q)_inf^t``;
* ``t``-regular partitions (no part divisible by ``t``), generating
  function ``(q^t;q^t)_inf / (q;q)_inf``.

The ``oracle_*`` functions expand the generating functions with the series
kernel.  The ``*_recurrence`` functions evaluate a single recurrence step
from a table of earlier values; they never read ``table[n]`` itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import NamedTuple

from .series import TruncSeries, euler_product, invert, pentagonal, triangular, triple_product

__all__ = [
    "InsufficientTableError",
    "InvalidParameterError",
    "PartitionTable",
    "Shape",
    "classify",
    "euler_recurrence",
    "oracle_colored",
    "oracle_ordinary",
    "oracle_regular",
    "p2_recurrence",
    "p3_recurrence_v0",
    "pentagonal_index",
    "pt_regular_recurrence",
    "sweep",
    "triangular_index",
]


class InvalidParameterError(ValueError):
    pass


class InsufficientTableError(IndexError):
    pass


@dataclass(frozen=True)
class PartitionTable:
    """Values ``v(0..N)`` of a partition function; ``v(m) = 0`` for ``m < 0``."""

    kind: str  # "ordinary" | "colored" | "regular"
    t: int
    values: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in ("ordinary", "colored", "regular"):
            raise InvalidParameterError(f"unknown kind {self.kind!r}")
        if not self.values or self.values[0] != 1:
            raise ValueError("partition tables start with value 1 at n = 0")

    @property
    def order(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, n: int) -> int:
        if n < 0:
            return 0
        if n > self.order:
            raise InsufficientTableError(f"table of order {self.order} has no entry {n}")
        return self.values[n]

    def series(self) -> TruncSeries:
        return TruncSeries.from_ints(self.values, self.order)

    def to_json(self) -> dict:
        return {"kind": self.kind, "t": self.t, "values": [str(x) for x in self.values]}

    @classmethod
    def from_json(cls, data: dict) -> PartitionTable:
        return cls(data["kind"], int(data["t"]), tuple(int(x) for x in data["values"]))


def _table(kind: str, t: int, s: TruncSeries) -> PartitionTable:
    return PartitionTable(kind, t, tuple(s.int_coeffs()))


def oracle_ordinary(N: int) -> PartitionTable:
    return _table("ordinary", 1, invert(euler_product(N)))


def oracle_colored(t: int, N: int) -> PartitionTable:
    """Coefficients of ``1/(q;q)_inf^t`` up to ``q^N``."""
    if t < 1:
        raise InvalidParameterError("t must be >= 1")
    if t == 3:
        # (q;q)^3 is sparse and known in closed form
        return _table("colored", 3, invert(triple_product(N)))
    return _table("colored", t, invert(euler_product(N) ** t))


def oracle_regular(t: int, N: int) -> PartitionTable:
    """Coefficients of ``(q^t;q^t)_inf / (q;q)_inf`` up to ``q^N``."""
    if t < 2:
        raise InvalidParameterError("t must be >= 2")
    num = euler_product(N // t).dilate(t, N)
    return _table("regular", t, num * invert(euler_product(N)))


# ---------------------------------------------------------------------------
# shape tests


class Shape(NamedTuple):
    kind: str  # "pentagonal" | "triangular" | "t_times_pentagonal"
    index: int
    t: int | None = None


def pentagonal_index(n: int) -> int | None:
    """The unique ``j`` with ``(3j^2+j)/2 == n``, or None."""
    if n < 0:
        return None
    d = 24 * n + 1
    s = isqrt(d)
    if s * s != d:
        return None
    witnesses = []
    if s % 6 == 1:
        witnesses.append((s - 1) // 6)
    if s % 6 == 5:
        witnesses.append(-(s + 1) // 6)
    # w_j is injective on the integers
    assert len(witnesses) <= 1, witnesses
    if witnesses:
        assert pentagonal(witnesses[0]) == n
        return witnesses[0]
    return None


def triangular_index(n: int) -> int | None:
    """The unique ``k >= 0`` with ``(k^2+k)/2 == n``, or None."""
    if n < 0:
        return None
    d = 8 * n + 1
    s = isqrt(d)
    if s * s != d:
        return None
    return (s - 1) // 2


def classify(n: int, t: int | None = None) -> tuple[Shape, ...]:
    """All shapes ``n`` takes; empty tuple when none apply.

    >>> classify(7)
    (Shape(kind='pentagonal', index=2, t=None),)
    """
    found = []
    j = pentagonal_index(n)
    if j is not None:
        found.append(Shape("pentagonal", j))
    k = triangular_index(n)
    if k is not None:
        found.append(Shape("triangular", k))
    if t is not None and n % t == 0:
        j = pentagonal_index(n // t)
        if j is not None:
            found.append(Shape("t_times_pentagonal", j, t))
    return tuple(found)


# ---------------------------------------------------------------------------
# recurrences


def _require(table: PartitionTable, kind: str, n: int, t: int | None = None):
    if table.kind != kind or (t is not None and table.t != t):
        raise InvalidParameterError(f"expected a {kind} table (t={t}), got {table.kind} t={table.t}")
    if n - 1 > table.order:
        raise InsufficientTableError(f"need values below {n}, table has order {table.order}")


def _pentagonal_sum(n: int, table: PartitionTable) -> int:
    # sum over j != 0 of (-1)^(j-1) table[n - w_j]
    total = 0
    j = 1
    while True:
        a = n - pentagonal(-j)
        if a < 0:
            break
        term = table[a] + table[n - pentagonal(j)]
        total += term if j % 2 else -term
        j += 1
    return total


def euler_recurrence(n: int, table: PartitionTable) -> int:
    """``sum_{j != 0} (-1)^(j-1) p(n - w_j)``; equals ``p(n)`` for n >= 1."""
    if not (table.kind == "ordinary" or (table.kind == "colored" and table.t == 1)):
        raise InvalidParameterError("euler_recurrence needs a table of p(n)")
    if n - 1 > table.order:
        raise InsufficientTableError(f"need values below {n}, table has order {table.order}")
    return _pentagonal_sum(n, table)


def _triangular_sum(n: int, table: PartitionTable) -> int:
    # sum over k >= 1 of (-1)^(k+1) (2k+1) table[n - T_k]
    total = 0
    k = 1
    while True:
        a = n - triangular(k)
        if a < 0:
            break
        term = (2 * k + 1) * table[a]
        total += term if k % 2 else -term
        k += 1
    return total


def p2_recurrence(n: int, table: PartitionTable) -> int:
    """Triangular-number recurrence for 2-colored partitions."""
    if n < 1:
        raise InvalidParameterError("n must be positive")
    _require(table, "colored", n, 2)
    total = _triangular_sum(n, table)
    j = pentagonal_index(n)
    if j is not None:
        total += -1 if j % 2 else 1
    return total


def p3_recurrence_v0(n: int, table: PartitionTable) -> int:
    """Triangular-number recurrence for 3-colored partitions."""
    if n < 1:
        raise InvalidParameterError("n must be positive")
    _require(table, "colored", n, 3)
    return _triangular_sum(n, table)


def pt_regular_recurrence(t: int, n: int, table: PartitionTable) -> int:
    """Pentagonal-number recurrence for t-regular partitions."""
    if t < 2:
        raise InvalidParameterError("t must be >= 2")
    if n < 1:
        raise InvalidParameterError("n must be positive")
    _require(table, "regular", n, t)
    total = _pentagonal_sum(n, table)
    if n % t == 0:
        j = pentagonal_index(n // t)
        if j is not None:
            total += -1 if j % 2 else 1
    return total


def recurrence_for(kind: str, t: int):
    """Return ``f(n, table)`` evaluating the recurrence for this family."""
    if kind == "ordinary" or (kind == "colored" and t == 1):
        return euler_recurrence
    if kind == "colored" and t == 2:
        return p2_recurrence
    if kind == "colored" and t == 3:
        return p3_recurrence_v0
    if kind == "regular":
        return lambda n, table: pt_regular_recurrence(t, n, table)
    raise InvalidParameterError(f"no recurrence for {kind} partitions with t={t}")


def oracle_for(kind: str, t: int, N: int) -> PartitionTable:
    if kind == "ordinary":
        return oracle_ordinary(N)
    if kind == "colored":
        return oracle_colored(t, N)
    if kind == "regular":
        return oracle_regular(t, N)
    raise InvalidParameterError(f"unknown kind {kind!r}")


def sweep(kind: str, t: int, n_max: int, table: PartitionTable | None = None):
    """Yield ``(n, oracle, recurrence)`` for ``1 <= n <= n_max``."""
    table = table or oracle_for(kind, t, n_max)
    step = recurrence_for(kind, t)
    for n in range(1, n_max + 1):
        yield n, table[n], step(n, table)
