"""Brute-force enumeration oracles for partition counts."""

from math import comb


def partitions(n, largest=None):
    """Every partition of n as a non-increasing tuple."""
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for part in range(min(n, largest), 0, -1):
        for rest in partitions(n - part, part):
            yield (part,) + rest


def count_colored(t, n):
    # a part size used m times can be colored in C(m + t - 1, t - 1) ways
    total = 0
    for p in partitions(n):
        ways = 1
        for size in set(p):
            ways *= comb(p.count(size) + t - 1, t - 1)
        total += ways
    return total


def count_regular(t, n):
    return sum(1 for p in partitions(n) if all(x % t for x in p))
