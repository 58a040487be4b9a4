"""Partition and composition combinatorics.

A partition is a tuple of weakly decreasing positive integers; the empty
tuple is the partition of 0.  The canonical order on partitions of n is
reverse lexicographic, which is the order ``partitions_of`` generates and
every renderer sorts by.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb, factorial

Partition = tuple

def check_partition(parts) -> tuple:
    """Validate and return the canonical tuple form of a partition."""
    t = tuple(int(p) for p in parts)
    for i, p in enumerate(t):
        if p < 1:
            raise ValueError(f"partition parts must be >= 1, got {p}")
        if i and t[i - 1] < p:
            raise ValueError(f"parts must be weakly decreasing, got {t}")
    return t


@lru_cache(maxsize=None)
def partitions_of(n: int) -> tuple:
    """All partitions of n, reverse-lexicographically: (3), (2,1), (1,1,1)."""
    if n < 0:
        raise ValueError("n must be nonnegative")

    def gen(remaining, maxpart):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, maxpart), 0, -1):
            for rest in gen(remaining - first, first):
                yield (first,) + rest

    return tuple(gen(n, n))


def compositions_of(n: int, k: int) -> list:
    """All ordered k-tuples of positive integers summing to n, lexicographically."""
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")

    def gen(remaining, slots):
        if slots == 1:
            yield (remaining,)
            return
        for first in range(1, remaining - slots + 2):
            for rest in gen(remaining - first, slots - 1):
                yield (first,) + rest

    return list(gen(n, k))


def length(lam) -> int:
    return len(lam)


def weight(lam) -> int:
    return sum(lam)


def multiplicity(lam, i: int) -> int:
    """Number of parts equal to i."""
    return sum(1 for p in lam if p == i)


def multiplicity_vector(lam, n: int) -> tuple:
    """(m_1, ..., m_n): multiplicities of each part value up to n."""
    m = [0] * n
    for p in lam:
        if 1 <= p <= n:
            m[p - 1] += 1
        else:
            raise ValueError(f"part {p} out of range 1..{n}")
    return tuple(m)


def n_stat(lam) -> int:
    """The statistic sum_i (i-1) * lam_i over the parts in decreasing order."""
    return sum(i * p for i, p in enumerate(lam))


def zee(lam) -> int:
    """prod_i i^{m_i} m_i! -- the power-sum inner-product normalizer."""
    out = 1
    for v in set(lam):
        m = multiplicity(lam, v)
        out *= v**m * factorial(m)
    return out


def multinomial(total: int, parts) -> int:
    """total! / prod parts_i!; the parts must be nonnegative and sum to total."""
    parts = list(parts)
    if any(p < 0 for p in parts):
        raise ValueError("multinomial parts must be nonnegative")
    if sum(parts) != total:
        raise ValueError(f"parts sum {sum(parts)} != total {total}")
    out = 1
    rem = total
    for p in parts:
        out *= comb(rem, p)
        rem -= p
    return out


def composition_count_g(r, l: int) -> int:
    """Number of ordered tuples with part multiplicities r whose last entry is l.

    Equals the multinomial over r with the count of l decremented by one.
    """
    r = list(r)
    if not 1 <= l <= len(r):
        raise ValueError(f"part value {l} out of range for multiplicity vector {r}")
    if r[l - 1] < 1:
        raise ValueError(f"no composition with multiplicities {r} ends in {l}")
    r[l - 1] -= 1
    return multinomial(sum(r), r)


def dominates(lam, mu) -> bool:
    """Dominance order on partitions of equal weight: lam >= mu."""
    if weight(lam) != weight(mu):
        raise ValueError("dominance compares partitions of equal weight")
    acc_l = acc_m = 0
    for i in range(max(len(lam), len(mu))):
        acc_l += lam[i] if i < len(lam) else 0
        acc_m += mu[i] if i < len(mu) else 0
        if acc_l < acc_m:
            return False
    return True


def render_partition(lam) -> str:
    """Comma-separated parts; the empty partition renders as 0."""
    return ",".join(str(p) for p in lam) if lam else "0"


def parse_partition(s: str) -> tuple:
    s = s.strip()
    if s in ("0", "", "()"):
        return ()
    return check_partition(int(p) for p in s.split(","))
