"""Exact t-regular partition counts, used to cross-check the parity streams."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import InputTooLarge
from .gf2series import Gf2Series

BRUTE_FORCE_MAX_N = 60
TABLE_MAX_LIMIT = 10**5


@dataclass(frozen=True)
class ExactCountTable:
    t: int
    counts: tuple[int, ...]

    def __getitem__(self, n: int) -> int:
        return self.counts[n]

    def __len__(self) -> int:
        return len(self.counts)

    def parity(self) -> Gf2Series:
        return Gf2Series.from_bits([c & 1 for c in self.counts])


def iter_regular_partitions(n: int, t: int, max_part: int | None = None):
    """Yield the partitions of ``n`` with no part divisible by ``t``, as
    non-increasing tuples."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for part in range(min(n, max_part), 0, -1):
        if part % t == 0:
            continue
        for rest in iter_regular_partitions(n - part, t, part):
            yield (part,) + rest


def brute_force_bt(n: int, t: int) -> int:
    """Count t-regular partitions of ``n`` by listing them."""
    if t < 2:
        raise ValueError("t must be >= 2")
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > BRUTE_FORCE_MAX_N:
        raise InputTooLarge(f"brute force limited to n <= {BRUTE_FORCE_MAX_N}, got {n}")
    return sum(1 for _ in iter_regular_partitions(n, t))


def _signed_pentagonal(limit: int) -> list[tuple[int, int]]:
    # (exponent, sign) pairs of f_1 = sum (-1)^m q^{m(3m-1)/2}
    out = [(0, 1)]
    m = 1
    while True:
        a = m * (3 * m - 1) // 2
        if a >= limit:
            break
        sign = -1 if m % 2 else 1
        out.append((a, sign))
        b = m * (3 * m + 1) // 2
        if b < limit:
            out.append((b, sign))
        m += 1
    return out


def partition_numbers(limit: int) -> list[int]:
    """p(0), ..., p(limit-1) via Euler's pentagonal recurrence."""
    terms = _signed_pentagonal(limit)[1:]
    p = [0] * limit
    p[0] = 1
    for n in range(1, limit):
        total = 0
        for e, sign in terms:
            if e > n:
                break
            total -= sign * p[n - e]
        p[n] = total
    return p


def bt_table(t: int, limit: int) -> ExactCountTable:
    """Exact b_t(n) for n < limit from f_t / f_1 = f_t * sum p(n) q^n."""
    if t < 2:
        raise ValueError("t must be >= 2")
    if limit < 1:
        raise ValueError("limit must be >= 1")
    if limit > TABLE_MAX_LIMIT:
        raise InputTooLarge(f"table limited to {TABLE_MAX_LIMIT} entries, got {limit}")
    p = partition_numbers(limit)
    ft = [(t * e, sign) for e, sign in _signed_pentagonal(-(-limit // t))]
    counts = [0] * limit
    for n in range(limit):
        total = 0
        for e, sign in ft:
            if e > n:
                break
            total += sign * p[n - e]
        counts[n] = total
    return ExactCountTable(t, tuple(counts))

