"""Truncated power series over GF(2), packed into Python integers.

A series with ``limit`` coefficients is stored as a single non-negative
``int`` whose bit ``n`` is the coefficient of ``q**n``.  CPython integers are
arrays of machine words, so shifts and XORs on them are word-level operations
done in C; convolution is a sum of shifted copies of one operand, one copy
per set bit of the other.

Everything here works modulo 2 only.  Over GF(2) the signs in Euler's
pentagonal theorem vanish and squaring is the Frobenius map
``s(q)**2 = s(q**2)``, which the inverse and power routines exploit.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

import numpy as np

from .errors import NonUnitConstantTerm

__all__ = [
    "Gf2Series",
    "EtaExponentMap",
    "pentagonal_exponents",
    "pentagonal_series",
    "dilate",
    "multiply",
    "invert",
    "power",
    "eta_quotient_parity",
    "bt_parity",
    "c_series",
]

#: ``{delta: r_delta}``, the exponent vector of an eta-quotient ``prod f_delta**r_delta``.
EtaExponentMap = Mapping[int, int]


def _mask(limit: int) -> int:
    return (1 << limit) - 1


def _bits_to_int(bits: np.ndarray) -> int:
    packed = np.packbits(bits.astype(np.uint8, copy=False), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


@dataclass(frozen=True)
class Gf2Series:
    """Coefficients ``0 .. limit-1`` of a power series, reduced mod 2."""

    limit: int
    word: int = 0

    def __post_init__(self):
        if self.limit < 1:
            raise ValueError(f"limit must be positive, got {self.limit}")
        if self.word < 0:
            raise ValueError("word must be non-negative")
        if self.word >> self.limit:
            object.__setattr__(self, "word", self.word & _mask(self.limit))

    # -- construction -----------------------------------------------------
    @classmethod
    def from_indices(cls, indices: Iterable[int], limit: int) -> "Gf2Series":
        """Series with a 1 at each index (indices outside the range are dropped).

        Repeated indices cancel in pairs, as they would in a sum over GF(2).
        """
        bits = np.zeros(limit, dtype=np.uint8)
        for n in indices:
            if 0 <= n < limit:
                bits[n] ^= 1
        return cls(limit, _bits_to_int(bits))

    @classmethod
    def from_bits(cls, bits) -> "Gf2Series":
        arr = np.asarray(bits, dtype=np.uint8) & 1
        return cls(len(arr), _bits_to_int(arr))

    @classmethod
    def one(cls, limit: int) -> "Gf2Series":
        return cls(limit, 1)

    @classmethod
    def zero(cls, limit: int) -> "Gf2Series":
        return cls(limit, 0)

    # -- access -----------------------------------------------------------
    @cached_property
    def bits(self) -> np.ndarray:
        """Read-only ``uint8`` array of the ``limit`` coefficients."""
        nbytes = (self.limit + 7) // 8
        raw = np.frombuffer(self.word.to_bytes(nbytes, "little"), dtype=np.uint8)
        arr = np.unpackbits(raw, bitorder="little")[: self.limit]
        arr.flags.writeable = False
        return arr

    def __getitem__(self, n):
        if isinstance(n, slice):
            return self.bits[n]
        if not 0 <= n < self.limit:
            raise IndexError(f"index {n} outside [0, {self.limit})")
        return int(self.bits[n])

    def __len__(self) -> int:
        return self.limit

    def support(self) -> np.ndarray:
        """Indices of the nonzero coefficients, ascending."""
        return np.flatnonzero(self.bits)

    def weight(self) -> int:
        return self.word.bit_count()

    def truncate(self, limit: int) -> "Gf2Series":
        return Gf2Series(min(limit, self.limit), self.word)

    def is_one(self) -> bool:
        return self.word == 1

    def __add__(self, other: "Gf2Series") -> "Gf2Series":
        limit = min(self.limit, other.limit)
        return Gf2Series(limit, (self.word ^ other.word) & _mask(limit))

    __xor__ = __add__

    def __mul__(self, other: "Gf2Series") -> "Gf2Series":
        return multiply(self, other)

    def __pow__(self, e: int) -> "Gf2Series":
        return power(self, e)

    def __repr__(self) -> str:
        head = self.support()[:12].tolist()
        more = ", ..." if self.weight() > 12 else ""
        return f"Gf2Series(limit={self.limit}, support=[{', '.join(map(str, head))}{more}])"


def pentagonal_exponents(limit: int) -> list[int]:
    """Generalized pentagonal numbers m(3m-1)/2 (m in Z) below ``limit``, ascending."""
    out = [0]
    m = 1
    while True:
        a = m * (3 * m - 1) // 2
        if a >= limit:
            break
        out.append(a)
        b = m * (3 * m + 1) // 2
        if b < limit:
            out.append(b)
        m += 1
    return out


def pentagonal_series(limit: int) -> Gf2Series:
    """Parity series of f_1 = prod (1 - q^j)."""
    if limit < 1:
        raise ValueError("limit must be >= 1")
    word = 0
    for e in pentagonal_exponents(limit):
        word |= 1 << e
    return Gf2Series(limit, word)


def dilate(s: Gf2Series, k: int) -> Gf2Series:
    """Substitute q -> q^k, keeping the limit of ``s``."""
    if k < 1:
        raise ValueError("dilation factor must be >= 1")
    if k == 1:
        return s
    idx = s.support()
    idx = idx[idx < -(-s.limit // k)] * k
    bits = np.zeros(s.limit, dtype=np.uint8)
    bits[idx] = 1
    return Gf2Series(s.limit, _bits_to_int(bits))


def multiply(a: Gf2Series, b: Gf2Series) -> Gf2Series:
    """Product mod 2, truncated to the shorter operand.

    Shift-XOR accumulation driven by the sparser operand.
    """
    limit = min(a.limit, b.limit)
    mask = _mask(limit)
    x, y = a.word & mask, b.word & mask
    if x.bit_count() > y.bit_count():
        x, y = y, x
    if x == 0:
        return Gf2Series(limit, 0)
    acc = 0
    for e in Gf2Series(limit, x).support().tolist():
        acc ^= y << e
    return Gf2Series(limit, acc & mask)


def invert(s: Gf2Series) -> Gf2Series:
    """Multiplicative inverse of a series with constant term 1.

    Newton iteration over GF(2): if ``s*g = 1 (mod q^L)`` then
    ``s * g(q^2) = 1 (mod q^(2L))``, since ``g**2 = g(q**2)`` in characteristic 2.
    Each step is one multiplication by ``s``, which is cheap when ``s`` is an
    eta product.
    """
    if not s.word & 1:
        raise NonUnitConstantTerm("constant term is 0; series is not invertible")
    g = Gf2Series(1, 1)
    known = 1
    while known < s.limit:
        known = min(2 * known, s.limit)
        sq = dilate(Gf2Series(known, g.word), 2)
        g = multiply(s.truncate(known), sq)
    return Gf2Series(s.limit, g.word)


def invert_by_recurrence(s: Gf2Series) -> Gf2Series:
    """Coefficient-by-coefficient inverse from ``sum_k s_k g_{n-k} = [n == 0]``.

    Quadratic; kept as an independent check on :func:`invert`.
    """
    if not s.word & 1:
        raise NonUnitConstantTerm("constant term is 0; series is not invertible")
    sup = [k for k in s.support().tolist() if k > 0]
    g = np.zeros(s.limit, dtype=np.uint8)
    g[0] = 1
    for n in range(1, s.limit):
        v = 0
        for k in sup:
            if k > n:
                break
            v ^= g[n - k]
        g[n] = v
    return Gf2Series.from_bits(g)


def power(s: Gf2Series, e: int) -> Gf2Series:
    """``s**e`` mod 2; negative ``e`` inverts first."""
    if e < 0:
        return power(invert(s), -e)
    result = Gf2Series.one(s.limit)
    base = s
    while e:
        if e & 1:
            result = multiply(result, base)
        e >>= 1
        if e:
            base = dilate(base, 2)
    return result


def eta_quotient_parity(r: EtaExponentMap, limit: int) -> Gf2Series:
    """Parity series of ``prod_delta f_delta ** r[delta]``.

    Positive and negative exponents are collected into a numerator and a
    denominator, so only one inversion is performed.
    """
    if limit < 1:
        raise ValueError("limit must be >= 1")
    f1 = pentagonal_series(limit)
    num = Gf2Series.one(limit)
    den = Gf2Series.one(limit)
    for delta, e in sorted(r.items()):
        if delta < 1:
            raise ValueError(f"eta index must be positive, got {delta}")
        if e == 0:
            continue
        factor = power(dilate(f1, delta), abs(e))
        if e > 0:
            num = multiply(num, factor)
        else:
            den = multiply(den, factor)
    if den.is_one():
        return num
    return multiply(num, invert(den))


def bt_parity(t: int, limit: int) -> Gf2Series:
    """``b_t(n) mod 2`` for ``n < limit``, from ``f_t / f_1``."""
    if t < 2:
        raise ValueError("t must be >= 2")
    return eta_quotient_parity({1: -1, t: 1}, limit)


def c_series(limit: int) -> Gf2Series:
    """Parity of the coefficients of f_3^4 / f_1; bit n equals b_21(4n+1) mod 2."""
    return eta_quotient_parity({1: -1, 3: 4}, limit)
