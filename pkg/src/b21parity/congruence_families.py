"""Arithmetic progressions on which b_21 is claimed even, and their checks.

Indices in a :class:`CongruenceFamily` always refer to ``b_21``.  Because
``b_21(4n + 1)`` and ``c(n)`` (the parity of f_3^4/f_1) agree, a family whose
progression stays inside ``4n + 1`` can equally be checked on the c-series,
which is four times shorter; see ``index_space`` in :func:`verify_family`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal, NamedTuple, Optional

import numpy as np
from sympy import isprime

from .errors import (
    ExcludedBeta,
    KOutOfRange,
    LimitTooSmall,
    NonIntegralExclusion,
    NotInQ,
    NotInvertible,
    NotPrime,
    WrongResidueClass,
)
from .gf2series import Gf2Series, c_series
from .quadforms import FORM_8_3, FORM_8_27, a_of_k, m1_closed, q_witness, solutions_diag

Source = Literal["theorem-1.1", "keith-zanello", "newman-case-i", "newman-case-ii"]
KEITH_ZANELLO_RESIDUES = (13, 17, 19, 23)


@dataclass(frozen=True)
class CongruenceFamily:
    """Claim: ``b_21(A*n + B)`` is even for every ``n >= 0``.

    With ``skip_p_divides`` set, terms where ``p | 24n + 11`` are exempt.
    ``excluded`` marks a progression built at a parameter the theorem rules
    out; such a family is a negative control and is expected to fail.

    ``B < A`` holds for the mod-p^2 families; Newman offsets are kept as
    stated, since the claim only starts at n = 0.
    """

    A: int
    B: int
    p: int
    param: int
    source: Source
    skip_p_divides: bool = False
    excluded: bool = False

    def __post_init__(self):
        if self.A < 1 or self.B < 0:
            raise ValueError(f"need A >= 1 and B >= 0, got A={self.A}, B={self.B}")
        if self.source in ("theorem-1.1", "keith-zanello") and self.B >= self.A:
            raise ValueError(f"need B < A for a {self.source} family, got A={self.A}, B={self.B}")

    def index(self, n: int) -> int:
        return self.A * n + self.B

    def as_dict(self) -> dict:
        return {
            "A": self.A,
            "B": self.B,
            "p": self.p,
            "param": self.param,
            "source": self.source,
            "skip_p_divides": self.skip_p_divides,
            "excluded": self.excluded,
        }


@dataclass
class VerificationReport:
    family: CongruenceFamily
    n_checked: int
    violations: list[tuple[int, int]] = field(default_factory=list)

    @property
    def status(self) -> str:
        return "pass" if not self.violations else "fail"

    @property
    def passed(self) -> bool:
        return not self.violations

    def as_dict(self) -> dict:
        return {
            "family": self.family.as_dict(),
            "n_checked": self.n_checked,
            "violations": [list(v) for v in self.violations],
            "status": self.status,
        }


def _require_prime(p: int) -> None:
    if p < 2 or not isprime(p):
        raise NotPrime(f"{p} is not prime")


def inverse24_neg(p: int) -> int:
    """The inverse of 24 modulo p, normalised into ``(-p, 0)``."""
    _require_prime(p)
    if 24 % p == 0:
        raise NotInvertible(f"24 is not invertible modulo {p}")
    return pow(24, -1, p) - p


def excluded_beta(p: int) -> int:
    """The single beta in [0, p) that the theorem leaves out."""
    num = 11 * (p * p + 24 * inverse24_neg(p) - 1)
    den = 24 * p
    if num % den:
        raise NonIntegralExclusion(f"excluded beta for p={p} is {num}/{den}")
    beta = num // den
    if not 0 <= beta < p:
        raise NonIntegralExclusion(f"excluded beta {beta} for p={p} lies outside [0, p)")
    return beta


def theorem11_offset(p: int, beta: int) -> int:
    """``t`` at n = 0, i.e. ``beta*p - 11 * 24^{-1}_p``."""
    return beta * p - 11 * inverse24_neg(p)


def _require_q(p: int):
    w = q_witness(p)
    if w is None:
        raise NotInQ(f"p={p} is not in Q")
    return w


def theorem11_family(p: int, beta: int, *, allow_excluded: bool = False) -> CongruenceFamily:
    """``b_21(4(p^2 n + beta p - 11 * 24^{-1}_p) + 1)`` is even.

    The offset is reduced mod p^2 so that ``B < A``; for large beta this adds
    the term one step before n = 0, which the same argument covers.
    """
    _require_q(p)
    if not 0 <= beta < p:
        raise ValueError(f"beta must lie in [0, {p}), got {beta}")
    excluded = beta == excluded_beta(p)
    if excluded and not allow_excluded:
        raise ExcludedBeta(f"beta={beta} is excluded for p={p}")
    return CongruenceFamily(
        A=4 * p * p,
        B=4 * (theorem11_offset(p, beta) % (p * p)) + 1,
        p=p,
        param=beta,
        source="theorem-1.1",
        excluded=excluded,
    )


def theorem11_families(p: int) -> list[CongruenceFamily]:
    bad = excluded_beta(p)
    return [theorem11_family(p, b) for b in range(p) if b != bad]


def keith_zanello_family(p: int, k: int) -> CongruenceFamily:
    """``b_21(4(p^2 n + k p - 11 * 24^{-1}) + 1)`` is even, inverse taken mod p^2."""
    _require_prime(p)
    if p % 24 not in KEITH_ZANELLO_RESIDUES:
        raise WrongResidueClass(f"p={p} is {p % 24} mod 24, need one of {KEITH_ZANELLO_RESIDUES}")
    if not 1 <= k < p:
        raise KOutOfRange(f"k must lie in [1, {p}), got {k}")
    p2 = p * p
    inv = pow(24, -1, p2)
    return CongruenceFamily(
        A=4 * p2,
        B=4 * ((k * p - 11 * inv) % p2) + 1,
        p=p,
        param=k,
        source="keith-zanello",
    )


class Decomposition(NamedTuple):
    t: int
    m: int
    p_divides_m: bool


def lemma21_decompose(p: int, n: int, beta: int, *, allow_excluded: bool = False) -> Decomposition:
    """Write ``24t + 11 = p*m`` for ``t = p^2 n + beta p - 11 * 24^{-1}_p``."""
    if n < 0 or not 0 <= beta < p:
        raise ValueError("need n >= 0 and 0 <= beta < p")
    excluded = beta == excluded_beta(p)
    if excluded and not allow_excluded:
        raise ExcludedBeta(f"beta={beta} is excluded for p={p}")
    t = p * p * n + theorem11_offset(p, beta)
    u = 24 * t + 11
    if u % p:
        raise AssertionError(f"p={p} does not divide 24t+11={u}")
    m = u // p
    divides = m % p == 0
    if divides and not excluded:
        raise AssertionError(f"p={p} divides m={m} at admissible beta={beta}")
    return Decomposition(t, m, divides)


IndexSpace = Literal["b21", "c"]


def progression_indices(
    f: CongruenceFamily, limit: int, index_space: IndexSpace = "b21"
) -> tuple[np.ndarray, np.ndarray]:
    """``(n, series_index)`` for every term of ``f`` that fits below ``limit``."""
    if index_space == "b21":
        A, B = f.A, f.B
    elif index_space == "c":
        if f.A % 4 or f.B % 4 != 1:
            raise ValueError("family does not lie in the progression 4n + 1")
        A, B = f.A // 4, (f.B - 1) // 4
    else:
        raise ValueError(f"unknown index space {index_space!r}")
    idx = np.arange(B, limit, A, dtype=np.int64)
    n = np.arange(len(idx), dtype=np.int64)
    if f.skip_p_divides:
        keep = (24 * n + 11) % f.p != 0
        n, idx = n[keep], idx[keep]
    return n, idx


def verify_family(
    f: CongruenceFamily,
    parity: Gf2Series,
    index_space: IndexSpace = "b21",
    n_max: Optional[int] = None,
) -> VerificationReport:
    """Check every progression term covered by ``parity``.

    Violations are reported as ``(n, b21_index)`` so that each one can be
    re-checked against an exact count.
    """
    n, idx = progression_indices(f, parity.limit, index_space)
    if n_max is not None:
        keep = n <= n_max
        n, idx = n[keep], idx[keep]
    if len(idx) == 0:
        raise LimitTooSmall(
            f"series limit {parity.limit} covers no term of A*n+B with A={f.A}, B={f.B}"
        )
    bad = np.flatnonzero(parity.bits[idx])
    violations = [(int(n[i]), int(f.index(int(n[i])))) for i in bad]
    return VerificationReport(f, len(idx), violations)


# ---------------------------------------------------------------------------
# conjecture harness


@dataclass
class ConjectureReport:
    p: int
    b21_index: int
    parity: int
    a_value: int
    m1_value: int
    solutions_8_27: list[tuple[int, int]]
    solutions_8_3: list[tuple[int, int]]

    @property
    def conjecture_holds(self) -> bool:
        return self.parity == 1

    @property
    def structure_as_predicted(self) -> bool:
        """a-value 3 and no solution of 8x^2 + 27y^2 = 11p^2."""
        return self.a_value == 3 and not self.solutions_8_27

    @property
    def counterexample(self) -> bool:
        return not (self.conjecture_holds and self.structure_as_predicted)

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "b21_index": self.b21_index,
            "parity": self.parity,
            "a_value": self.a_value,
            "m1_value": self.m1_value,
            "solutions_8_27": [list(s) for s in self.solutions_8_27],
            "solutions_8_3": [list(s) for s in self.solutions_8_3],
            "conjecture_holds": self.conjecture_holds,
            "structure_as_predicted": self.structure_as_predicted,
            "counterexample": self.counterexample,
        }


def conjecture_check(p: int, cseries: Optional[Gf2Series] = None) -> ConjectureReport:
    """Evaluate ``b_21((11p^2 - 5)/6) mod 2`` and the lattice data behind it.

    The parity is read off the c-series; the lattice side is enumerated
    independently.  Disagreement with the conjecture is reported, not raised.
    """
    _require_q(p)
    u = 11 * p * p
    k = (u - 11) // 24
    if cseries is None:
        cseries = c_series(k + 1)
    if cseries.limit <= k:
        raise LimitTooSmall(f"c-series limit {cseries.limit} does not reach index {k}")
    return ConjectureReport(
        p=p,
        b21_index=(u - 5) // 6,
        parity=cseries[k],
        a_value=a_of_k(k),
        m1_value=m1_closed(u),
        solutions_8_27=list(solutions_diag(FORM_8_27, u).solutions),
        solutions_8_3=list(solutions_diag(FORM_8_3, u).solutions),
    )
