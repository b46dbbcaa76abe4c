"""Newman's recurrence for c(n), the parity of f_3^4 / f_1, and the
congruences for b_21 that follow from it.

The recurrence reads, mod 2,

    c(p^2 n + h) = gamma(n) c(n) + c((n - h) / p^2),    h = 11 (p^2 - 1) / 24,

with ``c`` zero at negative or non-integral arguments.  Putting n = 0
eliminates Newman's unknown constant, leaving ``gamma(n)`` in terms of the
pivot bit ``c(h)`` alone.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal, Optional

from sympy import isprime

from .congruence_families import CongruenceFamily, VerificationReport, verify_family
from .errors import ExcludedPrime, LimitTooSmall, NotPrime
from .gf2series import Gf2Series

Case = Literal["i", "ii"]
#: largest series the feasibility cutoffs assume
FEASIBLE_LIMIT = 1 << 24


def pivot_index(p: int, power: int = 2) -> int:
    """``11 (p^power - 1) / 24``."""
    return 11 * (p**power - 1) // 24


def _check_prime(p: int) -> None:
    if p in (2, 3, 11):
        raise ExcludedPrime(f"p={p} is excluded")
    if p < 5 or not isprime(p):
        raise NotPrime(f"{p} is not a prime >= 5")


@dataclass(frozen=True)
class NewmanClassification:
    p: int
    case: Case
    mu: int
    pivot_parity: int

    def as_dict(self) -> dict:
        return {"p": self.p, "case": self.case, "mu": self.mu, "pivot_parity": self.pivot_parity}


def classify(p: int, cseries: Gf2Series) -> NewmanClassification:
    """Case (i) when ``b_21((11p^2 - 5)/6)``, i.e. ``c(11(p^2-1)/24)``, is odd."""
    _check_prime(p)
    h = pivot_index(p)
    if cseries.limit <= h:
        raise LimitTooSmall(f"c-series limit {cseries.limit} does not reach pivot {h}")
    bit = cseries[h]
    return NewmanClassification(p, "i" if bit else "ii", 4 if bit else 6, bit)


def gamma_parity(p: int, n: int, pivot_parity: int) -> int:
    """gamma(n) mod 2.

    The Legendre symbol of ``n - h`` contributes 1 exactly when p does not
    divide it, and ``p | n - h`` iff ``p | 24n + 11``.
    """
    if p < 5:
        raise ValueError("p must be >= 5")
    legendre_bit = 0 if (24 * n + 11) % p == 0 else 1
    return (pivot_parity + 1 + legendre_bit) & 1


def c_at(cseries: Gf2Series, num: int, den: int = 1) -> int:
    """c(num / den), taken as 0 when the argument is negative or not an integer."""
    if num < 0 or num % den:
        return 0
    n = num // den
    if n >= cseries.limit:
        raise LimitTooSmall(f"index {n} beyond c-series limit {cseries.limit}")
    return cseries[n]


@dataclass
class RecurrenceReport:
    p: int
    n_max: int
    failures: list[int] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def as_dict(self) -> dict:
        return {"p": self.p, "n_max": self.n_max, "failures": self.failures, "status": self.status}


def verify_recurrence(p: int, cseries: Gf2Series, n_max: int) -> RecurrenceReport:
    _check_prime(p)
    h = pivot_index(p)
    p2 = p * p
    if cseries.limit <= p2 * n_max + h:
        raise LimitTooSmall(f"need c-series limit > {p2 * n_max + h}, have {cseries.limit}")
    pivot = cseries[h]
    failures = []
    for n in range(n_max + 1):
        lhs = cseries[p2 * n + h]
        rhs = (gamma_parity(p, n, pivot) & cseries[n]) ^ c_at(cseries, n - h, p2)
        if lhs != rhs:
            failures.append(n)
    return RecurrenceReport(p, n_max, failures)


@dataclass
class OddnessCheck:
    k: int
    b21_index: int
    c_index: int
    parity: Optional[int]

    @property
    def status(self) -> str:
        if self.parity is None:
            return "skipped"
        return "pass" if self.parity == 1 else "fail"

    def as_dict(self) -> dict:
        return {
            "k": self.k,
            "b21_index": self.b21_index,
            "c_index": self.c_index,
            "parity": self.parity,
            "status": self.status,
        }


@dataclass
class Theorem12Report:
    classification: NewmanClassification
    families: list[VerificationReport] = field(default_factory=list)
    oddness: list[OddnessCheck] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.families) and all(
            o.status != "fail" for o in self.oddness
        )

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def as_dict(self) -> dict:
        return {
            "classification": self.classification.as_dict(),
            "families": [r.as_dict() for r in self.families],
            "oddness": [o.as_dict() for o in self.oddness],
            "skipped": self.skipped,
            "status": self.status,
        }


def theorem12_families(p: int, case: Case, k: int) -> list[CongruenceFamily]:
    """The progressions (in b_21 indices) claimed even for the given case and k."""
    if case == "i":
        e = 4 * k + 4
        base = (11 * p**e - 5) // 6
        return [
            CongruenceFamily(
                A=4 * p**e,
                B=4 * p ** (e - 1) * beta + base,
                p=p,
                param=beta,
                source="newman-case-i",
            )
            for beta in range(1, p)
        ]
    e = 6 * k + 2
    return [
        CongruenceFamily(
            A=4 * p**e,
            B=(11 * p**e - 5) // 6,
            p=p,
            param=k,
            source="newman-case-ii",
            skip_p_divides=True,
        )
    ]


def verify_theorem12(
    p: int,
    cseries: Gf2Series,
    n_max: Optional[int] = None,
    k_max: int = 1,
) -> Theorem12Report:
    """Check the families and the oddness statements for ``k = 0 .. k_max``.

    Anything not covered by ``cseries`` is listed under ``skipped``; ``k = 0``
    must always be covered.
    """
    cls = classify(p, cseries)
    report = Theorem12Report(cls)
    mu = cls.mu
    for k in range(k_max + 1):
        for fam in theorem12_families(p, cls.case, k):
            try:
                report.families.append(verify_family(fam, cseries, "c", n_max=n_max))
            except LimitTooSmall:
                if k == 0:
                    raise
                report.skipped.append(f"family k={k} param={fam.param}: beyond series limit")
        c_idx = pivot_index(p, mu * k)
        b_idx = (11 * p ** (mu * k) - 5) // 6
        if c_idx < cseries.limit:
            report.oddness.append(OddnessCheck(k, b_idx, c_idx, cseries[c_idx]))
        else:
            if k == 0:
                raise LimitTooSmall("c-series too short for k = 0")
            report.oddness.append(OddnessCheck(k, b_idx, c_idx, None))
            report.skipped.append(f"oddness k={k}: index {c_idx} beyond series limit")
    return report
