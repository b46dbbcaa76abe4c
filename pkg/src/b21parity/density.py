"""Empirical density of the primes in Q, overall and per residue class mod 24.

The Dirichlet density is a limit and cannot be computed; the natural density
among primes below a bound stands in for it.
"""
from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import InputTooLarge, PreconditionViolated
from .quadforms import p_membership, q_membership

SIEVE_MAX = 10**8
Q_CLASSES = (1, 5, 7, 11)


def sieve(X: int) -> list[int]:
    """All primes below ``X``."""
    if X > SIEVE_MAX:
        raise InputTooLarge(f"sieve bound limited to {SIEVE_MAX}, got {X}")
    if X <= 2:
        return []
    is_p = np.ones(X, dtype=bool)
    is_p[:2] = False
    for q in range(2, int(X**0.5) + 1):
        if is_p[q]:
            is_p[q * q :: q] = False
    return np.flatnonzero(is_p).tolist()


@dataclass
class PrimeRow:
    p: int
    in_q: bool
    j: Optional[int]
    p_j: Optional[int] = None

    @property
    def residue(self) -> int:
        return self.p % 24


@dataclass
class DensityReport:
    X: int
    prime_count: int
    q_count: int
    per_class_counts: dict[int, int]
    rows: list[PrimeRow] = field(default_factory=list, repr=False)
    # primes where Q and P membership disagree (only filled when P was scanned)
    qp_mismatches: list[int] = field(default_factory=list)
    # primes in Q outside the residues 1, 5, 7, 11 mod 24
    residue_violations: list[int] = field(default_factory=list)

    @property
    def q_fraction(self) -> Fraction:
        return Fraction(self.q_count, self.prime_count)

    @property
    def class_fractions(self) -> dict[int, Fraction]:
        return {k: Fraction(v, self.prime_count) for k, v in self.per_class_counts.items()}

    def q_primes(self) -> list[int]:
        return [r.p for r in self.rows if r.in_q]

    def as_dict(self) -> dict:
        return {
            "X": self.X,
            "prime_count": self.prime_count,
            "q_count": self.q_count,
            "per_class_counts": {str(k): v for k, v in self.per_class_counts.items()},
            "q_fraction": f"{self.q_fraction.numerator}/{self.q_fraction.denominator}",
            "class_fractions": {
                str(k): f"{v.numerator}/{v.denominator}" for k, v in self.class_fractions.items()
            },
            "qp_mismatches": self.qp_mismatches,
            "residue_violations": self.residue_violations,
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["p", "residue_mod_24", "in_Q", "witness_j"])
        for r in self.rows:
            w.writerow([r.p, r.residue, int(r.in_q), "" if r.j is None else r.j])
        return buf.getvalue()


def _scan(primes: list[int], with_p: bool) -> list[PrimeRow]:
    rows = []
    for p in primes:
        j = q_membership(p)
        rows.append(PrimeRow(p, j is not None, j, p_membership(p) if with_p else None))
    return rows


def q_density_report(X: int, *, check_p: bool = True, workers: int = 1) -> DensityReport:
    """Scan every odd prime below ``X`` for membership in Q (and P)."""
    if X < 100:
        raise PreconditionViolated(f"X must be at least 100, got {X}")
    primes = sieve(X)
    odd = [p for p in primes if p > 2]
    if workers > 1:
        chunks = [odd[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(workers) as ex:
            parts = list(ex.map(_scan, chunks, [check_p] * workers))
        rows = sorted((r for part in parts for r in part), key=lambda r: r.p)
    else:
        rows = _scan(odd, check_p)
    per_class = {k: 0 for k in Q_CLASSES}
    violations, mismatches = [], []
    q_count = 0
    for r in rows:
        if check_p and (r.p_j is None) == r.in_q:
            mismatches.append(r.p)
        if not r.in_q:
            continue
        q_count += 1
        if r.residue in per_class:
            per_class[r.residue] += 1
        else:
            violations.append(r.p)
    return DensityReport(X, len(primes), q_count, per_class, rows, mismatches, violations)
