"""Lattice points on the binary quadratic forms behind the b_21 parity results.

Three diagonal forms do the work: ``8x^2 + 3y^2`` (whose solution count at
``24k + 11`` carries the parity of ``b_21(4k + 1)``), ``8x^2 + 27y^2`` (the
part of it with ``3 | y``) and ``x^2 + 216y^2``.  The four reduced forms of
discriminant -96 give an independent route to primitive counts.

All enumeration is exact integer arithmetic with ``math.isqrt``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import gcd, isqrt
from typing import NamedTuple, Optional

from sympy import divisors, factorint, isprime

from .errors import (
    EvenModulus,
    NotCoprimeTo6,
    NotPrime,
    PreconditionViolated,
    WrongResidueClass,
)

J_VALUES = (1, 4, 8)


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd positive n."""
    if n < 1 or n % 2 == 0:
        raise EvenModulus(f"Jacobi symbol needs an odd positive modulus, got {n}")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def val2(n: int) -> int:
    """2-adic valuation; ``val2(0)`` is reported as a large sentinel."""
    if n == 0:
        return 1 << 30
    n = abs(n)
    return (n & -n).bit_length() - 1


def _require_odd_prime(p: int) -> None:
    if p < 3 or p % 2 == 0 or not isprime(p):
        raise NotPrime(f"{p} is not an odd prime")


def _require_coprime_to_6(u: int) -> None:
    if u < 1 or gcd(u, 6) != 1:
        raise NotCoprimeTo6(f"{u} is not a positive integer coprime to 6")


# ---------------------------------------------------------------------------
# diagonal forms


class DiagonalForm(NamedTuple):
    """The form ``a*x^2 + b*y^2``."""

    a: int
    b: int

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * y * y


FORM_8_3 = DiagonalForm(8, 3)
FORM_8_27 = DiagonalForm(8, 27)
FORM_1_216 = DiagonalForm(1, 216)


@dataclass(frozen=True)
class SolutionSet:
    n: int
    solutions: tuple[tuple[int, int], ...]
    primitive_flags: tuple[bool, ...]

    def __len__(self) -> int:
        return len(self.solutions)

    def __iter__(self):
        return iter(self.solutions)

    @property
    def primitive(self) -> list[tuple[int, int]]:
        return [s for s, f in zip(self.solutions, self.primitive_flags) if f]

    @property
    def primitive_count(self) -> int:
        return sum(self.primitive_flags)

    def positive(self) -> list[tuple[int, int]]:
        """Solutions with both coordinates >= 1."""
        return [(x, y) for x, y in self.solutions if x > 0 and y > 0]


def solutions_diag(f: DiagonalForm, n: int) -> SolutionSet:
    """Every integer pair with ``f.a*x^2 + f.b*y^2 == n``.

    The loop runs over the variable with the larger coefficient, so the cost
    is O(sqrt(n / max(a, b))).
    """
    a, b = f
    if a < 1 or b < 1:
        raise ValueError("diagonal form needs positive coefficients")
    if n < 1:
        raise ValueError("n must be positive")
    swap = a > b
    big, small = (a, b) if swap else (b, a)
    found = set()
    for w in range(isqrt(n // big) + 1):
        rest = n - big * w * w
        if rest % small:
            continue
        z2 = rest // small
        z = isqrt(z2)
        if z * z != z2:
            continue
        for sw in {w, -w}:
            for sz in {z, -z}:
                found.add((sw, sz) if swap else (sz, sw))
    sols = tuple(sorted(found))
    return SolutionSet(n, sols, tuple(gcd(x, y) == 1 for x, y in sols))


def M1(u: int) -> int:
    return len(solutions_diag(FORM_8_3, u))


def M2(u: int) -> int:
    return len(solutions_diag(FORM_8_27, u))


def N1(u: int) -> int:
    return solutions_diag(FORM_8_3, u).primitive_count


def N2(u: int) -> int:
    return solutions_diag(FORM_8_27, u).primitive_count


def squarefree_decomposition(u: int) -> tuple[int, int]:
    """Return ``(w, v)`` with ``u == w * v**2`` and ``w`` squarefree."""
    w = v = 1
    for q, e in factorint(u).items():
        v *= q ** (e // 2)
        if e % 2:
            w *= q
    return w, v


def count_from_primitive(f: DiagonalForm, u: int) -> int:
    """Total solution count rebuilt from primitive counts, summing
    ``N(w d^2)`` over the divisors ``d`` of ``v`` where ``u = w v^2``."""
    w, v = squarefree_decomposition(u)
    return sum(solutions_diag(f, w * d * d).primitive_count for d in divisors(v))


# ---------------------------------------------------------------------------
# discriminant -96

REDUCED_FORMS_96 = ((1, 0, 24), (3, 0, 8), (5, 2, 5), (4, 4, 7))


@dataclass(frozen=True)
class GeneralForm96:
    a: int
    b: int
    c: int

    def __post_init__(self):
        if (self.a, self.b, self.c) not in REDUCED_FORMS_96:
            raise ValueError(f"{(self.a, self.b, self.c)} is not a reduced form of discriminant -96")

    def primitive_representations(self, u: int) -> list[tuple[int, int]]:
        a, b, c = self.a, self.b, self.c
        reps = []
        # a*x^2 + b*x*y + c*y^2 = u  =>  (2a x + b y)^2 + 96 y^2 = 4 a u
        ymax = isqrt(4 * a * u // 96)
        for y in range(-ymax, ymax + 1):
            disc = 4 * a * u - 96 * y * y
            if disc < 0:
                continue
            r = isqrt(disc)
            if r * r != disc:
                continue
            for sr in {r, -r}:
                num = sr - b * y
                if num % (2 * a) == 0:
                    x = num // (2 * a)
                    if gcd(x, y) == 1:
                        reps.append((x, y))
        return reps


def rep96_closed(u: int) -> int:
    """``2 * prod_{q | u} (1 + (-6/q))`` over the distinct primes q dividing u."""
    _require_coprime_to_6(u)
    out = 2
    for q in factorint(u):
        out *= 1 + jacobi(-6, q)
    return out


def brute_rep96(u: int) -> int:
    """Primitive representations of ``u`` summed over the four reduced forms."""
    _require_coprime_to_6(u)
    return sum(len(GeneralForm96(*abc).primitive_representations(u)) for abc in REDUCED_FORMS_96)


def m1_closed(u: int) -> int:
    """``2 * sum_{d | u} (-6/d)``, valid as a count of ``8x^2+3y^2=u`` when u = 11 (mod 24)."""
    if u < 1 or u % 24 != 11:
        raise WrongResidueClass(f"{u} is not 11 mod 24")
    return 2 * sum(jacobi(-6, d) for d in divisors(u))


def a_of_k(k: int) -> int:
    """Number of (x, y) with x, y >= 1, ``8x^2 + 3y^2 = 24k + 11`` and ``3 ∤ y``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return sum(1 for x, y in solutions_diag(FORM_8_3, 24 * k + 11).positive() if y % 3)


# ---------------------------------------------------------------------------
# the prime sets Q and P


def find_primitive(f: DiagonalForm, n: int) -> Optional[tuple[int, int]]:
    """A primitive solution with x, y >= 0, or None."""
    for x, y in solutions_diag(f, n).primitive:
        if x >= 0 and y >= 0:
            return (x, y)
    return None


@dataclass(frozen=True)
class Membership:
    p: int
    j: int
    witness: tuple[int, int]


def _membership(f: DiagonalForm, p: int) -> Optional[Membership]:
    _require_odd_prime(p)
    for j in J_VALUES:
        w = find_primitive(f, j * p)
        if w is not None:
            return Membership(p, j, w)
    return None


def q_witness(p: int) -> Optional[Membership]:
    """Smallest j in {1, 4, 8} with a primitive solution of 8x^2+27y^2 = jp."""
    return _membership(FORM_8_27, p)


def p_witness(p: int) -> Optional[Membership]:
    """Smallest j in {1, 4, 8} with a primitive solution of x^2+216y^2 = jp."""
    return _membership(FORM_1_216, p)


def q_membership(p: int) -> Optional[int]:
    w = q_witness(p)
    return None if w is None else w.j


def p_membership(p: int) -> Optional[int]:
    w = p_witness(p)
    return None if w is None else w.j


# ---------------------------------------------------------------------------
# residue lemmas and the two-to-one map

EXPECTED_RESIDUES = {1: (11,), 4: (5,), 8: (1, 7)}


@dataclass(frozen=True)
class ResidueReport:
    j: int
    m: int
    residue: int
    solutions: tuple[tuple[int, int], ...]
    failures: tuple[str, ...] = ()

    @property
    def has_solution(self) -> bool:
        return bool(self.solutions)

    @property
    def holds(self) -> bool:
        return not self.failures


def residue_lemma_check(j: int, m: int) -> ResidueReport:
    """Check the mod-24 residue (and, for j = 8, the 2-adic valuation of y)
    forced by a primitive solution of ``8x^2 + 27y^2 = j*m``."""
    if j not in J_VALUES:
        raise ValueError(f"j must be one of {J_VALUES}")
    _require_coprime_to_6(m)
    sols = tuple(solutions_diag(FORM_8_27, j * m).primitive)
    res = m % 24
    failures = []
    if sols and res not in EXPECTED_RESIDUES[j]:
        failures.append(f"m={m} has residue {res}, expected {EXPECTED_RESIDUES[j]}")
    if sols and j == 8:
        for x, y in sols:
            v = val2(y)
            if res == 1 and v < 3:
                failures.append(f"solution {(x, y)}: val2(y)={v} < 3 with m = 1 mod 24")
            if res == 7 and v != 2:
                failures.append(f"solution {(x, y)}: val2(y)={v} != 2 with m = 7 mod 24")
    return ResidueReport(j, m, res, sols, tuple(failures))


@dataclass(frozen=True)
class Lemma25Result:
    p: int
    m: int
    j: int
    witness: tuple[int, int]
    u_count: int
    a_count: int
    fibers: dict = field(default_factory=dict, compare=False, repr=False)
    # elements of U whose image under the map is undefined or outside A
    stray: tuple = ()

    @property
    def identity_holds(self) -> bool:
        return self.u_count == 2 * self.a_count

    @property
    def corollary_holds(self) -> bool:
        if self.m == 1:
            return self.u_count == 4
        return self.u_count % 8 == 0

    @property
    def map_two_to_one(self) -> bool:
        """The explicit map hits every element of A exactly twice."""
        return (
            not self.stray
            and len(self.fibers) == self.a_count
            and all(c == 2 for c in self.fibers.values())
        )

    @property
    def holds(self) -> bool:
        return self.identity_holds and self.corollary_holds and self.map_two_to_one

    def as_tuple(self) -> tuple[int, int]:
        return (self.u_count, self.a_count)


def _lemma25_image(p: int, x1: int, y1: int, u: int, v: int) -> Optional[tuple[int, int]]:
    if (8 * x1 * u - 27 * y1 * v) % p == 0:
        a, b = 8 * x1 * u - 27 * y1 * v, x1 * v + y1 * u
    elif (8 * x1 * u + 27 * y1 * v) % p == 0:
        a, b = 8 * x1 * u + 27 * y1 * v, x1 * v - y1 * u
    else:
        return None
    if b % p:
        return None
    return a // p, b // p


def lemma25_cardinalities(p: int, m: int) -> Lemma25Result:
    """Compare primitive solutions of ``8u^2+27v^2 = pm`` with those of
    ``a^2+216b^2 = jm`` and push the former through the explicit map."""
    wit = q_witness(p)
    if wit is None:
        raise PreconditionViolated(f"p={p} is not in Q")
    if m < 1:
        raise PreconditionViolated(f"m={m} must be positive")
    if m % p == 0:
        raise PreconditionViolated(f"p={p} divides m={m}")
    if (p * m) % 24 != 11:
        raise PreconditionViolated(f"p*m = {p * m} is not 11 mod 24")
    j = wit.j
    x1, y1 = wit.witness
    U = solutions_diag(FORM_8_27, p * m).primitive
    A = set(solutions_diag(FORM_1_216, j * m).primitive)
    fibers: Counter = Counter()
    stray = []
    for u, v in U:
        img = _lemma25_image(p, x1, y1, u, v)
        if img in A:
            fibers[img] += 1
        else:
            stray.append((u, v))
    return Lemma25Result(p, m, j, (x1, y1), len(U), len(A), dict(fibers), tuple(stray))
