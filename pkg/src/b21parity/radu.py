"""Radu's finite check for congruences of eta-quotient coefficients.

Given a tuple ``(m, M, N, r, t)`` in Radu's admissible set, and a second
exponent vector ``r'`` over the divisors of N for which a certain order bound
is non-negative at every cusp representative, the congruence
``c_r(m n + t') = 0`` for all ``t'`` in the orbit ``P_{m,r}(t)`` and all
``n >= 0`` follows from checking ``n <= floor(nu)``.

Everything here is exact: integers and :class:`fractions.Fraction`.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor, gcd
from typing import Mapping, Optional, Sequence

from sympy import divisors, factorint

from .errors import HypothesisViolated, LimitTooSmall, NotInDeltaStar, UnsupportedLevel
from .gf2series import Gf2Series


@dataclass(frozen=True)
class RaduInstance:
    m: int
    M: int
    N: int
    r: Mapping[int, int]
    t: int

    def __post_init__(self):
        if min(self.m, self.M, self.N) < 1:
            raise ValueError("m, M and N must be positive")
        if not 0 <= self.t < self.m:
            raise ValueError(f"t must lie in [0, m), got {self.t}")
        for delta, e in self.r.items():
            if e and self.M % delta:
                raise ValueError(f"eta index {delta} does not divide M={self.M}")
        object.__setattr__(self, "r", {d: e for d, e in sorted(self.r.items()) if e})

    @classmethod
    def from_vector(cls, m: int, M: int, N: int, r_vec: Sequence[int], t: int) -> "RaduInstance":
        """``r_vec`` lists exponents over the divisors of M in increasing order."""
        divs = divisors(M)
        if len(r_vec) != len(divs):
            raise ValueError(f"M={M} has {len(divs)} divisors, got {len(r_vec)} exponents")
        return cls(m, M, N, dict(zip(divs, r_vec)), t)

    @property
    def k(self) -> int:
        return gcd(self.m * self.m - 1, 24)

    @property
    def s_j(self) -> tuple[int, int]:
        prod = 1
        for delta, e in self.r.items():
            prod *= delta ** abs(e)
        s = (prod & -prod).bit_length() - 1
        return s, prod >> s

    @property
    def s(self) -> int:
        return self.s_j[0]

    @property
    def j(self) -> int:
        return self.s_j[1]

    @property
    def sum_r(self) -> int:
        return sum(self.r.values())

    @property
    def sum_delta_r(self) -> int:
        return sum(d * e for d, e in self.r.items())

    def r_vector(self) -> list[int]:
        return [self.r.get(d, 0) for d in divisors(self.M)]


@dataclass(frozen=True)
class DeltaStarResult:
    conditions: dict[int, bool]

    @property
    def passed(self) -> bool:
        return all(self.conditions.values())

    def __bool__(self) -> bool:
        return self.passed

    def failing(self) -> list[int]:
        return [i for i, ok in self.conditions.items() if not ok]


def condition5_quotient(inst: RaduInstance) -> int:
    """``24m / gcd(-24kt - k sum(delta r_delta), 24m)``."""
    m, k = inst.m, inst.k
    return 24 * m // gcd(-24 * k * inst.t - k * inst.sum_delta_r, 24 * m)


def delta_star_check(inst: RaduInstance) -> DeltaStarResult:
    m, M, N, k = inst.m, inst.M, inst.N, inst.k
    s, j = inst.s_j
    c = {}
    c[1] = all(N % q == 0 for q in factorint(m))
    c[2] = all(M % d == 0 and (m * N) % d == 0 for d in inst.r)
    if c[2]:
        c[3] = (k * N * sum(e * (m * N // d) for d, e in inst.r.items())) % 24 == 0
    else:
        c[3] = False
    c[4] = (k * N * inst.sum_r) % 8 == 0
    c[5] = N % condition5_quotient(inst) == 0
    if m % 2 == 0:
        c[6] = ((k * N) % 4 == 0 and (s * N) % 8 == 0) or (s % 2 == 0 and ((1 - j) * N) % 8 == 0)
    else:
        c[6] = True
    return DeltaStarResult(c)


def unit_squares(modulus: int) -> list[int]:
    """The squares of the units modulo ``modulus``, as residues in [0, modulus)."""
    return sorted({u * u % modulus for u in range(1, modulus) if gcd(u, modulus) == 1})


def p_set(inst: RaduInstance) -> list[int]:
    """The orbit ``P_{m,r}(t)`` of ``t`` under the unit squares mod 24m."""
    if not delta_star_check(inst):
        raise NotInDeltaStar(f"{inst} fails conditions {delta_star_check(inst).failing()}")
    m, t, sdr = inst.m, inst.t, inst.sum_delta_r
    out = set()
    for s in unit_squares(24 * m):
        # unit squares mod 24m are 1 mod 24
        out.add((t * s + (s - 1) // 24 * sdr) % m)
    return sorted(out)


@dataclass(frozen=True)
class CosetRep:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError("coset representative must have determinant 1")

    def as_list(self) -> list[list[int]]:
        return [[self.a, self.b], [self.c, self.d]]


def _squarefree(n: int) -> bool:
    return all(e == 1 for e in factorint(n).values())


def coset_reps(N: int) -> list[CosetRep]:
    """``[[1, 0], [delta, 1]]`` for each divisor delta of N, a complete set of
    representatives of Gamma_0(N) \\ Gamma / Gamma_infinity when N or N/2 is
    squarefree."""
    if N < 1:
        raise ValueError("N must be positive")
    if not (_squarefree(N) or (N % 2 == 0 and _squarefree(N // 2))):
        raise UnsupportedLevel(f"neither N={N} nor N/2 is squarefree")
    return [CosetRep(1, 0, d, 1) for d in divisors(N)]


def p_mr_term(gamma: CosetRep, inst: RaduInstance, lam: int) -> Fraction:
    """The quantity minimised over lambda in :func:`p_mr`, already divided by 24."""
    m, k = inst.m, inst.k
    a, c = gamma.a, gamma.c
    total = Fraction(0)
    for d, e in inst.r.items():
        g = gcd(d * a + d * k * lam * c, m * c)
        total += Fraction(e * g * g, d * m)
    return total / 24


def p_mr(gamma: CosetRep, inst: RaduInstance) -> Fraction:
    return min(p_mr_term(gamma, inst, lam) for lam in range(inst.m))


def p_star(gamma: CosetRep, rprime: Mapping[int, int]) -> Fraction:
    c = gamma.c
    return sum((Fraction(e * gcd(d, c) ** 2, d) for d, e in rprime.items()), Fraction(0)) / 24


def gamma0_index(N: int) -> int:
    """``[SL_2(Z) : Gamma_0(N)] = N prod_{q | N} (1 + 1/q)``."""
    if N < 1:
        raise ValueError("N must be positive")
    out = N
    for q in factorint(N):
        out = out // q * (q + 1)
    return out


def nu_bound(
    inst: RaduInstance, rprime: Mapping[int, int], pset: Optional[list[int]] = None
) -> tuple[Fraction, int]:
    """The bound nu and its floor; at most ``floor(nu) + 1`` terms per residue need checking."""
    if pset is None:
        pset = p_set(inst)
    elif not delta_star_check(inst):
        raise NotInDeltaStar(f"{inst} is not admissible")
    m, N = inst.m, inst.N
    sum_rp = sum(rprime.values())
    sum_drp = sum(d * e for d, e in rprime.items())
    nu = (
        Fraction((inst.sum_r + sum_rp) * gamma0_index(N) - sum_drp, 24)
        - Fraction(inst.sum_delta_r, 24 * m)
        - Fraction(min(pset), m)
    )
    return nu, floor(nu)


def _fraction_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


@dataclass
class Certificate:
    instance: RaduInstance
    rprime: dict[int, int]
    P_set: list[int]
    nu: Fraction
    nu_floor: int
    cusp_orders: dict[int, Fraction]
    checked: list[tuple[int, int]] = field(default_factory=list)
    failures: list[tuple[int, int]] = field(default_factory=list)

    @property
    def status(self) -> str:
        expected = len(self.P_set) * (self.nu_floor + 1)
        if not self.failures and len(self.checked) == expected:
            return "proven"
        return "failed"

    def to_dict(self) -> dict:
        inst = self.instance
        return {
            "m": inst.m,
            "M": inst.M,
            "N": inst.N,
            "r": {str(d): e for d, e in inst.r.items()},
            "t": inst.t,
            "k": inst.k,
            "s": inst.s,
            "j": inst.j,
            "r_prime": {str(d): e for d, e in self.rprime.items()},
            "P_set": self.P_set,
            "nu": _fraction_str(self.nu),
            "nu_floor": self.nu_floor,
            "cusp_orders": {str(d): _fraction_str(v) for d, v in self.cusp_orders.items()},
            "checked": [list(x) for x in self.checked],
            "checked_count": len(self.checked),
            "failures": [list(x) for x in self.failures],
            "status": self.status,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True) + "\n"


def verify_instance(
    inst: RaduInstance, rprime: Optional[Mapping[int, int]], parity: Gf2Series
) -> Certificate:
    """Run the finite check and return a certificate.

    ``parity`` must be the parity series of ``prod f_delta^{r_delta}``.
    """
    ds = delta_star_check(inst)
    if not ds:
        raise NotInDeltaStar(f"conditions {ds.failing()} fail for {inst}")
    rprime = {d: e for d, e in (rprime or {}).items() if e}
    for d in rprime:
        if inst.N % d:
            raise ValueError(f"r' index {d} does not divide N={inst.N}")
    orders = {}
    for g in coset_reps(inst.N):
        val = p_mr(g, inst) + p_star(g, rprime)
        orders[g.c] = val
        if val < 0:
            raise HypothesisViolated(f"order bound {val} < 0 at [[1,0],[{g.c},1]]")
    pset = p_set(inst)
    nu, nu_floor = nu_bound(inst, rprime, pset)
    top = inst.m * nu_floor + max(pset)
    if top >= parity.limit:
        raise LimitTooSmall(f"need series limit > {top}, have {parity.limit}")
    cert = Certificate(inst, rprime, pset, nu, nu_floor, orders)
    for tp in pset:
        for n in range(nu_floor + 1):
            cert.checked.append((tp, n))
            if parity[inst.m * n + tp]:
                cert.failures.append((tp, n))
    return cert


def recheck_certificate(doc: dict, parity: Gf2Series) -> bool:
    """Re-run the coefficient checks listed in a serialized certificate.

    Uses nothing from the certificate beyond ``m``, ``nu_floor``, ``P_set``
    and ``checked``; returns True when every listed coefficient vanishes and
    the list is the full grid.
    """
    m, nf, pset = doc["m"], doc["nu_floor"], doc["P_set"]
    grid = {(tp, n) for tp in pset for n in range(nf + 1)}
    listed = {tuple(x) for x in doc["checked"]}
    if grid != listed:
        return False
    return all(parity[m * n + tp] == 0 for tp, n in grid)


PAPER_INSTANCES = {
    "59a": (3481, 3, 177, (-1, 4), 297),
    "59b": (3481, 3, 177, (-1, 4), 533),
    "79a": (6241, 3, 237, (-1, 4), 253),
    "79b": (6241, 3, 237, (-1, 4), 332),
}
