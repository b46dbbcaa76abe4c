import random

import pytest
from sympy import legendre_symbol

from b21parity.errors import ExcludedPrime, LimitTooSmall
from b21parity.gf2series import Gf2Series, c_series
from b21parity.newman_families import (
    c_at,
    classify,
    gamma_parity,
    pivot_index,
    theorem12_families,
    verify_recurrence,
    verify_theorem12,
)

PRIMES = (5, 7, 13, 17, 19, 23)


def test_excluded_11(cser):
    with pytest.raises(ExcludedPrime):
        classify(11, cser)


def test_pivot_for_5(cser):
    assert pivot_index(5) == 11
    cl = classify(5, cser)
    assert cl.pivot_parity == cser[11]


@pytest.mark.parametrize("p", PRIMES)
def test_classification_invariants(p, cser):
    cl = classify(p, cser)
    assert cl.mu in (4, 6)
    assert (cl.case == "i") == (cl.pivot_parity == 1) == (cl.mu == 4)


def test_limit_too_small():
    with pytest.raises(LimitTooSmall):
        classify(23, c_series(100))


class TestGamma:
    def test_unit_case(self):
        assert gamma_parity(7, 0, 1) == 1 and gamma_parity(7, 0, 0) == 0

    def test_divisible_case(self):
        n = next(n for n in range(50) if (24 * n + 11) % 7 == 0)
        assert gamma_parity(7, n, 0) == 1 and gamma_parity(7, n, 1) == 0

    def test_against_legendre(self):
        rng = random.Random(3)
        for _ in range(1000):
            p = rng.choice([5, 7, 13, 17, 19, 23, 29, 31, 37, 41])
            n = rng.randrange(10**6)
            piv = rng.randint(0, 1)
            h = 11 * (p * p - 1) // 24
            leg = legendre_symbol((n - h) % p, p)
            assert gamma_parity(p, n, piv) == (piv + 1 + leg) % 2


def test_c_at_conventions(cser):
    assert c_at(cser, -3) == 0
    assert c_at(cser, 5, 2) == 0
    assert c_at(cser, 0) == 1


@pytest.mark.parametrize("p", PRIMES)
def test_recurrence(p, cser):
    assert verify_recurrence(p, cser, 200).passed


def test_recurrence_n0_is_pivot_identity(cser):
    for p in PRIMES:
        h = pivot_index(p)
        g0 = gamma_parity(p, 0, cser[h])
        assert cser[h] == g0 * cser[0]


def test_recurrence_detects_corruption(cser):
    p = 5
    idx = 25 * 3 + pivot_index(p)
    bits = cser.bits[:5000].copy()
    bits[idx] ^= 1
    assert verify_recurrence(p, Gf2Series.from_bits(bits), 80).failures == [3]


@pytest.mark.parametrize("p", PRIMES)
def test_theorem12_k0(p, cser):
    rep = verify_theorem12(p, cser, k_max=1)
    k0 = [f for f in rep.families if f.family.B < 4 * p ** (6 if rep.classification.case == "ii" else 5)]
    assert k0 and all(f.passed for f in rep.families)
    assert rep.oddness[0].parity == 1 and rep.oddness[0].b21_index == 1
    assert rep.passed


@pytest.mark.parametrize("p", (5, 7))
def test_oddness_k1(p, cser):
    rep = verify_theorem12(p, cser, k_max=1)
    assert rep.oddness[1].status == "pass"


def test_family_shapes():
    fams = theorem12_families(13, "i", 0)
    assert len(fams) == 12
    assert fams[0].A == 4 * 13**4 and fams[0].B == 4 * 13**3 + (11 * 13**4 - 5) // 6
    (f2,) = theorem12_families(5, "ii", 0)
    assert f2.A == 100 and f2.B == (11 * 25 - 5) // 6 and f2.skip_p_divides
