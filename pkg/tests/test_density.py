import csv
import io

import pytest
from sympy import primepi

from b21parity.density import q_density_report, sieve
from b21parity.errors import InputTooLarge, PreconditionViolated


def test_sieve_small():
    assert sieve(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert sieve(2) == [] and sieve(3) == [2]


@pytest.mark.parametrize("X", [100, 1000, 12345, 10**6])
def test_sieve_count(X):
    assert len(sieve(X)) == primepi(X - 1)


def test_sieve_guard():
    with pytest.raises(InputTooLarge):
        sieve(10**8 + 1)


def test_q_prefix():
    rep = q_density_report(250)
    assert rep.q_primes() == [29, 59, 79, 103, 223, 227, 241]
    assert not rep.qp_mismatches and not rep.residue_violations


def test_small_x():
    with pytest.raises(PreconditionViolated):
        q_density_report(99)


def test_report_consistency():
    rep = q_density_report(20_000)
    assert sum(rep.per_class_counts.values()) == rep.q_count
    assert rep.prime_count == primepi(19_999)
    assert all(r.p % 24 in (1, 5, 7, 11) for r in rep.rows if r.in_q)
    assert not rep.qp_mismatches
    assert rep.q_fraction == sum(rep.class_fractions.values())


def test_workers_agree():
    a = q_density_report(5000)
    b = q_density_report(5000, workers=2)
    assert a.as_dict() == b.as_dict()


def test_csv():
    rows = list(csv.DictReader(io.StringIO(q_density_report(250).to_csv())))
    assert list(rows[0]) == ["p", "residue_mod_24", "in_Q", "witness_j"]
    r29 = next(r for r in rows if r["p"] == "29")
    assert r29["in_Q"] == "1" and r29["witness_j"] in ("1", "4", "8")
    assert next(r for r in rows if r["p"] == "5")["witness_j"] == ""
