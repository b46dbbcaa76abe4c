"""Acceptance criteria, one test each.

Every test prints a single ``[ACn] PASS|FAIL ...`` line (visible with
``pytest -s``) before asserting, so a run doubles as a readable report.
"""
import time
from fractions import Fraction

import pytest
from sympy import divisors, jacobi_symbol

from b21parity.congruence_families import (
    conjecture_check,
    keith_zanello_family,
    theorem11_families,
    theorem11_family,
    verify_family,
)
from b21parity.density import q_density_report, sieve
from b21parity.gf2series import bt_parity, c_series, eta_quotient_parity
from b21parity.newman_families import verify_recurrence, verify_theorem12
from b21parity.partitions_exact import brute_force_bt, bt_table
from b21parity.quadforms import (
    FORM_8_3,
    M1,
    M2,
    N1,
    a_of_k,
    brute_rep96,
    lemma25_cardinalities,
    q_membership,
    rep96_closed,
    solutions_diag,
)
from b21parity.radu import PAPER_INSTANCES, RaduInstance, delta_star_check, nu_bound, p_set, verify_instance


def report(tag, ok, detail):
    print(f"[{tag}] {'PASS' if ok else 'FAIL'} {detail}")
    assert ok, detail


def test_ac01_q_prefix():
    t0 = time.perf_counter()
    q = [p for p in sieve(250) if p > 2 and q_membership(p) is not None]
    dt = time.perf_counter() - t0
    report("AC1", q == [29, 59, 79, 103, 223, 227, 241] and dt < 1, f"Q<250={q} in {dt:.3f}s")


def test_ac02_theorem11_at_scale():
    t0 = time.perf_counter()
    par = bt_parity(21, 2_000_000)
    bad, checked = [], 0
    for p in (29, 59, 79, 103):
        for f in theorem11_families(p):
            r = verify_family(f, par)
            checked += r.n_checked
            bad += [(p, f.param, v) for v in r.violations]
    dt = time.perf_counter() - t0
    report("AC2", not bad and dt < 300, f"{checked} terms, {len(bad)} violations, {dt:.1f}s")


def test_ac03_negative_control():
    par = bt_parity(21, 4 * 385 + 2)
    r = verify_family(theorem11_family(29, 11, allow_excluded=True), par)
    first = r.violations[0] if r.violations else None
    ok = first == (0, 4 * 385 + 1) and a_of_k(385) == 3
    report("AC3", ok, f"first violation {first}, a(385)={a_of_k(385)}")


def test_ac04_keith_zanello():
    par = bt_parity(21, 1_000_000)
    bad = []
    for k in range(1, 13):
        bad += verify_family(keith_zanello_family(13, k), par).violations
    report("AC4", not bad, f"p=13, k=1..12: {len(bad)} violations")


def test_ac05_radu():
    t0 = time.perf_counter()
    floors, statuses, admissible = [], [], []
    for label in ("59a", "59b", "79a", "79b"):
        inst = RaduInstance.from_vector(*PAPER_INSTANCES[label])
        admissible.append(delta_star_check(inst).passed)
        pset = p_set(inst)
        _, nf = nu_bound(inst, {}, pset)
        par = eta_quotient_parity(inst.r, inst.m * nf + max(pset) + 1)
        floors.append(nf)
        statuses.append(verify_instance(inst, {}, par).status)
    first = p_set(RaduInstance.from_vector(*PAPER_INSTANCES["59a"]))
    expected = [2, 61, 120, 297, 356, 415, 474, 592, 651, 710, 887, 1064, 1182, 1300, 1359,
                1418, 1536, 1713, 1949, 2067, 2185, 2244, 2362, 2421, 2657, 2952, 3011, 3365, 3424]
    dt = time.perf_counter() - t0
    ok = (all(admissible) and first == expected and floors == [29, 29, 39, 39]
          and statuses == ["proven"] * 4 and dt < 120)
    report("AC5", ok, f"floors={floors} status={statuses} {dt:.1f}s")


def test_ac06_counting_identities():
    bad = []
    for u in range(11, 10_000, 24):
        if N1(u) != brute_rep96(u):
            bad.append(("N1", u))
        if M1(u) != 2 * sum(jacobi_symbol(-6 % d, d) for d in divisors(u)):
            bad.append(("M1", u))
    for u in range(1, 10_000):
        if u % 2 and u % 3 and brute_rep96(u) != rep96_closed(u):
            bad.append(("rep96", u))
    report("AC6", not bad, f"{len(bad)} mismatches {bad[:5]}")


def test_ac07_lattice_series_bridge():
    K = 10_000
    par = bt_parity(21, 4 * K + 2)
    bad = []
    for k in range(K + 1):
        u = 24 * k + 11
        a = a_of_k(k)
        diff = M1(u) - M2(u)
        if diff % 4 or diff // 4 != a or a % 2 != par[4 * k + 1]:
            bad.append(k)
    report("AC7", not bad, f"k<=10^4: {len(bad)} mismatches {bad[:5]}")


def test_ac08_two_to_one():
    bad, n = [], 0
    for p in (29, 59, 79, 103):
        for m in range(1, 200):
            if m % p == 0 or (p * m) % 24 != 11:
                continue
            r = lemma25_cardinalities(p, m)
            n += 1
            if not (r.identity_holds and r.corollary_holds):
                bad.append((p, m, r.as_tuple()))
    report("AC8", not bad and n > 0, f"{n} (p, m) pairs, {len(bad)} failures")


def test_ac09_newman():
    cs = c_series(500_000)
    bad = []
    for p in (5, 7, 13, 17, 19, 23):
        if not verify_recurrence(p, cs, 200).passed:
            bad.append((p, "recurrence"))
        rep = verify_theorem12(p, cs, k_max=1)
        if not all(f.passed for f in rep.families):
            bad.append((p, "family"))
        odd = {o.k: o.status for o in rep.oddness}
        if odd[0] != "pass" or (p in (5, 7) and odd[1] != "pass"):
            bad.append((p, "oddness", odd))
    report("AC9", not bad, f"{len(bad)} failures {bad}")


def test_ac10_exact_counts():
    bad = []
    for t in range(2, 22):
        tab = bt_table(t, 2000)
        for n in range(36):
            if tab[n] != brute_force_bt(n, t):
                bad.append((t, n))
        if tab.parity().word != bt_parity(t, 2000).word:
            bad.append((t, "parity"))
    report("AC10", not bad, f"{len(bad)} mismatches {bad[:5]}")


def test_ac11_density():
    t0 = time.perf_counter()
    rep = q_density_report(1_000_000)
    dt = time.perf_counter() - t0
    frac = rep.q_fraction
    classes = rep.class_fractions
    ok = (Fraction(160, 1000) <= frac <= Fraction(173, 1000)
          and all(abs(v - Fraction(1, 24)) <= Fraction(5, 1000) for v in classes.values())
          and dt < 600)
    shown = {k: round(float(v), 4) for k, v in classes.items()}
    report("AC11", ok, f"Q-fraction {float(frac):.4f}, classes {shown}, {dt:.1f}s")


def test_ac12_conjecture_scan():
    qs = [p for p in sieve(500) if p > 2 and q_membership(p) is not None]
    cs = c_series(max((11 * p * p - 11) // 24 for p in qs) + 1)
    counterexamples = []
    for p in qs:
        r = conjecture_check(p, cs)
        if r.counterexample:
            counterexamples.append(r.as_dict())
    if counterexamples:
        print(f"[AC12] COUNTEREXAMPLE(S): {counterexamples}")
    sols = set(solutions_diag(FORM_8_3, 11 * 29 * 29).solutions)
    want = {(sx * x, sy * y) for x, y in ((16, 49), (29, 29), (34, 1)) for sx in (1, -1) for sy in (1, -1)}
    report("AC12", not counterexamples and sols == want, f"{len(qs)} primes in Q below 500 scanned")
