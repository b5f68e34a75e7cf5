"""Acceptance criteria 1-9.

Each test prints one ``[PASS]`` or ``[FAIL]`` line, shown even under
captured output.  Run alone with ``pytest tests/test_acceptance.py -v``.
"""

import itertools
import math
import random
import time
from pathlib import Path

import pytest

from naive import NaiveClassifier, all_matrices, contains_brute, saturating_brute
from satmat.classify import census, is_ordinary, random_permutation
from satmat.construct import SaturationCertificate, build_tp, greedy_saturate, is_saturating, middle_lines, pad_middle, verify_saturating
from satmat.core import Matrix01, PermutationMatrix, Transform, apply_transform, contains, flip_creates
from satmat.oracle import (
    enumerate_maximal_avoiding,
    ex_exact,
    is_saturating_d,
    lift_matrix,
    lift_pattern,
    sat_exact,
    sat_exact_d,
)

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
Q = PermutationMatrix.parse("4 1 3 5 2")
R = PermutationMatrix.parse("4 1 3 6 2 5")
I1 = Matrix01.identity(1)
I2 = Matrix01.identity(2)
J2 = Matrix01.full(2)


@pytest.fixture
def report(capsys):
    """Call as ``report(number, ok, detail, seconds, limit)``; asserts ``ok`` and the time limit."""

    def emit(number, ok, detail, seconds, limit=None):
        in_time = limit is None or seconds < limit
        status = "PASS" if ok and in_time else "FAIL"
        budget = f" (limit {limit:g}s)" if limit is not None else ""
        with capsys.disabled():
            print(f"\n[{status}] criterion {number}: {detail} [{seconds:.2f}s{budget}]")
        assert ok, detail
        assert in_time, f"took {seconds:.1f}s, limit {limit}s"

    return emit


def fixture(name):
    return Matrix01.from_text((FIXTURES / name).read_text())


def test_criterion_1_reference_fidelity(report):
    t0 = time.perf_counter()
    tq, tr = build_tp(Q), build_tp(R)
    ok_q, ok_r = tq == fixture("T_Q.txt"), tr == fixture("T_R.txt")
    dt = time.perf_counter() - t0
    report(1, ok_q and ok_r and tq.shape == (31, 31) and tr.shape == (37, 37),
           f"T_Q 31x31 equal={ok_q}, T_R 37x37 equal={ok_r}", dt, 1)


def test_criterion_2_avoidance_and_trigger(report):
    t0 = time.perf_counter()
    details, ok = [], True
    for p, size in ((Q, 61), (R, 73)):
        t, pm = fixture("T_Q.txt" if p == Q else "T_R.txt"), p.to_matrix()
        cells = middle_lines(t)
        avoids = not contains(t, pm)
        triggered = sum(flip_creates(t, pm, c) for c in cells)
        ok &= avoids and len(cells) == size and triggered == size
        details.append(f"avoids={avoids} trigger {triggered}/{len(cells)}")
    report(2, ok, "T_Q " + details[0] + ", T_R " + details[1], time.perf_counter() - t0, 5)


def test_criterion_3_bounded_saturation_witness(report):
    t0 = time.perf_counter()
    qm = Q.to_matrix()
    tq = greedy_saturate(build_tp(Q), qm)
    cert = verify_saturating(tq, qm)
    ok = isinstance(cert, SaturationCertificate) and cert.check()
    counts = [tq.ones_count()]
    for j in (1, 2, 3):
        padded = pad_middle(tq, j)
        ok &= padded.shape == (31 + j, 31 + j) and is_saturating(padded, qm)
        counts.append(padded.ones_count())
    ok &= len(set(counts)) == 1
    report(3, ok, f"T'_Q certified; ones for n=31..34: {counts}", time.perf_counter() - t0, 30)


def test_criterion_4_construction_exhaustive(report):
    t0 = time.perf_counter()
    ordinary, flips, ok = 0, 0, True
    for k in range(2, 6):
        rep = census(k)
        for sigma in itertools.permutations(range(1, k + 1)):
            p = PermutationMatrix(sigma)
            t, pm = build_tp(p), p.to_matrix()
            if is_ordinary(p):
                ordinary += 1
                ok &= not contains(t, pm)
            for c in middle_lines(t):
                flips += 1
                ok &= flip_creates(t, pm, c)
        ok &= rep.ordinary == sum(is_ordinary(PermutationMatrix(s)) for s in itertools.permutations(range(1, k + 1)))
    # k <= 5 has no ordinary permutation, so also check sampled ordinary ones at k = 14..20.
    rng = random.Random(14)
    sampled = []
    while len(sampled) < 4:
        p = random_permutation(rng.randint(14, 20), rng)
        if is_ordinary(p):
            t, pm = build_tp(p), p.to_matrix()
            ok &= not contains(t, pm) and all(flip_creates(t, pm, c) for c in middle_lines(t))
            sampled.append(p.k)
    report(4, ok, f"k<=5: {ordinary} ordinary, {flips} middle flips all create P; "
                  f"sampled ordinary k={sampled}: T_P avoids P", time.perf_counter() - t0, 300)


def test_criterion_5_identity_sat_equals_ex(report):
    t0 = time.perf_counter()
    values = {n: (sat_exact(n, I2).value, ex_exact(n, I2).value) for n in (2, 3, 4)}
    ok = all(s == e for s, e in values.values())
    grids = list(all_matrices(2))
    brute_sat = min(sum(map(sum, g)) for g in grids if saturating_brute(g, I2.to_rows()))
    brute_ex = max(sum(map(sum, g)) for g in grids if not contains_brute(g, I2.to_rows()))
    ok &= len(grids) == 16 and (brute_sat, brute_ex) == values[2]
    report(5, ok, f"(sat, ex) by n: {values}; n=2 brute force over 16 matrices gives "
                  f"({brute_sat}, {brute_ex})", time.perf_counter() - t0)


def test_criterion_6_dichotomy_probe(report):
    t0 = time.perf_counter()
    values = [sat_exact(n, J2).value for n in (2, 3, 4, 5)]
    increasing = all(a < b for a, b in zip(values, values[1:]))
    qm = Q.to_matrix()
    tq = greedy_saturate(build_tp(Q), qm)
    const = {tq.ones_count(), pad_middle(tq, 3).ones_count()}
    report(6, increasing and len(const) == 1,
           f"sat(n, J2) n=2..5 = {values}; sat(n, Q) <= {tq.ones_count()} for n=31 and n=34",
           time.perf_counter() - t0)


def test_criterion_7_census_sanity(report):
    t0 = time.perf_counter()
    reports = {k: census(k) for k in range(1, 8)}
    ok = all(r.ordinary + r.non_ordinary == r.total == math.factorial(k) for k, r in reports.items())
    ok &= reports[1].ordinary == 1 and reports[2].ordinary == 0
    fractions = [reports[k].fraction for k in range(4, 8)]
    ok &= all(a <= b for a, b in zip(fractions, fractions[1:]))
    for k in range(1, 6):
        nc = NaiveClassifier(k)
        ok &= reports[k].ordinary == len(nc.ordinary)
        ok &= reports[k].class_counts == {c: len(nc.reduces[c]) for c in (1, 2, 3, 4)}
    report(7, ok, f"ordinary counts k=1..7: {[reports[k].ordinary for k in range(1, 8)]}; "
                  f"fractions k=4..7: {fractions}; naive agrees k<=5", time.perf_counter() - t0, 300)


def test_criterion_8_lift_lemma(report):
    t0 = time.perf_counter()
    base = sat_exact(2, I2).value
    value, _ = sat_exact_d(2, lift_pattern(I2, 3))
    ok = value == 2 * base
    parts = [f"sat(2, (I2)_3, 3)={value} vs 2*{base} over 256 tensors"]
    for n, d in ((3, 3), (2, 4)):
        w = sat_exact(n, I2).witness
        lifted = lift_matrix(w, d, n)
        good = lifted.ones_count() == n ** (d - 2) * w.ones_count() and is_saturating_d(lifted, lift_pattern(I2, d))
        ok &= good
        parts.append(f"(n={n}, d={d}) lift has {lifted.ones_count()} ones, saturating={good}")
    report(8, ok, "; ".join(parts), time.perf_counter() - t0, 60)


def test_criterion_9_property_suites(report):
    t0 = time.perf_counter()
    rng = random.Random(9)

    def rand(r, c, dens):
        return Matrix01.from_rows([[int(rng.random() < dens) for _ in range(c)] for _ in range(r)])

    equivariant = 0
    for _ in range(500):
        host = rand(rng.randint(1, 7), rng.randint(1, 7), rng.random())
        pattern = rand(rng.randint(1, 3), rng.randint(1, 3), rng.random())
        base = contains(host, pattern)
        equivariant += all(contains(apply_transform(t, host), apply_transform(t, pattern)) == base for t in Transform)

    agree = True
    for n in (1, 2, 3):
        for pattern in (I1, I2, J2):
            listed = set(enumerate_maximal_avoiding(n, pattern))
            verified = {m for m in map(Matrix01.from_rows, all_matrices(n)) if is_saturating(m, pattern)}
            agree &= listed == verified

    idempotent = 0
    for _ in range(50):
        n = rng.randint(2, 6)
        pattern = rand(2, 2, 0.7)
        if not pattern.ones():
            pattern = J2
        g = greedy_saturate(Matrix01.zeros(n), pattern)
        idempotent += greedy_saturate(g, pattern) == g
    ok = equivariant == 500 and agree and idempotent == 50
    report(9, ok, f"equivariance {equivariant}/500; enumeration agrees with verifier: {agree}; "
                  f"greedy idempotent {idempotent}/50", time.perf_counter() - t0, 60)
