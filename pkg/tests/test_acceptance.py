"""Acceptance criteria, one test per criterion.

Run with ``pytest tests/test_acceptance.py -v``; the terminal summary
prints a PASS/FAIL line for each criterion.
"""

import itertools
import random
import time

import numpy as np
import pytest

from gmmds import gf as gflib
from gmmds.construct import build_row_polynomial, construct_mds
from gmmds.gf import field_new, prime_power, smallest_field_at_least
from gmmds.multiset import ZFamily, check_conjecture, enumerate_outcomes, sweep_instances
from gmmds.pattern import check_mds_condition, fits, reduce_supports
from gmmds.reductions import (
    cde_cut_condition,
    cde_to_pattern,
    sman_code,
    sman_cut_condition,
    sman_to_pattern,
)
from gmmds.special_case import applies, build_star_selection
from gmmds.symdet import evaluate, symbolic_det, variable_degree
from gmmds.verify import CODEWORD_LIMIT, is_mds, is_mds_by_distance

from helpers import random_cde, random_sman, satisfying_patterns, valid_families

THREE_ROWS = ZFamily.of([[5, 6], [1, 4], [3, 4]])
FOUR_ROWS = ZFamily.of([[1, 2, 3], [1, 4, 5], [2, 4, 6], [3, 5, 7]])


@pytest.fixture
def criterion(record_property):
    def _tag(number, label):
        record_property("criterion", str(number))
        record_property("label", label)
    return _tag


def best_time(fn, repeats=30):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def test_three_rows_regression(criterion):
    criterion(1, "three-row family: 12 outcomes, {3,4,4} unique, {1,3,4} repeated, < 1 ms")
    report = enumerate_outcomes(THREE_ROWS)
    assert report.total_outcomes == 12
    assert report.count([3, 4, 4]) == 1
    assert report.count([1, 3, 4]) >= 2
    elapsed = best_time(lambda: enumerate_outcomes(THREE_ROWS))
    print(f"three-row histogram: {elapsed * 1e3:.3f} ms")
    assert elapsed < 1e-3


def test_four_rows_regression(criterion):
    criterion(2, "four-row family: applies, [3,4,4,5,6,7] unique, star output unique, < 10 ms")

    def run():
        report = enumerate_outcomes(FOUR_ROWS)
        star = build_star_selection(FOUR_ROWS)
        return report, star

    assert applies(FOUR_ROWS)
    report, star = run()
    assert report.count([3, 4, 4, 5, 6, 7]) == 1
    assert report.count(star.multiset) == 1
    elapsed = best_time(run)
    print(f"four-row histogram + star: {elapsed * 1e3:.3f} ms")
    assert elapsed < 1e-2


def test_conjecture_sweep(criterion):
    criterion(3, "sweep: k=2,3,4 exhaustive canonical, k=5 with 10^4 samples, no counterexample, < 10 min")
    t0 = time.perf_counter()
    for k in (2, 3, 4):
        report = sweep_instances(k)
        print(f"k={k}: {report.checked} classes, {report.failed} failed")
        assert report.checked > 0 and report.failed == 0
        assert not report.budget_exhausted
    report = sweep_instances(5, sample=10_000, seed=2024)
    print(f"k=5 sampled: {report.checked} families, {report.failed} failed")
    assert report.checked == 10_000 and report.failed == 0
    elapsed = time.perf_counter() - t0
    print(f"sweep wall time {elapsed:.1f} s")
    assert elapsed < 600


def test_end_to_end_construction(criterion):
    criterion(4, "construct 200 random patterns at the minimal field, both oracles agree, fits, < 2 min")
    t0 = time.perf_counter()
    patterns = satisfying_patterns(4, 200, 5, 10)
    by_distance = 0
    for i, pat in enumerate(patterns):
        g = construct_mds(pat, seed=i, fallback=False)
        assert g.field.order == smallest_field_at_least(pat.n + pat.k - 1).order
        assert fits(g, pat)
        assert is_mds(g)
        if g.field.order ** pat.k <= CODEWORD_LIMIT:
            assert is_mds_by_distance(g)
            by_distance += 1
    elapsed = time.perf_counter() - t0
    print(f"200 constructions, {by_distance} also checked by codeword enumeration, {elapsed:.1f} s")
    assert by_distance >= 150
    assert elapsed < 120


def test_hall_reduction_properties(criterion):
    criterion(5, "reduce_supports on 500 patterns: weights n-k+1, subsets, condition kept, idempotent")
    for pat in satisfying_patterns(5, 500, 6, 10):
        out = reduce_supports(pat)
        assert all(w == pat.n - pat.k + 1 for w in out.row_weights())
        assert all(set(a) <= set(b) for a, b in zip(out.supports, pat.supports))
        assert check_mds_condition(out).holds
        assert reduce_supports(out) == out


def test_symbolic_determinant_cross_checks(criterion):
    criterion(6, "det(A) on 100 families: degrees, homogeneity, evaluation at 10 points, unit coefficients")
    fields = [field_new(*pm) for pm in [(5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (2, 4), (13, 1)]]
    rng = random.Random(6)
    for idx, fam in enumerate(valid_families(6, 100, 5)):
        poly = symbolic_det(fam.zeros, fam.n)
        k = fam.k
        assert all(variable_degree(poly, t) <= k - 1 for t in range(1, fam.n + 1))
        assert poly.total_degrees() <= {k * (k - 1) // 2}
        f = fields[idx % len(fields)]
        for _ in range(10):
            point = [rng.randrange(f.order) for _ in range(fam.n)]
            a = [build_row_polynomial(f, z, point) for z in fam.zeros]
            assert evaluate(poly, f, point) == gflib.det(f, a)
        holds, witness = check_conjecture(fam)
        if holds:
            assert abs(poly.coefficient(witness)) == 1
        for m in enumerate_outcomes(fam).unique_witnesses:
            assert abs(poly.coefficient(m)) == 1


def _field_axioms(f, rng):
    q = f.order
    add = np.asarray(f.add_table())
    mul = np.asarray(f.mul_table())
    # pairs, exhaustively
    assert (add == add.T).all() and (mul == mul.T).all()
    assert (add[0] == np.arange(q)).all() and (mul[1] == np.arange(q)).all()
    assert (mul[0] == 0).all()
    assert all((add[a] == 0).sum() == 1 for a in range(q))
    assert all((mul[a] == 1).sum() == 1 for a in range(1, q))
    for a in range(1, q):
        assert mul[a, f.inv(a)] == 1
    # triples: exhaustive for small q, sampled otherwise
    if q <= 16:
        a, b, c = (x.ravel() for x in np.indices((q, q, q)))
    else:
        gen = np.random.default_rng(rng.randrange(2**32))
        a, b, c = gen.integers(0, q, size=(3, 100_000))
    assert (add[add[a, b], c] == add[a, add[b, c]]).all()
    assert (mul[mul[a, b], c] == mul[a, mul[b, c]]).all()
    assert (mul[a, add[b, c]] == add[mul[a, b], mul[a, c]]).all()
    # the multiplicative group is cyclic
    assert any(len({f.pow(g, e) for e in range(q - 1)}) == q - 1 for g in range(1, q))


def test_field_axioms(criterion):
    criterion(7, "field axioms for every prime power q <= 64")
    rng = random.Random(7)
    orders = [q for q in range(2, 65) if prime_power(q)]
    # 18 primes plus 4, 8, 16, 32, 64, 9, 27, 25, 49
    assert len(orders) == 27
    for q in orders:
        _field_axioms(field_new(*prime_power(q)), rng)


def test_reduction_implications(criterion):
    criterion(8, "200 CDE and 200 SMAN instances: compiled patterns pass, rank(G') = r_I, G' fits M'")
    rng = random.Random(8)
    cde = 0
    while cde < 200:
        inst = random_cde(rng)
        if inst.k > inst.n or not cde_cut_condition(inst).holds:
            continue
        assert check_mds_condition(cde_to_pattern(inst)).holds
        cde += 1
    sman = 0
    while sman < 200:
        inst = random_sman(rng)
        if not sman_cut_condition(inst).holds:
            continue
        assert inst.k >= inst.total_rate
        pat, sub = sman_to_pattern(inst)
        assert check_mds_condition(pat).holds
        code = sman_code(inst, seed=sman)
        assert gflib.rank(code.generator.field, code.sub_rows) == inst.total_rate
        assert fits(list(code.sub_rows), sub)
        sman += 1
