"""Sweep engine: enumeration order, oracles, checkers, determinism."""

from __future__ import annotations

import random

import pytest

from psiclass.dvv import MemoCache, c_value, x_int
from psiclass.exact import Q
from psiclass.harness import (
    check_c4_inequalities,
    check_cross_formulas,
    check_lemma3,
    check_omega11_identity,
    counterexample_suite,
    lemma7_check,
    partition_count,
    partitions,
    partitions_exact_length,
    primitive_vectors,
    sample_vectors,
    sweep_nesting,
    theorem2_deviation_sweep,
    theorem2_family,
    theta_sweep,
)


def test_partition_count_pentagonal():
    known = {0: 1, 1: 1, 2: 2, 3: 3, 4: 5, 5: 7, 10: 42, 18: 385, 50: 204226}
    for n, want in known.items():
        assert partition_count(n) == want
    with pytest.raises(ValueError):
        partition_count(-1)


def test_partitions_against_count():
    for n in range(0, 15):
        assert sum(1 for _ in partitions(n)) == partition_count(n)


def test_partitions_exact_length():
    got = sorted(partitions_exact_length(6, 3))
    assert got == [(2, 2, 2), (3, 2, 1), (4, 1, 1)]
    assert list(partitions_exact_length(2, 3)) == []
    assert list(partitions_exact_length(0, 0)) == [()]


def test_primitive_vectors_count_and_order():
    for g in (2, 3, 4, 5):
        vecs = primitive_vectors(g)
        assert len(vecs) == partition_count(3 * g - 3)
        assert len(set(vecs)) == len(vecs)
        for d in vecs:
            assert all(v >= 2 for v in d)
            assert sum(d) - len(d) == 3 * g - 3
    # Colex order on multiplicity vectors puts the all-2 class first and
    # the one-point class last.
    vecs = primitive_vectors(3)
    assert vecs[0] == (2,) * 6
    assert vecs[-1] == (7,)
    with pytest.raises(ValueError):
        primitive_vectors(1)


def test_sweep_nesting_small():
    reports = sweep_nesting(3)
    assert [r.genus for r in reports] == [2, 3]
    r2 = reports[0]
    assert r2.min_vector == (4,) and r2.min_value == Q(35, 144)
    assert r2.max_vector == (2, 2, 2) and r2.max_value == Q(175, 648)
    assert r2.nesting_ok
    assert r2.count == 3
    r3 = reports[1]
    assert r3.min_value == Q(25025, 93312)
    assert r3.max_value == Q(546875, 1889568)
    assert r3.max_scaled_deviation.precision == 50


def test_sweep_threads_identical():
    serial = sweep_nesting(3, threads=1, cache=MemoCache())
    threaded = sweep_nesting(3, threads=4, cache=MemoCache())
    for a, b in zip(serial, threaded):
        assert a.min_value == b.min_value
        assert a.max_value == b.max_value
        assert a.max_scaled_deviation.value == b.max_scaled_deviation.value


def test_theta_values_and_feasibility():
    assert theta_sweep(3, 1) == Q(35, 144)
    assert theta_sweep(1, 1) == Q(1, 6)  # only d = (1)
    with pytest.raises(ValueError, match="empty feasible set"):
        theta_sweep(4, 1)  # parity
    with pytest.raises(ValueError, match="empty feasible set"):
        theta_sweep(2, 4)  # X < n
    with pytest.raises(ValueError):
        theta_sweep(0, 1)


def test_theta_monotone_in_both_indices():
    for X in range(3, 10):
        for n in range(2, X + 1):
            if (3 * X - n) % 2 or (3 * X - n) // 2 < n:
                continue
            if (3 * (X - 1) - (n - 1)) % 2 == 0 and (3 * (X - 1) - (n - 1)) // 2 >= (
                n - 1
            ) >= 1:
                assert theta_sweep(X, n) >= theta_sweep(X - 1, n - 1), (X, n)


def test_cross_formulas_budgets():
    rep = check_cross_formulas("smoke")
    assert rep.ok
    assert {s.name for s in rep.suites} == {
        "two_point_bdy",
        "two_point_zograf",
        "three_point",
        "four_point",
        "n_point(n=5)",
    }
    assert all(s.count > 0 for s in rep.suites)
    empty = check_cross_formulas("none")
    assert empty.ok and empty.total == 0
    with pytest.raises(ValueError):
        check_cross_formulas("huge")


def test_omega11_identity_examples():
    assert check_omega11_identity((4,))
    assert check_omega11_identity((1,))
    assert check_omega11_identity((2, 3))
    assert check_omega11_identity((0, 0, 3))
    assert check_omega11_identity((0, 2, 4))
    with pytest.raises(ValueError):
        check_omega11_identity((2,))  # not geometric


def test_omega11_identity_sampled():
    for d in sample_vectors(12, seed=2024):
        assert check_omega11_identity(d), d


def test_c4_inequalities():
    for d in ((2, 2, 2), (4,), (1,), (0, 5), (2, 3)):
        assert check_c4_inequalities(d), d


def test_lemma3_weight_bound():
    for d in ((7,), (2, 2, 2), (2, 2, 3, 3), (4, 4), (2, 6), (10,)):
        assert check_lemma3(d), d
    with pytest.raises(ValueError):
        check_lemma3((0, 2, 4))  # zero entry: not primitive
    with pytest.raises(ValueError):
        check_lemma3((2, 2))  # not geometric


def test_counterexample_suite():
    rep = counterexample_suite()
    assert rep.ok
    assert rep.values_ok and rep.inequalities_ok
    kinds = [row for row in rep.rows if len(row) == 4]
    assert len(kinds) == 4


def test_sample_vectors_deterministic():
    a = sample_vectors(50)
    b = sample_vectors(50)
    assert a == b
    assert len(set(a)) == 50
    assert all(x_int(d) is not None and x_int(d) <= 9 for d in a)


def test_theorem2_family_membership():
    fam = list(theorem2_family(2, max_zeros=2))
    assert (4,) in fam
    assert (0, 5) in fam
    assert (0, 0, 6) in fam
    assert (0, 0, 2, 5) in fam
    for d in fam:
        zeros = sum(1 for v in d if v == 0)
        assert zeros <= 2
        assert all(v == 0 or v >= 2 for v in d)


def test_theorem2_deviation_sweep_small():
    dev, arg = theorem2_deviation_sweep(2, 2, digits=30)
    assert dev.precision == 30
    assert dev.value > 0
    assert arg in list(theorem2_family(2))


def test_lemma7_small():
    assert lemma7_check(8)


@pytest.mark.slow
def test_sweep_nesting_genus13():
    """Deep probe: the nesting still holds at genus 13 (17977 classes)."""
    reports = sweep_nesting(13)
    r = reports[-1]
    assert r.genus == 13
    assert r.count == partition_count(36) == 17977
    assert r.nesting_ok
    assert r.min_vector == (37,)
    assert r.max_vector == (2,) * 36
