"""Minimal-alpha computation, conventions, and the guarantee table."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from chorefair import (
    INFINITY,
    Additive,
    Allocation,
    CappedCardinality,
    Criterion,
    Instance,
    fairness_report,
    implied_guarantee,
    min_alpha,
    random_instance,
    satisfies,
)
from chorefair.errors import ArgumentError, NotInTableError, ValidationError
from chorefair.model import scale_cost
from chorefair.search import random_allocation


def test_reference_allocation_a_is_envy_free(ref_instance, alloc_a):
    assert min_alpha(ref_instance, alloc_a, Criterion.EF) == 1
    for crit in (Criterion.EFX, Criterion.EF1, Criterion.MMS, Criterion.PMMS):
        assert min_alpha(ref_instance, alloc_a, crit) == 1


def test_reference_allocation_b_alphas(ref_instance, alloc_b):
    report = fairness_report(ref_instance, alloc_b)
    assert report.alphas[Criterion.EF] == Fraction(7, 3)
    assert report.alphas[Criterion.EFX] == 2
    assert report.alphas[Criterion.EF1] == 1
    assert report.alphas[Criterion.MMS] == Fraction(7, 5)
    assert report.alphas[Criterion.PMMS] == Fraction(7, 5)
    # the EF maximum is attained by agent 0 against agent 2
    wit = report.witnesses[Criterion.EF]
    assert (wit["agent"], wit["against"]) == (0, 2)


def test_satisfies(ref_instance, alloc_b):
    assert satisfies(ref_instance, alloc_b, Criterion.EF1, 1)
    assert not satisfies(ref_instance, alloc_b, Criterion.EFX, 1)
    assert satisfies(ref_instance, alloc_b, Criterion.EFX, 2)
    assert satisfies(ref_instance, alloc_b, Criterion.PMMS, 2)
    with pytest.raises(ArgumentError):
        satisfies(ref_instance, alloc_b, Criterion.EF, Fraction(1, 2))


def test_all_zero_costs_give_alpha_one():
    inst = Instance(n=2, m=2, costs=(Additive((0, 0)), Additive((0, 0))))
    alloc = Allocation((frozenset({0, 1}), frozenset()))
    for crit in Criterion:
        assert min_alpha(inst, alloc, crit) == 1


def test_positive_against_zero_is_infinite():
    inst = Instance(n=2, m=2, costs=(Additive((1, 1)), Additive((0, 0))))
    alloc = Allocation((frozenset({0, 1}), frozenset()))
    assert min_alpha(inst, alloc, Criterion.EF) == INFINITY
    assert min_alpha(inst, alloc, Criterion.EF1) == INFINITY


def test_ef1_empty_bundle_contributes_one():
    inst = Instance(n=2, m=1, costs=(Additive((1,)), Additive((1,))))
    alloc = Allocation((frozenset(), frozenset({0})))
    assert min_alpha(inst, alloc, Criterion.EF1) == 1
    # the singleton holder can always remove their only chore
    alloc2 = Allocation((frozenset({0}), frozenset()))
    assert min_alpha(inst, alloc2, Criterion.EF1) == 1


def test_efx_ignores_zero_cost_chores():
    inst = Instance(n=2, m=3, costs=(Additive((0, 2, 2)), Additive((1, 1, 1))))
    # Agent 0 holds a zero-cost chore plus one costly one.
    alloc = Allocation((frozenset({0, 1}), frozenset({2})))
    # Removing the costly chore is what EFX quantifies over... the zero-cost
    # chore is excluded, so the worst removal leaves cost 2 against cost 2.
    assert min_alpha(inst, alloc, Criterion.EFX) == 1
    # The strong variant also removes the zero-cost chore: 2 against 2 still.
    assert min_alpha(inst, alloc, Criterion.EFX_STRONG) == 1


def test_efx_strong_is_at_least_efx():
    inst = Instance(n=2, m=2, costs=(Additive((0, 3)), Additive((1, 1))))
    alloc = Allocation((frozenset({0, 1}), frozenset()))
    assert min_alpha(inst, alloc, Criterion.EFX) == 1  # only removal is the 3-chore... left 0
    assert min_alpha(inst, alloc, Criterion.EFX_STRONG) == INFINITY  # removing the free chore leaves 3 vs 0


def test_dimension_mismatch(ref_instance):
    with pytest.raises(ValidationError):
        min_alpha(ref_instance, Allocation((frozenset(range(7)),)), Criterion.EF)


def test_ordering_ef_efx_ef1_over_random_instances():
    for trial in range(120):
        setting = "additive" if trial % 2 else "submodular"
        inst = random_instance(3, 6, setting, seed=trial)
        alloc = random_allocation(3, 6, seed=trial)
        ef = min_alpha(inst, alloc, Criterion.EF)
        efx = min_alpha(inst, alloc, Criterion.EFX)
        efx_strong = min_alpha(inst, alloc, Criterion.EFX_STRONG)
        ef1 = min_alpha(inst, alloc, Criterion.EF1)
        assert ef >= efx_strong >= efx >= ef1


def test_pmms_exact_implies_efx_on_additive_instances():
    checked = 0
    for trial in range(60):
        inst = random_instance(2, 5, "additive", seed=trial)
        alloc = random_allocation(2, 5, seed=trial * 31 + 7)
        if min_alpha(inst, alloc, Criterion.PMMS) == 1:
            checked += 1
            assert min_alpha(inst, alloc, Criterion.EFX) == 1
    assert checked > 0


def test_universal_guarantees_hold():
    for trial in range(60):
        setting = "additive" if trial % 2 else "submodular"
        inst = random_instance(4, 6, setting, seed=trial + 1000)
        alloc = random_allocation(4, 6, seed=trial)
        assert min_alpha(inst, alloc, Criterion.PMMS) <= 2
        assert min_alpha(inst, alloc, Criterion.MMS) <= inst.n


def test_scale_invariance():
    rng = random.Random(5)
    for trial in range(40):
        inst = random_instance(3, 5, "additive", seed=trial)
        alloc = random_allocation(3, 5, seed=trial + 99)
        factor = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        agent = rng.randrange(3)
        scaled_costs = list(inst.costs)
        scaled_costs[agent] = scale_cost(scaled_costs[agent], factor)
        scaled = Instance(n=3, m=5, costs=tuple(scaled_costs))
        for crit in Criterion:
            assert min_alpha(inst, alloc, crit) == min_alpha(scaled, alloc, crit)


def test_relabeling_invariance():
    rng = random.Random(3)
    for trial in range(30):
        inst = random_instance(3, 5, "additive", seed=trial + 500)
        alloc = random_allocation(3, 5, seed=trial + 501)
        agent_perm = list(range(3))
        chore_perm = list(range(5))
        rng.shuffle(agent_perm)
        rng.shuffle(chore_perm)
        permuted_costs = tuple(
            Additive(tuple(inst.costs[agent_perm[i]].values[chore_perm[e]] for e in range(5)))
            for i in range(3)
        )
        inv_chore = {chore_perm[e]: e for e in range(5)}
        permuted_bundles = tuple(
            frozenset(inv_chore[e] for e in alloc.bundles[agent_perm[i]]) for i in range(3)
        )
        permuted = Instance(n=3, m=5, costs=permuted_costs)
        permuted_alloc = Allocation(permuted_bundles)
        for crit in Criterion:
            assert min_alpha(inst, alloc, crit) == min_alpha(permuted, permuted_alloc, crit)


# -- guarantee table ---------------------------------------------------------


def test_guarantee_examples():
    assert implied_guarantee(Criterion.EF1, 1, Criterion.MMS, 4).value == Fraction(7, 4)
    assert implied_guarantee(Criterion.EFX, 1, Criterion.PMMS, 3).value == Fraction(4, 3)
    got = implied_guarantee(Criterion.PMMS, Fraction(3, 2), Criterion.MMS, 5, "submodular")
    assert got.value == Fraction(9, 2)


def test_guarantee_formulas_additive():
    a, n = Fraction(3, 2), 4
    assert implied_guarantee(Criterion.EF, a, Criterion.MMS, n).value == n * a / (n - 1 + a)
    assert implied_guarantee(Criterion.EF, a, Criterion.PMMS, n).value == 2 * a / (a + 1)
    assert implied_guarantee(Criterion.EFX, a, Criterion.EF1, n).value == a
    assert implied_guarantee(Criterion.EF1, a, Criterion.MMS, n).value == (n * a + n - 1) / (n - 1 + a)
    assert implied_guarantee(Criterion.EFX, a, Criterion.MMS, n).value == min(
        2 * n * a / (n - 1 + 2 * a), (n * a + n - 1) / (n - 1 + a)
    )
    assert implied_guarantee(Criterion.EFX, a, Criterion.PMMS, n).value == 4 * a / (2 * a + 1)
    assert implied_guarantee(Criterion.EF1, a, Criterion.PMMS, n).value == (2 * a + 1) / (a + 1)


def test_guarantee_pmms_to_mms_branches():
    assert implied_guarantee(Criterion.PMMS, 1, Criterion.MMS, 3).value == Fraction(4, 3)
    assert implied_guarantee(Criterion.PMMS, 1, Criterion.MMS, 6).value == Fraction(12, 7)
    a = Fraction(5, 4)
    expected = 3 * a / (a + 2 * (1 - a / 2))
    assert implied_guarantee(Criterion.PMMS, a, Criterion.MMS, 3).value == expected
    with pytest.raises(NotInTableError):
        implied_guarantee(Criterion.PMMS, Fraction(3, 2), Criterion.MMS, 3)
    with pytest.raises(NotInTableError):
        implied_guarantee(Criterion.PMMS, 1, Criterion.MMS, 2)


def test_guarantee_unbounded_and_trivial():
    assert implied_guarantee(Criterion.EF1, 1, Criterion.EFX, 3).kind == "unbounded"
    assert implied_guarantee(Criterion.PMMS, Fraction(3, 2), Criterion.EF1, 3).kind == "unbounded"
    assert implied_guarantee(Criterion.PMMS, 1, Criterion.EF1, 3).value == 1
    assert implied_guarantee(Criterion.MMS, 1, Criterion.PMMS, 3).kind == "trivial_only"
    assert implied_guarantee(Criterion.MMS, 1, Criterion.EF1, 3).kind == "unbounded"
    sub = implied_guarantee(Criterion.EFX, 1, Criterion.MMS, 4, "submodular")
    assert sub.kind == "trivial_only" and sub.value == 4
    sub2 = implied_guarantee(Criterion.EF1, 1, Criterion.PMMS, 4, "submodular")
    assert sub2.kind == "trivial_only" and sub2.value == 2
    assert implied_guarantee(Criterion.PMMS, 1, Criterion.EFX, 2, "submodular").kind == "unbounded"


def test_guarantee_validity_errors():
    with pytest.raises(NotInTableError):
        implied_guarantee(Criterion.PMMS, Fraction(5, 2), Criterion.EF1, 3)
    with pytest.raises(NotInTableError):
        implied_guarantee(Criterion.MMS, 1, Criterion.PMMS, 2)
    with pytest.raises(NotInTableError):
        implied_guarantee(Criterion.PMMS, Fraction(5, 2), Criterion.MMS, 4, "submodular")
    with pytest.raises(ArgumentError):
        implied_guarantee(Criterion.EF, Fraction(1, 2), Criterion.MMS, 3)
    with pytest.raises(ArgumentError):
        implied_guarantee(Criterion.EF, 1, Criterion.MMS, 1)


def test_capped_cardinality_pmms_reference():
    fn = CappedCardinality(2)
    inst = Instance(n=2, m=3, costs=(fn, fn))
    alloc = Allocation((frozenset({0, 1, 2}), frozenset()))
    assert min_alpha(inst, alloc, Criterion.PMMS) == 1
    assert min_alpha(inst, alloc, Criterion.EF1) == INFINITY
