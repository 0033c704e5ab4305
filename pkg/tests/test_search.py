"""Search harness: enumeration, fair optima, prices, and sweeps."""

from __future__ import annotations

from fractions import Fraction

import pytest

from chorefair import (
    INFINITY,
    Additive,
    Criterion,
    Instance,
    best_fair_allocation,
    enumerate_allocations,
    make_family,
    min_alpha,
    price_of_fairness,
    random_instance,
)
from chorefair.errors import NoFairAllocationError, SizeGuardError
from chorefair.search import random_allocation, reports_to_csv_rows, verify_lemmas


def test_enumeration_counts():
    assert len(list(enumerate_allocations(2, 2))) == 4
    assert len(list(enumerate_allocations(7, 3))) == 3**7
    assert len(list(enumerate_allocations(0, 4))) == 1


def test_enumeration_guard():
    with pytest.raises(SizeGuardError):
        next(enumerate_allocations(30, 5))


def test_enumeration_is_exhaustive_and_distinct():
    seen = {alloc.bundles for alloc in enumerate_allocations(3, 2)}
    assert len(seen) == 8


def test_best_fair_ef1_price_family():
    bundle = make_family("POF_EF1_N2", epsilon=Fraction(1, 100))
    report = best_fair_allocation(bundle.instance, Criterion.EF1, 1)
    assert report.fair_exists
    assert report.best_fair_cost == Fraction(5, 6) + Fraction(1, 100)
    assert report.opt_cost == Fraction(2, 3) + Fraction(2, 100)
    assert min_alpha(bundle.instance, report.witness, Criterion.EF1) == 1


def test_two_pmms_filter_is_vacuous():
    for trial in range(20):
        inst = random_instance(2, 5, "additive", seed=trial)
        report = best_fair_allocation(inst, Criterion.PMMS, 2)
        assert report.fair_exists
        assert report.best_fair_cost == report.opt_cost


def test_huge_alpha_returns_opt(ref_instance):
    report = best_fair_allocation(ref_instance, Criterion.EF, INFINITY)
    assert report.best_fair_cost == report.opt_cost == 9


def test_best_fair_cost_monotone_in_alpha():
    for trial in range(15):
        inst = random_instance(2, 5, "additive", seed=trial + 300)
        previous = None
        for alpha in (Fraction(1), Fraction(5, 4), Fraction(3, 2), Fraction(2), Fraction(4)):
            report = best_fair_allocation(inst, Criterion.EF1, alpha)
            if report.fair_exists and previous is not None:
                assert report.best_fair_cost <= previous
            previous = report.best_fair_cost if report.fair_exists else previous


def test_pmms_allocations_are_efx_allocations():
    from chorefair.criteria import context_for
    from chorefair.search import _scan_masks

    for trial in range(25):
        inst = random_instance(3, 6, "additive", seed=trial + 40)
        ctx = context_for(inst)
        for masks in _scan_masks(inst):
            pmms, _, _ = ctx.min_alpha_masks(masks, Criterion.PMMS)
            if pmms == 1:
                efx, _, _ = ctx.min_alpha_masks(masks, Criterion.EFX)
                assert efx == 1


def test_no_fair_allocation_is_signalled():
    # A single chore for two agents who both hate it admits no envy-free split.
    inst = Instance(n=2, m=1, costs=(Additive((1,)), Additive((1,))))
    with pytest.raises(NoFairAllocationError):
        price_of_fairness(inst, Criterion.EF, 1)


def test_price_of_fairness_reference():
    bundle = make_family("POF_PMMS_N2", epsilon=Fraction(1, 100))
    for crit in (Criterion.PMMS, Criterion.MMS, Criterion.EFX):
        assert price_of_fairness(bundle.instance, crit, 1) == Fraction(1) / (Fraction(1, 2) + Fraction(2, 100))


def test_zero_cost_optimum_price_convention():
    inst = Instance(n=2, m=2, costs=(Additive((0, 1)), Additive((1, 0))))
    # Chore-wise zero assignment exists and is fair, so the price is 1.
    assert price_of_fairness(inst, Criterion.EF1, 1) == 1


def test_random_instance_determinism_and_normalization():
    a = random_instance(2, 5, "additive", seed=7)
    b = random_instance(2, 5, "additive", seed=7)
    assert a == b
    assert a.normalized
    assert random_instance(2, 5, "additive", seed=8) != a


def test_random_submodular_instances_are_well_formed():
    from chorefair import check_monotone, check_submodular

    for seed in range(25):
        inst = random_instance(3, 5, "submodular", seed=seed)
        for fn in inst.costs:
            assert check_monotone(fn, 5)
            assert check_submodular(fn, 5)


def test_random_allocation_determinism():
    assert random_allocation(3, 6, seed=1) == random_allocation(3, 6, seed=1)


def test_random_instances_roundtrip_through_json():
    from chorefair import instance_from_json, instance_to_json

    for seed in range(20):
        setting = "additive" if seed % 2 else "submodular"
        inst = random_instance(3, 6, setting, seed=seed)
        assert instance_from_json(instance_to_json(inst)) == inst


def test_lemma_sweep_small():
    rows = verify_lemmas(count=60, seed=3)
    assert rows and all(row.passed for row in rows)
    csv_rows = reports_to_csv_rows(rows)
    assert set(csv_rows[0]) == {
        "proposition_id",
        "n",
        "alpha",
        "epsilon",
        "expected",
        "observed",
        "status",
    }
