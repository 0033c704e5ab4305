"""Walkthrough: the cost of insisting on fairness.

The price of fairness of an instance is the social cost of the cheapest
fair allocation divided by the unconstrained optimum. We compute it by
exhaustive search on the extremal instances and on random sweeps.
"""

from fractions import Fraction

from chorefair import Criterion, best_fair_allocation, make_family, price_of_fairness, random_instance

eps = Fraction(1, 100)

print("Extremal two-agent instances (additive):")
for family_id in ("POF_EF1_N2", "POF_PMMS32_N2", "POF_PMMS_N2"):
    bundle = make_family(family_id, epsilon=eps)
    for check in bundle.price_checks:
        report = best_fair_allocation(bundle.instance, check.criterion, check.alpha)
        print(
            f"  {family_id} {check.criterion.value}@{check.alpha}: optimum {report.opt_cost}, "
            f"cheapest fair {report.best_fair_cost}, price {report.price}"
        )

print("\nExtremal two-agent instances (submodular):")
for family_id in ("SUB_POF_EFX", "SUB_POF_EF1", "SUB_POF_PMMS", "SUB_POF_PMMS32"):
    bundle = make_family(family_id, epsilon=eps)
    check = bundle.price_checks[0]
    price = price_of_fairness(bundle.instance, check.criterion, check.alpha)
    print(f"  {family_id} {check.criterion.value}@{check.alpha}: price {price}")

print("\nWith three or more agents the price of 3/2-PMMS diverges as epsilon shrinks:")
for denom in (200, 1000, 4000):
    bundle = make_family("POF_N3_UNBOUNDED", n=3, m=6, epsilon=Fraction(1, denom))
    price = price_of_fairness(bundle.instance, Criterion.PMMS, Fraction(3, 2))
    print(f"  epsilon=1/{denom}: price {price} ~= {float(price):.1f}")

print("\nRelaxing to 2-MMS never costs anything (the optimum itself qualifies):")
worst = Fraction(1)
for trial in range(300):
    inst = random_instance(2, 2 + trial % 7, "additive", seed=trial)
    worst = max(worst, price_of_fairness(inst, Criterion.MMS, 2))
print(f"  worst price over 300 random two-agent instances: {worst}")
