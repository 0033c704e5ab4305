"""Walkthrough: fairness criteria on a small chore-division instance.

Three agents share seven chores with additive costs. We evaluate two
allocations and read off, for each criterion, the smallest factor alpha for
which the allocation is alpha-fair (1 means exactly fair).
"""

from chorefair import Additive, Allocation, Criterion, Instance, fairness_report, satisfies

instance = Instance(
    n=3,
    m=7,
    costs=(
        Additive((2, 3, 3, 0, 4, 2, 1)),
        Additive((3, 1, 3, 2, 5, 0, 5)),
        Additive((1, 5, 10, 2, 3, 1, 3)),
    ),
)

print("Cost table (agents x chores):")
for i, fn in enumerate(instance.costs):
    print(f"  agent {i}: {[int(v) for v in fn.values]}")

balanced = Allocation((frozenset({0, 3, 6}), frozenset({1, 2, 5}), frozenset({4})))
lopsided = Allocation((frozenset({0, 4, 6}), frozenset({1, 3, 5}), frozenset({2})))

for name, alloc in (("balanced", balanced), ("lopsided", lopsided)):
    report = fairness_report(instance, alloc)
    print(f"\nAllocation {name}: bundles {[sorted(b) for b in alloc.bundles]}")
    for crit, alpha in report.alphas.items():
        witness = report.witnesses[crit]
        where = ""
        if witness is not None and alpha != 1:
            where = f"  (agent {witness['agent']} vs agent {witness['against']})"
        print(f"  minimal alpha for {crit.value:4s} = {alpha}{where}")

print("\nThe lopsided allocation is envy-free only up to one chore:")
print("  satisfies EF1 at alpha=1?", satisfies(instance, lopsided, Criterion.EF1, 1))
print("  satisfies EFX at alpha=1?", satisfies(instance, lopsided, Criterion.EFX, 1))
print("  satisfies EFX at alpha=2?", satisfies(instance, lopsided, Criterion.EFX, 2))
