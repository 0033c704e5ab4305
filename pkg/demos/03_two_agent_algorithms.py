"""Walkthrough: constructive allocation procedures and their guarantees.

Round robin always yields an allocation that is envy-free up to one chore
(EF1) for additive costs. For two agents there are sharper procedures: an
EF1 allocation within 5/4 of the optimal social cost, and a 3/2-PMMS
allocation within 7/6 of it. Both are exercised here on the instances that
make those price factors tight.
"""

from fractions import Fraction

from chorefair import (
    Criterion,
    alg1_two_agent_ef1,
    best_round_robin_order,
    make_family,
    min_alpha,
    optimal_allocation,
    pmms32_two_agent,
    random_instance,
    round_robin,
)

inst = random_instance(3, 9, "additive", seed=12)
rr = round_robin(inst)
print("Round robin on a random normalized 3-agent instance:")
print(f"  social cost {rr.social_cost}, EF1 factor {min_alpha(inst, rr.allocation, Criterion.EF1)}")
best = best_round_robin_order(inst)
print(f"  cheapest picking order {best.trace[0]['order']} gives social cost {best.social_cost} (always <= 1)")

print("\nTwo-agent EF1 at price <= 5/4, on the instance where 5/4 is approached:")
fam = make_family("POF_EF1_N2", epsilon=Fraction(1, 100))
opt = optimal_allocation(fam.instance)
out = alg1_two_agent_ef1(fam.instance)
print(f"  optimum {opt.social_cost}, algorithm {out.social_cost}, ratio {out.social_cost / opt.social_cost}")
for step in out.trace:
    if step["op"] in ("index", "branch"):
        print(f"  trace: {step}")

print("\nTwo-agent 3/2-PMMS at price <= 7/6, on the instance where 7/6 is approached:")
fam = make_family("POF_PMMS32_N2", epsilon=Fraction(1, 100))
opt = optimal_allocation(fam.instance)
out = pmms32_two_agent(fam.instance)
print(f"  optimum {opt.social_cost}, constructor {out.social_cost}, ratio {out.social_cost / opt.social_cost}")
print(f"  PMMS factor of the output: {min_alpha(fam.instance, out.allocation, Criterion.PMMS)}")
for step in out.trace:
    if step["op"] in ("case", "index"):
        print(f"  trace: {step}")
