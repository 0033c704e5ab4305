"""Constructive allocation procedures.

All allocators return an ``AllocatorOutcome`` carrying the allocation, its
exact social cost, and an ordered trace of the decisions taken. The two
two-agent procedures assert their fairness and price postconditions at
runtime; a violation would be an internal bug, not a user error.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .criteria import Criterion, min_alpha
from .errors import ArgumentError, InternalError, PreconditionError, SizeGuardError
from .mms import mms_value
from .model import Additive, Allocation, Instance, normalize, rational_str

__all__ = [
    "AllocatorOutcome",
    "social_cost",
    "optimal_allocation",
    "round_robin",
    "best_round_robin_order",
    "alg1_two_agent_ef1",
    "pmms32_two_agent",
]

GENERAL_OPT_GUARD = 2_000_000
BEST_ORDER_MAX_AGENTS = 8


@dataclass(frozen=True)
class AllocatorOutcome:
    allocation: Allocation
    social_cost: Fraction
    trace: tuple[dict, ...]


def social_cost(inst: Instance, alloc: Allocation) -> Fraction:
    total = Fraction(0)
    for agent, bundle in enumerate(alloc.bundles):
        total += inst.cost(agent, bundle)
    return total


def _outcome(inst: Instance, alloc: Allocation, trace: list[dict]) -> AllocatorOutcome:
    return AllocatorOutcome(allocation=alloc, social_cost=social_cost(inst, alloc), trace=tuple(trace))


def optimal_allocation(inst: Instance) -> AllocatorOutcome:
    """Minimum social cost allocation.

    Additive costs decompose per chore, so each chore goes to an agent with
    minimal cost for it (ties to the lowest agent index). Other cost
    functions are handled by guarded full enumeration.
    """
    if inst.is_additive():
        trace: list[dict] = []
        assignment = []
        for chore in range(inst.m):
            agent = min(range(inst.n), key=lambda i: (inst.costs[i].values[chore], i))
            assignment.append(agent)
            trace.append(
                {
                    "op": "assign",
                    "chore": chore,
                    "agent": agent,
                    "cost": rational_str(inst.costs[agent].values[chore]),
                }
            )
        alloc = Allocation.from_assignment(assignment, inst.n)
        return _outcome(inst, alloc, trace)

    count = inst.n ** inst.m
    if count > GENERAL_OPT_GUARD:
        raise SizeGuardError(
            f"general optimum needs enumerating {count} allocations (guard {GENERAL_OPT_GUARD})"
        )
    from .criteria import context_for

    ctx = context_for(inst)
    best_cost: Fraction | None = None
    best_assignment: tuple[int, ...] | None = None
    for assignment in itertools.product(range(inst.n), repeat=inst.m):
        masks = [0] * inst.n
        for chore, agent in enumerate(assignment):
            masks[agent] |= 1 << chore
        cost = Fraction(0)
        for agent in range(inst.n):
            cost += ctx.bundle_cost(agent, masks[agent])
        if best_cost is None or cost < best_cost:
            best_cost = cost
            best_assignment = assignment
    alloc = Allocation.from_assignment(best_assignment or (), inst.n)
    trace = [{"op": "enumerate", "candidates": count}, {"op": "select", "assignment": list(best_assignment or ())}]
    return _outcome(inst, alloc, trace)


def _check_order(inst: Instance, order: Sequence[int]) -> tuple[int, ...]:
    order = tuple(order)
    if sorted(order) != list(range(inst.n)):
        raise ArgumentError(f"order must be a permutation of 0..{inst.n - 1}, got {order}")
    return order


def round_robin(inst: Instance, order: Sequence[int] | None = None) -> AllocatorOutcome:
    """Agents pick, in rotation, a cheapest remaining chore.

    Ties break toward the lowest chore index. Additive costs only: that is
    the setting in which the result is guaranteed EF1.
    """
    if not inst.is_additive():
        raise PreconditionError("round robin requires additive cost functions")
    order = _check_order(inst, order if order is not None else range(inst.n))
    remaining = set(range(inst.m))
    bundles: list[set[int]] = [set() for _ in range(inst.n)]
    trace: list[dict] = [{"op": "order", "order": list(order)}]
    turn = 0
    while remaining:
        agent = order[turn % inst.n]
        values = inst.costs[agent].values
        chore = min(remaining, key=lambda e: (values[e], e))
        remaining.remove(chore)
        bundles[agent].add(chore)
        trace.append({"op": "pick", "agent": agent, "chore": chore, "cost": rational_str(values[chore])})
        turn += 1
    alloc = Allocation(tuple(frozenset(b) for b in bundles))
    return _outcome(inst, alloc, trace)


def best_round_robin_order(inst: Instance) -> AllocatorOutcome:
    """Cheapest round-robin outcome over all agent orders.

    For a normalized instance the average social cost over the n! orders is
    at most 1, so the best order is too; this is asserted on the result.
    """
    if not inst.is_additive():
        raise PreconditionError("round robin requires additive cost functions")
    if not inst.normalized:
        raise PreconditionError("best-order search requires a normalized instance")
    if inst.n > BEST_ORDER_MAX_AGENTS:
        raise SizeGuardError(f"order search limited to n <= {BEST_ORDER_MAX_AGENTS}, got {inst.n}")
    best: AllocatorOutcome | None = None
    best_order: tuple[int, ...] | None = None
    for order in itertools.permutations(range(inst.n)):
        outcome = round_robin(inst, order)
        if best is None or outcome.social_cost < best.social_cost:
            best = outcome
            best_order = order
    assert best is not None and best_order is not None
    if best.social_cost > 1:
        raise InternalError(
            f"best round-robin order exceeded social cost 1: {best.social_cost}"
        )
    trace = [{"op": "best_order", "order": list(best_order)}] + list(best.trace[1:])
    return AllocatorOutcome(allocation=best.allocation, social_cost=best.social_cost, trace=tuple(trace))


# ---------------------------------------------------------------------------
# Two-agent EF1 at price <= 5/4
# ---------------------------------------------------------------------------


def _require_two_agent(inst: Instance, normalize_input: bool, what: str) -> Instance:
    if inst.n != 2:
        raise PreconditionError(f"{what} requires exactly 2 agents, got n={inst.n}")
    if not inst.is_additive():
        raise PreconditionError(f"{what} requires additive cost functions")
    if not inst.normalized:
        if not normalize_input:
            raise PreconditionError(
                f"{what} requires a normalized instance (pass normalize_input=True to rescale)"
            )
        inst = normalize(inst)
    return inst


def alg1_two_agent_ef1(inst: Instance, normalize_input: bool = False) -> AllocatorOutcome:
    """Two-agent EF1 allocation with social cost at most 5/4 of the optimum.

    Chores are ordered by the agents' cost ratio; the prefix/suffix split at
    the sign-change index is the optimal allocation, and when that is not
    already EF1 the split point is shifted to the largest index that keeps
    the suffix heavier for agent 2.
    """
    inst = _require_two_agent(inst, normalize_input, "the two-agent EF1 algorithm")
    c = [inst.costs[0].values, inst.costs[1].values]

    cheap_1 = [e for e in range(inst.m) if c[0][e] < c[1][e]]
    cheap_2 = [e for e in range(inst.m) if c[0][e] > c[1][e]]
    swapped = sum(c[0][e] for e in cheap_1) > sum(c[1][e] for e in cheap_2)
    lo, hi = (1, 0) if swapped else (0, 1)
    c1, c2 = c[lo], c[hi]

    # Ascending c1/c2; zero-c1 chores (and all-zero chores) first, zero-c2
    # chores last, ties by chore index.
    def sort_key(e: int):
        if c1[e] == 0:
            return (0, Fraction(0), e)
        if c2[e] == 0:
            return (2, Fraction(0), e)
        return (1, Fraction(c1[e], 1) / c2[e], e)

    ordered = sorted(range(inst.m), key=sort_key)
    trace: list[dict] = [
        {"op": "partition", "cheap_for_agent1": cheap_1, "cheap_for_agent2": cheap_2, "swapped": swapped},
        {"op": "sort", "order": ordered},
    ]

    s = 0
    for pos, e in enumerate(ordered, start=1):
        if c1[e] < c2[e]:
            s = pos
    trace.append({"op": "index", "name": "s", "value": s})
    if s >= inst.m and inst.m > 0:
        raise InternalError("split index reached m on a normalized instance")

    def finish(bundle_lo: set[int], trace: list[dict]) -> AllocatorOutcome:
        bundles = [frozenset(), frozenset()]
        bundles[lo] = frozenset(bundle_lo)
        bundles[hi] = frozenset(range(inst.m)) - bundles[lo]
        alloc = Allocation(tuple(bundles))
        outcome = _outcome(inst, alloc, trace)
        if min_alpha(inst, alloc, Criterion.EF1) != 1:
            raise InternalError("algorithm output is not EF1")
        opt = optimal_allocation(inst).social_cost
        if 4 * outcome.social_cost > 5 * opt:
            raise InternalError(
                f"price bound violated: SC={outcome.social_cost} vs OPT={opt}"
            )
        return outcome

    if s == 0:
        trace.append({"op": "branch", "case": "round_robin"})
        rr = round_robin(inst, (lo, hi))
        outcome = finish(set(rr.allocation.bundles[lo]), trace + list(rr.trace))
        return outcome

    prefix = set(ordered[:s])
    candidate = [frozenset(), frozenset()]
    candidate[lo] = frozenset(prefix)
    candidate[hi] = frozenset(range(inst.m)) - candidate[lo]
    if min_alpha(inst, Allocation(tuple(candidate)), Criterion.EF1) == 1:
        trace.append({"op": "branch", "case": "optimal_split_is_ef1"})
        return finish(prefix, trace)

    # Largest f >= s keeping the suffix R(f+2) strictly heavier for agent 2
    # than the prefix L(f); the proof guarantees it exists here.
    f = None
    suffix_cost = Fraction(0)  # c2 of ordered[f+1:]
    prefix_cost = sum((c2[e] for e in ordered[: inst.m - 1]), Fraction(0))
    for cand in range(inst.m - 2, s - 1, -1):
        suffix_cost += c2[ordered[cand + 1]]
        prefix_cost -= c2[ordered[cand]]
        if suffix_cost > prefix_cost:
            f = cand
            break
    if f is None:
        raise InternalError("shift index is undefined although the optimal split is not EF1")
    trace.append({"op": "index", "name": "f", "value": f})
    trace.append({"op": "branch", "case": "shifted_split"})
    return finish(set(ordered[: f + 1]), trace)


# ---------------------------------------------------------------------------
# Two-agent 3/2-PMMS at price <= 7/6
# ---------------------------------------------------------------------------


def pmms32_two_agent(inst: Instance, normalize_input: bool = False) -> AllocatorOutcome:
    """Two-agent 3/2-PMMS allocation with social cost at most 7/6 of the optimum.

    Starts from an optimal allocation; when one agent exceeds 3/2 of their
    half-split share, chores are moved off that bundle in descending
    cost-ratio order following a three-case repair.
    """
    inst = _require_two_agent(inst, normalize_input, "the two-agent 3/2-PMMS constructor")
    opt_outcome = optimal_allocation(inst)
    opt_cost = opt_outcome.social_cost
    bundles = list(opt_outcome.allocation.bundles)
    shares = [mms_value(inst, i, 2).value for i in range(2)]
    threshold = [Fraction(3, 2) * shares[i] for i in range(2)]
    trace: list[dict] = [
        {"op": "optimal", "assignment": list(opt_outcome.allocation.assignment(inst.m))},
        {"op": "half_split_shares", "values": [rational_str(v) for v in shares]},
    ]

    violators = [i for i in range(2) if inst.cost(i, bundles[i]) > threshold[i]]
    # Normalized costs make a double violation impossible: each violator's
    # bundle would cost more than 3/4, while the optimum costs at most 1.
    if len(violators) > 1:
        raise InternalError("both agents violate 3/2-PMMS in an optimal allocation")

    def finish(alloc: Allocation, trace: list[dict]) -> AllocatorOutcome:
        outcome = _outcome(inst, alloc, trace)
        if min_alpha(inst, alloc, Criterion.PMMS) > Fraction(3, 2):
            raise InternalError("constructor output is not 3/2-PMMS")
        if 6 * outcome.social_cost > 7 * opt_cost:
            raise InternalError(
                f"price bound violated: SC={outcome.social_cost} vs OPT={opt_cost}"
            )
        return outcome

    if not violators:
        trace.append({"op": "case", "label": "optimal_already_fair"})
        return finish(opt_outcome.allocation, trace)

    v = violators[0]
    o = 1 - v
    cv, co = inst.costs[v].values, inst.costs[o].values

    # Descending cv/co over the violator's bundle; chores free for the other
    # agent come first, chores free for the violator last.
    def sort_key(e: int):
        if co[e] == 0 and cv[e] > 0:
            return (-2, Fraction(0), e)
        if cv[e] == 0:
            return (0, Fraction(0), e)
        return (-1, -Fraction(cv[e], 1) / co[e], e)

    ordered = sorted(bundles[v], key=sort_key)
    own_total = inst.cost(v, bundles[v])
    removed = Fraction(0)
    s = None
    for idx, e in enumerate(ordered, start=1):
        removed += cv[e]
        if own_total - removed <= threshold[v]:
            s = idx
            break
    if s is None:
        raise InternalError("prefix index undefined for a 3/2-PMMS violator")
    prefix = ordered[:s]
    prefix_cost = sum((cv[e] for e in prefix), Fraction(0))
    e_s = ordered[s - 1]
    trace.append({"op": "index", "name": "s", "value": s, "violator": v})

    if prefix_cost <= own_total / 2:
        trace.append({"op": "case", "label": "move_prefix"})
        new_v = frozenset(bundles[v]) - frozenset(prefix)
    elif co[e_s] - cv[e_s] <= Fraction(1, 8):
        # In an optimal allocation the violator is weakly cheaper on each of
        # its own chores, so this difference is nonnegative.
        if co[e_s] < cv[e_s]:
            raise InternalError("optimal bundle holds a chore the other agent values less")
        trace.append({"op": "case", "label": "move_boundary_chore"})
        new_v = frozenset(bundles[v]) - {e_s}
    else:
        trace.append({"op": "case", "label": "isolate_boundary_chore"})
        new_v = frozenset({e_s})

    result = [frozenset(), frozenset()]
    result[v] = new_v
    result[o] = frozenset(range(inst.m)) - new_v
    return finish(Allocation(tuple(result)), trace)
