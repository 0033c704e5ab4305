"""Exact maximin-share computation.

Three routes, all exact:

* ``mms_share``       -- enumeration of set partitions as restricted-growth
                         strings; works for any cost oracle, guarded sizes.
* ``mms_share_additive_fast`` -- branch-and-bound over integer subset sums
                         for additive costs; handles much larger sets.
* ``mms_value``       -- dispatcher used by the criteria layer; picks an
                         exact closed form or reduction per cost variant and
                         falls back to enumeration for table costs.

The dispatcher and the fast path are cross-checked against the enumeration
route in the test suite on every variant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ArgumentError, BoundsError, SizeGuardError, UnsupportedVariantError
from .model import (
    Additive,
    CappedAdditive,
    CappedCardinality,
    CostFunction,
    Instance,
    RowCoverage,
    TableCost,
    mask_evaluator,
    mask_of,
    set_of,
)

__all__ = ["MmsResult", "mms_share", "mms_share_additive_fast", "pairwise_mms", "mms_value"]

ENUM_MAX_CHORES = 14
ENUM_MAX_BLOCKS = 6
PAIRWISE_MAX_CHORES = 20
ADDITIVE_MAX_CHORES = 64
ADDITIVE_MAX_BLOCKS = 8


@dataclass(frozen=True)
class MmsResult:
    """Optimal min-max value together with one witnessing k-partition."""

    value: Fraction
    witness: tuple[frozenset[int], ...]


def _resolve_chores(inst: Instance, chores: Iterable[int] | None) -> tuple[int, ...]:
    if chores is None:
        return tuple(range(inst.m))
    elems = tuple(sorted(set(chores)))
    if elems and (elems[0] < 0 or elems[-1] >= inst.m):
        raise BoundsError(f"chore index out of range for m={inst.m}")
    return elems


def _check_k(k: int) -> None:
    if not isinstance(k, int) or k < 1:
        raise ArgumentError(f"partition size k must be an integer >= 1, got {k!r}")


def _pad(blocks: Sequence[frozenset[int]], k: int) -> tuple[frozenset[int], ...]:
    padded = list(blocks) + [frozenset()] * (k - len(blocks))
    return tuple(padded)


# ---------------------------------------------------------------------------
# Enumeration over restricted-growth strings
# ---------------------------------------------------------------------------


def mms_share(inst: Instance, agent: int, k: int, chores: Iterable[int] | None = None) -> MmsResult:
    """Exact MMS over all partitions of ``chores`` into at most k blocks.

    Enumerates restricted-growth strings, so each set partition is visited
    once; ties break toward the lexicographically smallest string. Empty
    blocks never change the optimum for monotone costs, which makes k larger
    than the set size harmless.
    """
    inst.check_agent(agent)
    _check_k(k)
    elems = _resolve_chores(inst, chores)
    if len(elems) > ENUM_MAX_CHORES or k > ENUM_MAX_BLOCKS:
        raise SizeGuardError(
            f"partition enumeration limited to {ENUM_MAX_CHORES} chores and "
            f"{ENUM_MAX_BLOCKS} blocks, got {len(elems)} chores, k={k}"
        )
    fn = inst.costs[agent]
    value, blocks = _enumerate_partitions(fn, inst.m, elems, k)
    return MmsResult(value=value, witness=_pad(blocks, k))


def _enumerate_partitions(
    fn: CostFunction, m: int, elems: tuple[int, ...], k: int
) -> tuple[Fraction, list[frozenset[int]]]:
    ev = mask_evaluator(fn, m)
    memo: dict[int, Fraction] = {0: Fraction(0)}

    def block_cost(mask: int) -> Fraction:
        c = memo.get(mask)
        if c is None:
            c = ev(mask)
            memo[mask] = c
        return c

    prune = fn.monotone_by_construction
    t = len(elems)
    best_val: Fraction | None = None
    best_blocks: list[int] = []
    blocks = [0] * k

    def dfs(idx: int, used: int) -> None:
        nonlocal best_val, best_blocks
        if idx == t:
            val = Fraction(0)
            for b in range(used):
                c = block_cost(blocks[b])
                if c > val:
                    val = c
            if best_val is None or val < best_val:
                best_val = val
                best_blocks = blocks[:used]
            return
        bit = 1 << elems[idx]
        for b in range(min(used + 1, k)):
            old = blocks[b]
            new = old | bit
            # For monotone costs a block at or above the incumbent can only
            # grow, so the whole branch is dominated.
            if prune and best_val is not None and block_cost(new) >= best_val:
                continue
            blocks[b] = new
            dfs(idx + 1, used + 1 if b == used else used)
            blocks[b] = old

    dfs(0, 0)
    if best_val is None:
        return Fraction(0), []
    return best_val, [set_of(mask) for mask in best_blocks]


# ---------------------------------------------------------------------------
# Additive branch-and-bound
# ---------------------------------------------------------------------------


def _waterfill(loads: Sequence[int], v: int, r: int) -> tuple[int, list[int]]:
    """Optimally place r identical items of size v onto fixed loads.

    Minimizes the max load; exact because the optimal value must equal either
    max(loads) or some load plus a multiple of v.
    """
    k = len(loads)
    base = max(loads)
    if r == 0 or v == 0:
        counts = [0] * k
        counts[0] = r
        return base, counts
    candidates = {base}
    for load in loads:
        t0 = max(1, -((load - base) // v))
        for t in range(t0, r + 1):
            candidates.add(load + t * v)
    best = None
    for cand in sorted(candidates):
        if sum((cand - load) // v for load in loads) >= r:
            best = cand
            break
    assert best is not None
    counts = [0] * k
    left = r
    for j, load in enumerate(loads):
        take = min((best - load) // v, left)
        counts[j] = take
        left -= take
        if left == 0:
            break
    return best, counts


def _lpt(items: Sequence[int], k: int) -> tuple[int, list[int]]:
    loads = [0] * k
    assign = [0] * len(items)
    for i, v in enumerate(items):
        j = min(range(k), key=lambda b: loads[b])
        loads[j] += v
        assign[i] = j
    return (max(loads) if items else 0), assign


def _min_max_partition(items: Sequence[int], k: int) -> tuple[int, tuple[int, ...]]:
    """Exact min-max partition of descending nonnegative ints into k blocks."""
    t = len(items)
    if t == 0:
        return 0, ()
    total = sum(items)
    suffix = [0] * (t + 1)
    for i in range(t - 1, -1, -1):
        suffix[i] = suffix[i + 1] + items[i]
    best_val, best_assign = _lpt(items, k)
    global_lb = max(items[0], -(-total // k))
    if best_val == global_lb:
        return best_val, tuple(best_assign)
    loads = [0] * k
    assign = [0] * t
    seen: set[tuple[int, tuple[int, ...]]] = set()

    def dfs(i: int) -> None:
        nonlocal best_val, best_assign
        if i == t:
            val = max(loads)
            if val < best_val:
                best_val = val
                best_assign = assign.copy()
            return
        if items[i] == items[-1]:
            # All remaining items are equal: close the node exactly.
            val, counts = _waterfill(loads, items[i], t - i)
            if val < best_val:
                pos = i
                for j in range(k):
                    for _ in range(counts[j]):
                        assign[pos] = j
                        pos += 1
                best_val = val
                best_assign = assign.copy()
            return
        lb = max(max(loads), global_lb, min(loads) + items[i])
        if lb >= best_val:
            return
        state = (i, tuple(sorted(loads)))
        if state in seen:
            return
        seen.add(state)
        tried: set[int] = set()
        for j in range(k):
            old = loads[j]
            if old in tried:
                continue
            tried.add(old)
            new = old + items[i]
            if new >= best_val:
                continue
            loads[j] = new
            assign[i] = j
            dfs(i + 1)
            loads[j] = old

    dfs(0)
    return best_val, tuple(best_assign)


def _additive_min_max(
    values: Sequence[Fraction], elems: Sequence[int], k: int
) -> tuple[Fraction, list[frozenset[int]]]:
    den = 1
    for e in elems:
        den = math.lcm(den, values[e].denominator)
    weighted = sorted(
        ((int(values[e] * den), e) for e in elems), key=lambda p: (-p[0], p[1])
    )
    items = [w for w, _ in weighted]
    best, assign = _min_max_partition(items, k)
    blocks: list[set[int]] = [set() for _ in range(k)]
    for (_, chore), b in zip(weighted, assign):
        blocks[b].add(chore)
    return Fraction(best, den), [frozenset(b) for b in blocks]


def mms_share_additive_fast(
    inst: Instance, agent: int, k: int, chores: Iterable[int] | None = None
) -> MmsResult:
    """Branch-and-bound MMS for additive costs; equals ``mms_share`` exactly."""
    inst.check_agent(agent)
    _check_k(k)
    fn = inst.costs[agent]
    if not isinstance(fn, Additive):
        raise UnsupportedVariantError(
            f"fast path requires an additive cost function, agent {agent} has "
            f"{type(fn).__name__}"
        )
    elems = _resolve_chores(inst, chores)
    if len(elems) > ADDITIVE_MAX_CHORES or k > ADDITIVE_MAX_BLOCKS:
        raise SizeGuardError(
            f"additive search limited to {ADDITIVE_MAX_CHORES} chores and "
            f"{ADDITIVE_MAX_BLOCKS} blocks, got {len(elems)} chores, k={k}"
        )
    value, blocks = _additive_min_max(fn.values, elems, k)
    return MmsResult(value=value, witness=_pad(blocks, k))


# ---------------------------------------------------------------------------
# Dedicated 2-partition enumeration
# ---------------------------------------------------------------------------


def _subset_table(fn: CostFunction, m: int, elems: Sequence[int]) -> tuple[list[int], int]:
    """Integer cost table indexed by local submask over ``elems``."""
    t = len(elems)
    size = 1 << t
    if isinstance(fn, (Additive, CappedAdditive)):
        vals = [fn.values[e] for e in elems]
        caps: list[Fraction] = [fn.cap] if isinstance(fn, CappedAdditive) else []
        den = 1
        for v in list(vals) + caps:
            den = math.lcm(den, v.denominator)
        nums = [int(v * den) for v in vals]
        table = [0] * size
        for s in range(1, size):
            low = s & -s
            table[s] = table[s ^ low] + nums[low.bit_length() - 1]
        if caps:
            cap_num = int(caps[0] * den)
            table = [min(x, cap_num) for x in table]
        return table, den
    if isinstance(fn, CappedCardinality):
        return [min(s.bit_count(), fn.cap) for s in range(size)], 1
    if isinstance(fn, RowCoverage):
        den = 1
        for w in fn.weights:
            den = math.lcm(den, w.denominator)
        local_index = {e: i for i, e in enumerate(elems)}
        groups = []
        for row, w in zip(fn.rows, fn.weights):
            gmask = 0
            for e in row:
                if e in local_index:
                    gmask |= 1 << local_index[e]
            if gmask:
                groups.append((gmask, int(w * den)))
        table = [0] * size
        for s in range(size):
            total = 0
            for gmask, w in groups:
                if s & gmask:
                    total += w
            table[s] = total
        return table, den
    if isinstance(fn, TableCost):
        den = 1
        for v in fn.values:
            den = math.lcm(den, v.denominator)
        gmask = [0] * size
        table = [0] * size
        for s in range(1, size):
            low = s & -s
            gmask[s] = gmask[s ^ low] | (1 << elems[low.bit_length() - 1])
            table[s] = int(fn.values[gmask[s]] * den)
        return table, den
    raise UnsupportedVariantError(f"unknown cost-function variant {type(fn).__name__}")


def _two_partition_scan(
    fn: CostFunction, m: int, elems: tuple[int, ...]
) -> tuple[Fraction, list[frozenset[int]]]:
    t = len(elems)
    if t == 0:
        return Fraction(0), [frozenset(), frozenset()]
    table, den = _subset_table(fn, m, elems)
    full = (1 << t) - 1
    best = None
    best_mask = 1
    # Element 0 pinned to the first side: each unordered split visited once.
    for x in range(1 << (t - 1)):
        s = (x << 1) | 1
        a, b = table[s], table[full ^ s]
        val = a if a > b else b
        if best is None or val < best:
            best = val
            best_mask = s
    side_a = frozenset(elems[i] for i in range(t) if best_mask >> i & 1)
    side_b = frozenset(elems) - side_a
    return Fraction(best, den), [side_a, side_b]


def pairwise_mms(inst: Instance, agent: int, a: Iterable[int], b: Iterable[int]) -> MmsResult:
    """MMS with k=2 over the union of two disjoint bundles.

    Scans all 2^(t-1) two-way splits of the union directly.
    """
    inst.check_agent(agent)
    set_a, set_b = frozenset(a), frozenset(b)
    if set_a & set_b:
        raise ArgumentError(f"bundles overlap on chores {sorted(set_a & set_b)}")
    elems = _resolve_chores(inst, set_a | set_b)
    if len(elems) > PAIRWISE_MAX_CHORES:
        raise SizeGuardError(
            f"pairwise enumeration limited to {PAIRWISE_MAX_CHORES} chores, got {len(elems)}"
        )
    value, blocks = _two_partition_scan(inst.costs[agent], inst.m, elems)
    return MmsResult(value=value, witness=tuple(blocks))


# ---------------------------------------------------------------------------
# Exact dispatcher
# ---------------------------------------------------------------------------


def mms_value(inst: Instance, agent: int, k: int, chores: Iterable[int] | None = None) -> MmsResult:
    """Exact MMS via the cheapest route available for the agent's variant.

    Additive costs use branch-and-bound; capped variants commute the cap with
    the min-max; coverage costs reduce to an additive min-max over group
    weights (concentrating a group in one block never raises the max, so the
    optimum assigns each group to a single block). Table costs fall back to
    guarded enumeration.
    """
    inst.check_agent(agent)
    _check_k(k)
    elems = _resolve_chores(inst, chores)
    fn = inst.costs[agent]
    if not elems:
        return MmsResult(value=Fraction(0), witness=_pad([], k))

    if isinstance(fn, Additive):
        return mms_share_additive_fast(inst, agent, k, elems)

    if isinstance(fn, CappedAdditive):
        value, blocks = _additive_min_max(fn.values, elems, k)
        # Every partition's max block sum is >= the uncapped optimum, so the
        # capped optimum is exactly min(cap, uncapped optimum) and any
        # uncapped witness attains it.
        return MmsResult(value=min(value, fn.cap), witness=_pad(blocks, k))

    if isinstance(fn, CappedCardinality):
        t = len(elems)
        blocks = [frozenset(elems[j::k]) for j in range(k)]
        value = Fraction(min(fn.cap, -(-t // k)))
        return MmsResult(value=value, witness=tuple(blocks))

    if isinstance(fn, RowCoverage):
        hit_groups = []
        elem_set = set(elems)
        for row, w in zip(fn.rows, fn.weights):
            members = frozenset(row) & elem_set
            if members:
                hit_groups.append((members, w))
        den = 1
        for _, w in hit_groups:
            den = math.lcm(den, w.denominator)
        order = sorted(
            range(len(hit_groups)),
            key=lambda g: (-int(hit_groups[g][1] * den), min(hit_groups[g][0])),
        )
        items = [int(hit_groups[g][1] * den) for g in order]
        best, assign = _min_max_partition(items, k)
        blocks_sets: list[set[int]] = [set() for _ in range(k)]
        for g, b in zip(order, assign):
            blocks_sets[b] |= hit_groups[g][0]
        return MmsResult(
            value=Fraction(best, den),
            witness=tuple(frozenset(b) for b in blocks_sets),
        )

    if isinstance(fn, TableCost):
        if k == 2 and len(elems) <= PAIRWISE_MAX_CHORES:
            value, blocks = _two_partition_scan(fn, inst.m, elems)
            return MmsResult(value=value, witness=tuple(blocks))
        if len(elems) <= ENUM_MAX_CHORES and k <= ENUM_MAX_BLOCKS:
            value, blocks = _enumerate_partitions(fn, inst.m, elems, k)
            return MmsResult(value=value, witness=_pad(blocks, k))
        raise SizeGuardError(
            f"table costs support only enumeration; {len(elems)} chores with k={k} exceed the guards"
        )

    raise UnsupportedVariantError(f"unknown cost-function variant {type(fn).__name__}")
