"""Fairness criteria: minimal approximation factors and implied guarantees.

``min_alpha`` returns the smallest alpha in ``[1, inf]`` for which a given
allocation satisfies a criterion. Ratio conventions make it total: a
comparison with zero on the left contributes 1, and a positive left side
against a zero right side contributes infinity.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import ArgumentError, NotInTableError
from .mms import mms_value
from .model import (
    INFINITY,
    Allocation,
    ExtendedRational,
    Instance,
    check_partition,
    mask_evaluator,
    parse_rational,
    set_of,
)

__all__ = [
    "Criterion",
    "FairnessReport",
    "Guarantee",
    "min_alpha",
    "fairness_report",
    "satisfies",
    "implied_guarantee",
    "DEFAULT_CRITERIA",
    "SETTINGS",
]


class Criterion(Enum):
    EF = "EF"
    EF1 = "EF1"
    EFX = "EFX"
    EFX_STRONG = "EFX_STRONG"
    MMS = "MMS"
    PMMS = "PMMS"

    @classmethod
    def parse(cls, name: str) -> "Criterion":
        try:
            return cls[name.strip().upper()]
        except KeyError:
            raise ArgumentError(f"unknown criterion {name!r}") from None


DEFAULT_CRITERIA = (Criterion.EF, Criterion.EFX, Criterion.EF1, Criterion.MMS, Criterion.PMMS)
SETTINGS = ("additive", "submodular")


@dataclass(frozen=True)
class FairnessReport:
    """Per-criterion minimal alpha with the pair attaining it."""

    alphas: Mapping[Criterion, ExtendedRational]
    witnesses: Mapping[Criterion, dict | None]
    mms_values: Mapping[Criterion, dict]

    def alpha_str(self) -> dict[str, str]:
        from .model import rational_str

        return {c.value: rational_str(a) for c, a in self.alphas.items()}


def _needed_alpha(left: Fraction, right: Fraction) -> ExtendedRational:
    if left <= right:
        return Fraction(1)
    if right == 0:
        return INFINITY
    return left / right


class InstanceContext:
    """Caches bundle costs and MMS values across many allocations of one instance.

    The exhaustive search layer reuses one context for a whole enumeration,
    which is where the memoization pays off.
    """

    def __init__(self, inst: Instance) -> None:
        self.inst = inst
        self._eval = [mask_evaluator(fn, inst.m) for fn in inst.costs]
        self._bundle: list[dict[int, Fraction]] = [dict() for _ in range(inst.n)]
        self._pair: list[dict[int, Fraction]] = [dict() for _ in range(inst.n)]
        self._removal: list[dict[int, tuple]] = [dict() for _ in range(inst.n)]
        self._whole: dict[int, Fraction] = {}
        self._singles: list[tuple[Fraction, ...] | None] = [None] * inst.n

    def bundle_cost(self, agent: int, mask: int) -> Fraction:
        memo = self._bundle[agent]
        c = memo.get(mask)
        if c is None:
            c = self._eval[agent](mask)
            memo[mask] = c
        return c

    def single_costs(self, agent: int) -> tuple[Fraction, ...]:
        singles = self._singles[agent]
        if singles is None:
            ev = self._eval[agent]
            singles = tuple(ev(1 << e) for e in range(self.inst.m))
            self._singles[agent] = singles
        return singles

    def whole_set_mms(self, agent: int) -> Fraction:
        value = self._whole.get(agent)
        if value is None:
            value = mms_value(self.inst, agent, self.inst.n).value
            self._whole[agent] = value
        return value

    def pairwise_mms(self, agent: int, union_mask: int) -> Fraction:
        memo = self._pair[agent]
        value = memo.get(union_mask)
        if value is None:
            value = mms_value(self.inst, agent, 2, set_of(union_mask)).value
            memo[union_mask] = value
        return value

    def removal_stats(self, agent: int, mask: int) -> tuple:
        """(best removal cost, its chore, worst positive removal cost, its chore)."""
        memo = self._removal[agent]
        hit = memo.get(mask)
        if hit is not None:
            return hit
        singles = self.single_costs(agent)
        best = best_chore = worst = worst_chore = None
        rest = mask
        while rest:
            low = rest & -rest
            rest ^= low
            e = low.bit_length() - 1
            left = self.bundle_cost(agent, mask ^ low)
            if best is None or left < best:
                best, best_chore = left, e
            if singles[e] > 0 and (worst is None or left > worst):
                worst, worst_chore = left, e
        out = (best, best_chore, worst, worst_chore)
        memo[mask] = out
        return out

    def worst_any_removal(self, agent: int, mask: int) -> tuple:
        """Worst removal over all chores, zero-cost ones included."""
        worst = worst_chore = None
        rest = mask
        while rest:
            low = rest & -rest
            rest ^= low
            e = low.bit_length() - 1
            left = self.bundle_cost(agent, mask ^ low)
            if worst is None or left > worst:
                worst, worst_chore = left, e
        return worst, worst_chore

    # -- minimal alpha -----------------------------------------------------

    def min_alpha_masks(self, masks: Sequence[int], crit: Criterion):
        """Returns (alpha, witness dict or None, mms values used)."""
        n = self.inst.n
        best: ExtendedRational = Fraction(1)
        witness: dict | None = None
        mms_used: dict = {}

        def consider(value: ExtendedRational, agent: int, against: int | None, chore: int | None):
            nonlocal best, witness
            if value > best:
                best = value
                witness = {"agent": agent, "against": against, "chore": chore}

        for i in range(n):
            own = self.bundle_cost(i, masks[i])
            if own == 0:
                continue  # contributes 1 to every criterion
            if crit is Criterion.MMS:
                share = self.whole_set_mms(i)
                mms_used[i] = share
                consider(_needed_alpha(own, share), i, None, None)
                continue
            if crit is Criterion.PMMS:
                for j in range(n):
                    if j == i:
                        continue
                    share = self.pairwise_mms(i, masks[i] | masks[j])
                    mms_used[(i, j)] = share
                    consider(_needed_alpha(own, share), i, j, None)
                continue
            if crit is Criterion.EF:
                left: Fraction | None = own
                chore: int | None = None
            elif crit is Criterion.EF1:
                left, chore, _, _ = self.removal_stats(i, masks[i])
            elif crit is Criterion.EFX:
                _, _, left, chore = self.removal_stats(i, masks[i])
                if left is None:
                    continue  # no positive-cost chore to remove: vacuous
            elif crit is Criterion.EFX_STRONG:
                left, chore = self.worst_any_removal(i, masks[i])
            else:
                raise ArgumentError(f"unknown criterion {crit!r}")
            for j in range(n):
                if j == i:
                    continue
                consider(_needed_alpha(left, self.bundle_cost(i, masks[j])), i, j, chore)
        return best, witness, mms_used


@functools.lru_cache(maxsize=64)
def _context_for(inst: Instance) -> InstanceContext:
    return InstanceContext(inst)


def context_for(inst: Instance) -> InstanceContext:
    """Shared memoizing context for an instance (used by the search layer)."""
    return _context_for(inst)


def min_alpha(inst: Instance, alloc: Allocation, crit: Criterion) -> ExtendedRational:
    """Smallest alpha in [1, inf] for which ``alloc`` is alpha-``crit``."""
    check_partition(inst, alloc)
    ctx = context_for(inst)
    value, _, _ = ctx.min_alpha_masks(alloc.masks(), crit)
    return value


def fairness_report(
    inst: Instance, alloc: Allocation, criteria: Iterable[Criterion] = DEFAULT_CRITERIA
) -> FairnessReport:
    check_partition(inst, alloc)
    ctx = context_for(inst)
    masks = alloc.masks()
    alphas: dict[Criterion, ExtendedRational] = {}
    witnesses: dict[Criterion, dict | None] = {}
    mms_used: dict[Criterion, dict] = {}
    for crit in criteria:
        value, wit, shares = ctx.min_alpha_masks(masks, crit)
        alphas[crit] = value
        witnesses[crit] = wit
        mms_used[crit] = shares
    return FairnessReport(alphas=alphas, witnesses=witnesses, mms_values=mms_used)


def satisfies(inst: Instance, alloc: Allocation, crit: Criterion, alpha) -> bool:
    if isinstance(alpha, float):
        if alpha != INFINITY:
            raise ArgumentError(f"alpha must be an exact rational or infinity, got {alpha!r}")
    else:
        alpha = parse_rational(alpha)
        if alpha < 1:
            raise ArgumentError(f"alpha must be >= 1, got {alpha}")
    return min_alpha(inst, alloc, crit) <= alpha


# ---------------------------------------------------------------------------
# Implied guarantees between criteria
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Guarantee:
    """Outcome of an implied-guarantee lookup.

    kind is one of:
      * "bound"        -- any alpha-src allocation is value-dst;
      * "unbounded"    -- no finite guarantee exists;
      * "trivial_only" -- nothing beyond the universal subadditive guarantee
                          (2 for PMMS, n for MMS), carried in ``value``.
    """

    kind: str
    value: Fraction | None = None


def _bound(v: Fraction) -> Guarantee:
    return Guarantee("bound", v)


UNBOUNDED = Guarantee("unbounded")


def _trivial(v: Fraction) -> Guarantee:
    return Guarantee("trivial_only", v)


def implied_guarantee(
    src: Criterion, alpha, dst: Criterion, n: int, setting: str = "additive"
) -> Guarantee:
    """Best known guarantee of an alpha-src allocation for criterion dst.

    Only encoded statements are answered; anything outside their validity
    ranges raises ``NotInTableError`` rather than guessing.
    """
    alpha = parse_rational(alpha)
    if alpha < 1:
        raise ArgumentError(f"alpha must be >= 1, got {alpha}")
    if not isinstance(n, int) or n < 2:
        raise ArgumentError(f"agent count must be an integer >= 2, got {n!r}")
    if setting not in SETTINGS:
        raise ArgumentError(f"setting must be one of {SETTINGS}, got {setting!r}")
    if src is Criterion.EFX_STRONG or dst is Criterion.EFX_STRONG:
        raise NotInTableError("no encoded guarantees involve the strong EFX variant")

    a, nn = alpha, Fraction(n)

    def miss() -> NotInTableError:
        return NotInTableError(
            f"no encoded guarantee for {a}-{src.value} -> {dst.value} "
            f"with n={n} in the {setting} setting"
        )

    if setting == "additive":
        if src is Criterion.EF:
            if dst is Criterion.EF1 or dst is Criterion.EFX:
                return _bound(a)
            if dst is Criterion.MMS:
                return _bound(nn * a / (nn - 1 + a))
            if dst is Criterion.PMMS:
                return _bound(2 * a / (a + 1))
        if src is Criterion.EFX:
            if dst is Criterion.EF1:
                return _bound(a)
            if dst is Criterion.MMS:
                return _bound(min(2 * nn * a / (nn - 1 + 2 * a), (nn * a + nn - 1) / (nn - 1 + a)))
            if dst is Criterion.PMMS:
                return _bound(4 * a / (2 * a + 1))
        if src is Criterion.EF1:
            if dst is Criterion.EFX:
                return UNBOUNDED
            if dst is Criterion.MMS:
                return _bound((nn * a + nn - 1) / (nn - 1 + a))
            if dst is Criterion.PMMS:
                return _bound((2 * a + 1) / (a + 1))
        if src is Criterion.PMMS:
            if dst in (Criterion.EF1, Criterion.EFX):
                if a == 1:
                    return _bound(Fraction(1))
                if 1 < a <= 2:
                    return UNBOUNDED
                raise miss()
            if dst is Criterion.MMS:
                if a == 1 and n == 3:
                    return _bound(Fraction(4, 3))
                if a == 1 and n >= 4:
                    return _bound(2 * nn / (nn + 1))
                if 1 < a < Fraction(3, 2) and n >= 3:
                    return _bound(nn * a / (a + (nn - 1) * (1 - a / 2)))
                raise miss()
        if src is Criterion.MMS and n >= 3:
            if dst is Criterion.PMMS:
                return _trivial(Fraction(2))
            if dst in (Criterion.EF1, Criterion.EFX):
                return UNBOUNDED
        raise miss()

    # submodular setting
    if src is Criterion.EF:
        if dst in (Criterion.EF1, Criterion.EFX):
            return _bound(a)
        if dst is Criterion.MMS:
            return _trivial(nn)
        if dst is Criterion.PMMS:
            return _trivial(Fraction(2))
    if src is Criterion.EFX:
        if dst is Criterion.EF1:
            return _bound(a)
        if dst is Criterion.MMS:
            return _trivial(nn)
        if dst is Criterion.PMMS:
            return _trivial(Fraction(2))
    if src is Criterion.EF1:
        if dst is Criterion.EFX:
            return UNBOUNDED
        if dst is Criterion.MMS:
            return _trivial(nn)
        if dst is Criterion.PMMS:
            return _trivial(Fraction(2))
    if src is Criterion.PMMS:
        if dst in (Criterion.EF1, Criterion.EFX):
            return UNBOUNDED
        if dst is Criterion.MMS:
            if 1 <= a <= 2:
                return _bound(min(nn, a * ((n + 1) // 2)))
            raise miss()
    if src is Criterion.MMS and n >= 3:
        if dst is Criterion.PMMS:
            return _trivial(Fraction(2))
        if dst in (Criterion.EF1, Criterion.EFX):
            return UNBOUNDED
    raise miss()
