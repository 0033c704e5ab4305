"""Parametric instance families with reference allocations and exact expectations.

Each family packages one extremal construction: an instance, the allocation
exhibiting the extreme behaviour, and the closed-form values it attains.
Connection families pin minimal alphas for several criteria at once; price
families pin the optimal social cost, the cheapest fair cost, and their
ratio. Every expectation is exact at the given parameters and is re-derived
by the search layer in tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .criteria import Criterion
from .errors import ArgumentError
from .model import (
    INFINITY,
    Additive,
    Allocation,
    CappedAdditive,
    CappedCardinality,
    CostFunction,
    ExtendedRational,
    Instance,
    RowCoverage,
    TableCost,
    parse_rational,
    rational_str,
)

__all__ = ["PriceCheck", "FamilyBundle", "FAMILY_IDS", "make_family", "family_to_json", "valid_params"]


@dataclass(frozen=True)
class PriceCheck:
    criterion: Criterion
    alpha: Fraction
    fair_cost: Fraction
    price: Fraction


@dataclass(frozen=True)
class FamilyBundle:
    family_id: str
    params: tuple[tuple[str, object], ...]
    setting: str
    kind: str  # "connection" | "price"
    instance: Instance
    reference_allocation: Allocation
    source: tuple[Criterion, Fraction] | None = None
    expected_alphas: tuple[tuple[Criterion, ExtendedRational], ...] = ()
    expected_values: tuple[tuple[str, Fraction], ...] = ()
    opt_cost: Fraction | None = None
    price_checks: tuple[PriceCheck, ...] = ()

    @property
    def params_dict(self) -> dict:
        return dict(self.params)

    @property
    def alphas_dict(self) -> dict[Criterion, ExtendedRational]:
        return dict(self.expected_alphas)


def _fr(x) -> Fraction:
    return parse_rational(x)


def _int_param(name: str, value) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise ArgumentError(f"parameter {name} must be an integer, got {value!r}")
    return value


def _identical_additive(n: int, values: list[Fraction]) -> tuple[CostFunction, ...]:
    fn = Additive(tuple(values))
    return tuple(fn for _ in range(n))


def _indicator_costs(bundles: list[frozenset[int]], m: int) -> list[CostFunction]:
    """One additive function per bundle: 0 on the bundle, 1 elsewhere."""
    out = []
    for bundle in bundles:
        out.append(Additive(tuple(Fraction(0) if e in bundle else Fraction(1) for e in range(m))))
    return out


def _blocks(sizes: list[int]) -> list[frozenset[int]]:
    bundles = []
    start = 0
    for size in sizes:
        bundles.append(frozenset(range(start, start + size)))
        start += size
    return bundles


def _require(cond: bool, constraint: str) -> None:
    if not cond:
        raise ArgumentError(f"family parameters violate: {constraint}")


# ---------------------------------------------------------------------------
# Connection families (additive)
# ---------------------------------------------------------------------------


def _ef_mms_tight(n: int, alpha) -> FamilyBundle:
    n = _int_param("n", n)
    a = _fr(alpha)
    _require(n >= 2, "n >= 2")
    _require(a >= 1, "alpha >= 1")
    m = n * n
    values = [a] * n + [Fraction(1)] * (m - n)
    inst = Instance(n=n, m=m, costs=_identical_additive(n, values))
    alloc = Allocation(tuple(_blocks([n] * n)))
    share = n - 1 + a
    return FamilyBundle(
        family_id="EF_MMS_TIGHT",
        params=(("n", n), ("alpha", a)),
        setting="additive",
        kind="connection",
        instance=inst,
        reference_allocation=alloc,
        source=(Criterion.EF, a),
        expected_alphas=((Criterion.EF, a), (Criterion.MMS, n * a / share)),
        expected_values=(("whole_set_share_agent0", share),),
    )


def _ef_pmms_tight(n: int, alpha) -> FamilyBundle:
    n = _int_param("n", n)
    a = _fr(alpha)
    _require(n >= 2, "n >= 2")
    _require(a >= 1, "alpha >= 1")
    m = 2 * n
    values = [a, a] + [Fraction(1)] * (m - 2)
    inst = Instance(n=n, m=m, costs=_identical_additive(n, values))
    alloc = Allocation(tuple(_blocks([2] * n)))
    return FamilyBundle(
        family_id="EF_PMMS_TIGHT",
        params=(("n", n), ("alpha", a)),
        setting="additive",
        kind="connection",
        instance=inst,
        reference_allocation=alloc,
        source=(Criterion.EF, a),
        expected_alphas=((Criterion.EF, a), (Criterion.PMMS, 2 * a / (1 + a))),
        expected_values=(("pair_share_agent0", 1 + a),),
    )


def _ef1_not_efx(n: int, p: int) -> FamilyBundle:
    n = _int_param("n", n)
    p = _int_param("p", p)
    _require(n >= 2, "n >= 2")
    _require(p >= 2, "p >= 2")
    m = 2 * n
    values = [Fraction(p)] + [Fraction(1)] * (m - 1)
    inst = Instance(n=n, m=m, costs=_identical_additive(n, values))
    alloc = Allocation(tuple(_blocks([2] * n)))
    return FamilyBundle(
        family_id="EF1_NOT_EFX",
        params=(("n", n), ("p", p)),
        setting="additive",
        kind="connection",
        instance=inst,
        reference_allocation=alloc,
        source=(Criterion.EF1, Fraction(1)),
        expected_alphas=((Criterion.EF1, Fraction(1)), (Criterion.EFX, Fraction(p, 2))),
    )


def _ef1_mms_tight(n: int, alpha) -> FamilyBundle:
    n = _int_param("n", n)
    a = _fr(alpha)
    _require(n >= 2, "n >= 2")
    _require(a >= 1, "alpha >= 1")
    m = n * n - n + 1
    values = [a + n - 1] + [a] * (n - 1) + [Fraction(1)] * ((n - 1) ** 2)
    inst = Instance(n=n, m=m, costs=_identical_additive(n, values))
    alloc = Allocation(tuple(_blocks([n] + [n - 1] * (n - 1))))
    share = a + n - 1
    return FamilyBundle(
        family_id="EF1_MMS_TIGHT",
        params=(("n", n), ("alpha", a)),
        setting="additive",
        kind="connection",
        instance=inst,
        reference_allocation=alloc,
        source=(Criterion.EF1, a),
        expected_alphas=((Criterion.EF1, a), (Criterion.MMS, (n * a + n - 1) / share)),
        expected_values=(("whole_set_share_agent0", share),),
    )


def _efx_mms_lb_a(n: int) -> FamilyBundle:
    n = _int_param("n", n)
    _require(n >= 2, "n >= 2")
    m = 2 * n
    values = [Fraction(t // 2 + 1) for t in range(m)]
    inst = Instance(n=n, m=m, costs=_identical_additive(n, values))
    bundles = [frozenset({2 * n - 2, 2 * n - 1})]
    bundles += [frozenset({i - 2, 2 * n - i - 1}) for i in range(2, n + 1)]
    alloc = Allocation(tuple(bundles))
    return FamilyBundle(
        family_id="EFX_MMS_LB_A",
        params=(("n", n),),
        setting="additive",
        kind="connection",
        instance=inst,
        reference_allocation=alloc,
        source=(Criterion.EFX, Fraction(1)),
        expected_alphas=((Criterion.EFX, Fraction(1)), (Criterion.MMS, Fraction(2 * n, n + 1))),
        expected_values=(("whole_set_share_agent0", Fraction(n + 1)),),
    )


def _efx_mms_lb_b(n: int, alpha) -> FamilyBundle:
    n = _int_param("n", n)
    a = _fr(alpha)
    _require(n >= 2, "n >= 2")
    _require(a >= 1, "alpha >= 1")
    m = 2 * n * n - 2 * n
    bundles = [frozenset(range(n)), frozenset(range(n, 3 * n - 2))]
    start = 3 * n - 2
    for _ in range(n - 2):
        bundles.append(frozenset(range(start, start + 2 * n - 1)))
        start += 2 * n - 1
    agent0 = Additive(tuple([2 * a] * n + [Fraction(1)] * (m - n)))
    costs = [agent0] + _indicator_costs(bundles[1:], m)
    inst = Instance(n=n, m=m, costs=tuple(costs))
    alloc = Allocation(tuple(bundles))
    share = 2 * a + 2 * n - 3
    return FamilyBundle(
        family_id="EFX_MMS_LB_B",
        params=(("n", n), ("alpha", a)),
        setting="additive",
        kind="connection",
        instance=inst,
        reference_allocation=alloc,
        source=(Criterion.EFX, a),
        expected_alphas=((Criterion.EFX, a), (Criterion.MMS, 2 * n * a / share)),
        expected_values=(("whole_set_share_agent0", share),),
    )


def _efx_pmms_tight(n: int, alpha) -> FamilyBundle:
    n = _int_param("n", n)
    a = _fr(alpha)
    _require(n >= 2, "n >= 2")
    _require(a >= 1, "alpha >= 1")
    m = 2 * n
    values = [2 * a, 2 * a] + [Fraction(1)] * (m - 2)
    inst = Instance(n=n, m=m, costs=_identical_additive(n, values))
    alloc = Allocation(tuple(_blocks([2] * n)))
    return FamilyBundle(
        family_id="EFX_PMMS_TIGHT",
        params=(("n", n), ("alpha", a)),
        setting="additive",
        kind="connection",
        instance=inst,
        reference_allocation=alloc,
        source=(Criterion.EFX, a),
        expected_alphas=((Criterion.EFX, a), (Criterion.PMMS, 4 * a / (2 * a + 1))),
        expected_values=(("pair_share_agent0", 2 * a + 1),),
    )


def _ef1_pmms_tight(n: int, alpha) -> FamilyBundle:
    n = _int_param("n", n)
    a = _fr(alpha)
    _require(n >= 2, "n >= 2")
    _require(a >= 1, "alpha >= 1")
    m = n + 1
    values = [a + 1, a] + [Fraction(1)] * (n - 1)
    inst = Instance(n=n, m=m, costs=_identical_additive(n, values))
    bundles = [frozenset({0, 1})] + [frozenset({j}) for j in range(2, n + 1)]
    alloc = Allocation(tuple(bundles))
    return FamilyBundle(
        family_id="EF1_PMMS_TIGHT",
        params=(("n", n), ("alpha", a)),
        setting="additive",
        kind="connection",
        instance=inst,
        reference_allocation=alloc,
        source=(Criterion.EF1, a),
        expected_alphas=((Criterion.EF1, a), (Criterion.PMMS, (2 * a + 1) / (a + 1))),
        expected_values=(("pair_share_agent0", a + 1),),
    )


def _pmms_not_ef1(n: int, alpha, epsilon) -> FamilyBundle:
    n = _int_param("n", n)
    a, eps = _fr(alpha), _fr(epsilon)
    _require(n >= 2, "n >= 2")
    _require(1 < a < 2, "1 < alpha < 2")
    _require(eps > 0, "epsilon > 0")
    big = Fraction(1) / (a - 1)
    _require(big >= 1 + eps, "1/(alpha-1) >= 1 + epsilon")
    m = n + 1
    values = [big, Fraction(1)] + [eps] * (n - 1)
    inst = Instance(n=n, m=m, costs=_identical_additive(n, values))
    bundles = [frozenset({0, 1})] + [frozenset({j}) for j in range(2, n + 1)]
    alloc = Allocation(tuple(bundles))
    return FamilyBundle(
        family_id="PMMS_NOT_EF1",
        params=(("n", n), ("alpha", a), ("epsilon", eps)),
        setting="additive",
        kind="connection",
        instance=inst,
        reference_allocation=alloc,
        source=(Criterion.PMMS, a),
        expected_alphas=((Criterion.PMMS, a), (Criterion.EF1, 1 / eps)),
        expected_values=(("pair_share_agent0", big),),
    )


def _pmms_mms_n3_tight() -> FamilyBundle:
    values = [Fraction(2)] * 3 + [Fraction(1)] * 3
    inst = Instance(n=3, m=6, costs=_identical_additive(3, values))
    alloc = Allocation((frozenset({0, 1}), frozenset({2}), frozenset({3, 4, 5})))
    return FamilyBundle(
        family_id="PMMS_MMS_N3_TIGHT",
        params=(),
        setting="additive",
        kind="connection",
        instance=inst,
        reference_allocation=alloc,
        source=(Criterion.PMMS, Fraction(1)),
        expected_alphas=((Criterion.PMMS, Fraction(1)), (Criterion.MMS, Fraction(4, 3))),
        expected_values=(("whole_set_share_agent0", Fraction(3)),),
    )


def _pmms_mms_lb(n: int) -> FamilyBundle:
    n = _int_param("n", n)
    _require(n >= 3 and n % 2 == 1, "n odd and >= 3")
    m = 2 * n
    big = Fraction(n + 1, 2)
    bundles = [frozenset({0, 1})]
    bundles += [frozenset({j}) for j in range(2, n)]
    bundles.append(frozenset(range(n, 2 * n)))
    agent0 = Additive(tuple([big] * n + [Fraction(1)] * n))
    costs = [agent0] + _indicator_costs(bundles[1:], m)
    inst = Instance(n=n, m=m, costs=tuple(costs))
    alloc = Allocation(tuple(bundles))
    return FamilyBundle(
        family_id="PMMS_MMS_LB",
        params=(("n", n),),
        setting="additive",
        kind="connection",
        instance=inst,
        reference_allocation=alloc,
        source=(Criterion.PMMS, Fraction(1)),
        expected_alphas=(
            (Criterion.PMMS, Fraction(1)),
            (Criterion.MMS, Fraction(2 * n + 2, n + 3)),
        ),
        expected_values=(("whole_set_share_agent0", Fraction(n + 3, 2)),),
    )


def _apmms_mms_lb(n: int, alpha) -> FamilyBundle:
    n = _int_param("n", n)
    a = _fr(alpha)
    _require(n >= 2 and n % 2 == 0, "n even and >= 2")
    _require(1 < a < Fraction(3, 2), "1 < alpha < 3/2")
    m = n * n
    values = [a] * n + [2 - a] * (m - n)
    inst = Instance(n=n, m=m, costs=_identical_additive(n, values))
    alloc = Allocation(tuple(_blocks([n] * n)))
    share = a + (n - 1) * (2 - a)
    return FamilyBundle(
        family_id="APMMS_MMS_LB",
        params=(("n", n), ("alpha", a)),
        setting="additive",
        kind="connection",
        instance=inst,
        reference_allocation=alloc,
        source=(Criterion.PMMS, a),
        expected_alphas=((Criterion.PMMS, a), (Criterion.MMS, n * a / share)),
        expected_values=(("whole_set_share_agent0", share), ("pair_share_agent0", Fraction(n))),
    )


def _mms_not_pmms_instance(n: int, p: int) -> tuple[Instance, Allocation]:
    m = p + 2 * n - 1
    bundles = [frozenset(range(p + 1))]
    bundles += [frozenset({p + i - 1}) for i in range(2, n - 1)]
    bundles.append(frozenset({n + p - 2, n + p - 1}))
    bundles.append(frozenset(range(n + p, 2 * n + p - 1)))
    agent0 = Additive(tuple([Fraction(1)] * (n + p) + [Fraction(p)] * (n - 1)))
    costs = [agent0] + _indicator_costs(bundles[1:], m)
    return Instance(n=n, m=m, costs=tuple(costs)), Allocation(tuple(bundles))


def _mms_not_pmms(n: int, p: int) -> FamilyBundle:
    n = _int_param("n", n)
    p = _int_param("p", p)
    _require(n >= 4, "n >= 4 (a singleton bundle must exist next to the unit block)")
    _require(p >= 1, "p >= 1")
    inst, alloc = _mms_not_pmms_instance(n, p)
    return FamilyBundle(
        family_id="MMS_NOT_PMMS",
        params=(("n", n), ("p", p)),
        setting="additive",
        kind="connection",
        instance=inst,
        reference_allocation=alloc,
        source=(Criterion.MMS, Fraction(1)),
        expected_alphas=(
            (Criterion.MMS, Fraction(1)),
            (Criterion.PMMS, Fraction(p + 1) / Fraction(math.ceil(Fraction(p + 2, 2)))),
        ),
        expected_values=(("whole_set_share_agent0", Fraction(p + 1)),),
    )


def _mms_not_ef1(n: int, p: int) -> FamilyBundle:
    n = _int_param("n", n)
    p = _int_param("p", p)
    _require(n >= 4, "n >= 4 (a singleton bundle must exist next to the unit block)")
    _require(p >= 1, "p >= 1")
    inst, alloc = _mms_not_pmms_instance(n, p)
    return FamilyBundle(
        family_id="MMS_NOT_EF1",
        params=(("n", n), ("p", p)),
        setting="additive",
        kind="connection",
        instance=inst,
        reference_allocation=alloc,
        source=(Criterion.MMS, Fraction(1)),
        expected_alphas=((Criterion.MMS, Fraction(1)), (Criterion.EF1, Fraction(p))),
        expected_values=(("whole_set_share_agent0", Fraction(p + 1)),),
    )


# ---------------------------------------------------------------------------
# Connection families (submodular)
# ---------------------------------------------------------------------------


def _sub_ef_coverage(n: int) -> FamilyBundle:
    n = _int_param("n", n)
    _require(n >= 2 and n % 2 == 0, "n even and >= 2")
    m = n * n
    rows = tuple(tuple(range(i * n, (i + 1) * n)) for i in range(n))
    fn = RowCoverage(rows=rows, weights=tuple(Fraction(1) for _ in range(n)))
    inst = Instance(n=n, m=m, costs=tuple(fn for _ in range(n)))
    columns = [frozenset(range(j, m, n)) for j in range(n)]
    alloc = Allocation(tuple(columns))
    return FamilyBundle(
        family_id="SUB_EF_COVERAGE",
        params=(("n", n),),
        setting="submodular",
        kind="connection",
        instance=inst,
        reference_allocation=alloc,
        source=(Criterion.EF, Fraction(1)),
        expected_alphas=(
            (Criterion.EF, Fraction(1)),
            (Criterion.MMS, Fraction(n)),
            (Criterion.PMMS, Fraction(2)),
        ),
        expected_values=(("whole_set_share_agent0", Fraction(1)),),
    )


def _sub_pmms_capped() -> FamilyBundle:
    fn = CappedCardinality(cap=2)
    inst = Instance(n=2, m=3, costs=(fn, fn))
    alloc = Allocation((frozenset({0, 1, 2}), frozenset()))
    return FamilyBundle(
        family_id="SUB_PMMS_CAPPED",
        params=(),
        setting="submodular",
        kind="connection",
        instance=inst,
        reference_allocation=alloc,
        source=(Criterion.PMMS, Fraction(1)),
        expected_alphas=(
            (Criterion.PMMS, Fraction(1)),
            (Criterion.MMS, Fraction(1)),
            (Criterion.EF1, INFINITY),
            (Criterion.EFX, INFINITY),
        ),
        expected_values=(("pair_share_agent0", Fraction(2)),),
    )


def _sub_pmms_mms_tight(n: int, alpha) -> FamilyBundle:
    n = _int_param("n", n)
    a = _fr(alpha)
    _require(n >= 2 and n % 2 == 0, "n even and >= 2")
    _require(1 <= a < 2, "1 <= alpha < 2")
    cols = n + 1
    m = n * cols
    half = a * n / 2
    floor_part = math.floor(half)
    delta = half - floor_part

    def cell(row: int, col: int) -> int:
        return row * cols + col

    columns = [frozenset(cell(r, j) for r in range(n)) for j in range(cols)]
    weights = [Fraction(1)] * (n - 1) + [delta, 1 - delta]
    agent0 = RowCoverage(rows=tuple(tuple(sorted(c)) for c in columns), weights=tuple(weights))

    tail_cols = list(range(floor_part, n - 1)) + [n]
    bundles = [frozenset().union(*[columns[j] for j in list(range(floor_part)) + [n - 1]])]
    for r in range(1, n - 1):
        bundles.append(frozenset(cell(r, j) for j in tail_cols))
    bundles.append(frozenset(cell(n - 1, j) for j in tail_cols) | frozenset(cell(0, j) for j in tail_cols))
    costs = [agent0] + _indicator_costs(bundles[1:], m)
    inst = Instance(n=n, m=m, costs=tuple(costs))
    alloc = Allocation(tuple(bundles))
    return FamilyBundle(
        family_id="SUB_PMMS_MMS_TIGHT",
        params=(("n", n), ("alpha", a)),
        setting="submodular",
        kind="connection",
        instance=inst,
        reference_allocation=alloc,
        source=(Criterion.PMMS, a),
        expected_alphas=((Criterion.PMMS, a), (Criterion.MMS, half)),
        expected_values=(("whole_set_share_agent0", Fraction(1)),),
    )


# ---------------------------------------------------------------------------
# Price-of-fairness families
# ---------------------------------------------------------------------------


def _pof_ef1_n2(epsilon) -> FamilyBundle:
    eps = _fr(epsilon)
    _require(0 < eps < Fraction(1, 12), "0 < epsilon < 1/12")
    c1 = Additive((Fraction(0), Fraction(1, 2), Fraction(1, 2)))
    c2 = Additive((Fraction(1, 3) - 2 * eps, Fraction(1, 3) + eps, Fraction(1, 3) + eps))
    inst = Instance(n=2, m=3, costs=(c1, c2))
    alloc = Allocation((frozenset({0, 1}), frozenset({2})))
    opt = Fraction(2, 3) + 2 * eps
    fair = Fraction(5, 6) + eps
    return FamilyBundle(
        family_id="POF_EF1_N2",
        params=(("epsilon", eps),),
        setting="additive",
        kind="price",
        instance=inst,
        reference_allocation=alloc,
        opt_cost=opt,
        price_checks=(PriceCheck(Criterion.EF1, Fraction(1), fair, fair / opt),),
    )


def _pof_pmms32_n2(epsilon) -> FamilyBundle:
    eps = _fr(epsilon)
    _require(0 < eps < Fraction(1, 10), "0 < epsilon < 1/10")
    c1 = Additive((Fraction(3, 8), Fraction(3, 8) + eps, Fraction(1, 8) - eps, Fraction(1, 8)))
    c2 = Additive((Fraction(1, 2), Fraction(1, 2), Fraction(0), Fraction(0)))
    inst = Instance(n=2, m=4, costs=(c1, c2))
    alloc = Allocation((frozenset({0}), frozenset({1, 2, 3})))
    opt = Fraction(3, 4) + eps
    fair = Fraction(7, 8)
    return FamilyBundle(
        family_id="POF_PMMS32_N2",
        params=(("epsilon", eps),),
        setting="additive",
        kind="price",
        instance=inst,
        reference_allocation=alloc,
        opt_cost=opt,
        price_checks=(PriceCheck(Criterion.PMMS, Fraction(3, 2), fair, fair / opt),),
    )


def _pof_pmms_n2(epsilon) -> FamilyBundle:
    eps = _fr(epsilon)
    _require(0 < eps < Fraction(1, 8), "0 < epsilon < 1/8")
    c1 = Additive((Fraction(1, 2), Fraction(1, 2) - eps, eps))
    c2 = Additive((Fraction(1, 2), eps, Fraction(1, 2) - eps))
    inst = Instance(n=2, m=3, costs=(c1, c2))
    alloc = Allocation((frozenset({0}), frozenset({1, 2})))
    opt = Fraction(1, 2) + 2 * eps
    one = Fraction(1)
    checks = tuple(
        PriceCheck(crit, Fraction(1), one, one / opt)
        for crit in (Criterion.PMMS, Criterion.MMS, Criterion.EFX)
    )
    return FamilyBundle(
        family_id="POF_PMMS_N2",
        params=(("epsilon", eps),),
        setting="additive",
        kind="price",
        instance=inst,
        reference_allocation=alloc,
        opt_cost=opt,
        price_checks=checks,
    )


def _pof_n3_unbounded(n: int, m: int, epsilon) -> FamilyBundle:
    n = _int_param("n", n)
    m = _int_param("m", m)
    eps = _fr(epsilon)
    _require(n >= 3, "n >= 3")
    _require(m >= 5, "m >= 5")
    # The bound keeps the cheapest fair allocation fair even against the
    # empty bundles that appear for n >= 4.
    _require(0 < eps < Fraction(1, 3 * m), "0 < epsilon < 1/(3m)")
    inv_m = Fraction(1, m)
    c1 = [Fraction(1) - 4 * eps] + [Fraction(0)] * (m - 5) + [eps] * 4
    c2 = [1 - 4 * inv_m] + [Fraction(0)] * (m - 5) + [inv_m] * 4
    c3 = [eps] + [inv_m] * (m - 2) + [inv_m - eps]
    costs: list[CostFunction] = [Additive(tuple(c1)), Additive(tuple(c2)), Additive(tuple(c3))]
    for _ in range(n - 3):
        costs.append(Additive(tuple([inv_m] * m)))
    inst = Instance(n=n, m=m, costs=tuple(costs))
    bundles = [frozenset(range(m - 4, m - 1)), frozenset(range(1, m - 4)), frozenset({0, m - 1})]
    bundles += [frozenset() for _ in range(n - 3)]
    alloc = Allocation(tuple(bundles))
    opt = 5 * eps
    fair = inv_m + 3 * eps
    return FamilyBundle(
        family_id="POF_N3_UNBOUNDED",
        params=(("n", n), ("m", m), ("epsilon", eps)),
        setting="additive",
        kind="price",
        instance=inst,
        reference_allocation=alloc,
        opt_cost=opt,
        price_checks=(PriceCheck(Criterion.PMMS, Fraction(3, 2), fair, fair / opt),),
    )


def _pof_mms_lb(n: int, epsilon) -> FamilyBundle:
    n = _int_param("n", n)
    eps = _fr(epsilon)
    _require(n >= 3, "n >= 3")
    _require(0 < eps < Fraction(1, 2 * n), "0 < epsilon < 1/(2n)")
    m = n + 1
    inv_n = Fraction(1, n)
    c1 = [inv_n, eps, inv_n - eps] + [inv_n] * (m - 3)
    rest = [Fraction(1, 2), Fraction(1, 2)] + [Fraction(0)] * (m - 2)
    costs = [Additive(tuple(c1))] + [Additive(tuple(rest))] * (n - 1)
    inst = Instance(n=n, m=m, costs=tuple(costs))
    bundles = [frozenset({1}), frozenset({0, 2}) | frozenset(range(3, m))]
    bundles += [frozenset() for _ in range(n - 2)]
    alloc = Allocation(tuple(bundles))
    opt = inv_n + eps
    fair = Fraction(1, 2) + eps
    return FamilyBundle(
        family_id="POF_MMS_LB",
        params=(("n", n), ("epsilon", eps)),
        setting="additive",
        kind="price",
        instance=inst,
        reference_allocation=alloc,
        opt_cost=opt,
        price_checks=(PriceCheck(Criterion.MMS, Fraction(1), fair, fair / opt),),
    )


def _pof_2mms_lb(n: int, epsilon) -> FamilyBundle:
    n = _int_param("n", n)
    eps = _fr(epsilon)
    _require(n >= 3, "n >= 3")
    _require(0 < eps < Fraction(1, 4 * n), "0 < epsilon < 1/(4n)")
    m = n + 3
    inv_n = Fraction(1, n)
    c1 = [inv_n - eps, inv_n - eps, 3 * eps, eps, eps, inv_n - 3 * eps] + [inv_n] * (m - 6)
    rest = [Fraction(1, 3)] * 3 + [Fraction(0)] * (m - 3)
    costs = [Additive(tuple(c1))] + [Additive(tuple(rest))] * (n - 1)
    inst = Instance(n=n, m=m, costs=tuple(costs))
    bundles = [frozenset({1, 2}), frozenset({0}) | frozenset(range(3, m))]
    bundles += [frozenset() for _ in range(n - 2)]
    alloc = Allocation(tuple(bundles))
    opt = 2 * inv_n + eps
    fair = Fraction(1, 3) + inv_n + 2 * eps
    return FamilyBundle(
        family_id="POF_2MMS_LB",
        params=(("n", n), ("epsilon", eps)),
        setting="additive",
        kind="price",
        instance=inst,
        reference_allocation=alloc,
        opt_cost=opt,
        price_checks=(PriceCheck(Criterion.MMS, Fraction(2), fair, fair / opt),),
    )


def _sub_pof_efx(epsilon) -> FamilyBundle:
    eps = _fr(epsilon)
    _require(0 < eps < Fraction(1, 8), "0 < epsilon < 1/8")
    c1 = Additive((Fraction(1, 2), Fraction(1, 2) - eps, eps))
    c2 = CappedAdditive((1 - eps, 3 * eps, 1 - 2 * eps), Fraction(1))
    inst = Instance(n=2, m=3, costs=(c1, c2))
    alloc = Allocation((frozenset({1, 2}), frozenset({0})))
    opt = Fraction(1, 2) + 4 * eps
    fair = Fraction(3, 2) - eps
    return FamilyBundle(
        family_id="SUB_POF_EFX",
        params=(("epsilon", eps),),
        setting="submodular",
        kind="price",
        instance=inst,
        reference_allocation=alloc,
        opt_cost=opt,
        price_checks=(PriceCheck(Criterion.EFX, Fraction(1), fair, fair / opt),),
    )


def _sub_pof_ef1(epsilon) -> FamilyBundle:
    eps = _fr(epsilon)
    _require(0 < eps < Fraction(1, 12), "0 < epsilon < 1/12")
    c1 = Additive((Fraction(1, 3) + eps, Fraction(1, 3), Fraction(1, 3) - eps))
    c2 = CappedAdditive((1 - eps, 1 - eps, eps), Fraction(1))
    inst = Instance(n=2, m=3, costs=(c1, c2))
    alloc = Allocation((frozenset({1}), frozenset({0, 2})))
    opt = Fraction(2, 3) + 2 * eps
    fair = Fraction(4, 3)
    return FamilyBundle(
        family_id="SUB_POF_EF1",
        params=(("epsilon", eps),),
        setting="submodular",
        kind="price",
        instance=inst,
        reference_allocation=alloc,
        opt_cost=opt,
        price_checks=(PriceCheck(Criterion.EF1, Fraction(1), fair, fair / opt),),
    )


def _sub_pof_pmms(epsilon) -> FamilyBundle:
    eps = _fr(epsilon)
    _require(0 < eps < Fraction(1, 22), "0 < epsilon < 1/22")
    c1 = Additive((Fraction(1, 2), Fraction(1, 2) - eps, eps))
    c2 = TableCost.from_subsets(
        3,
        {
            frozenset(): Fraction(0),
            frozenset({0}): 1 - 2 * eps,
            frozenset({1}): 10 * eps,
            frozenset({2}): 1 - 3 * eps,
            frozenset({0, 1}): Fraction(1),
            frozenset({0, 2}): Fraction(1),
            frozenset({1, 2}): 1 - eps,
            frozenset({0, 1, 2}): Fraction(1),
        },
    )
    inst = Instance(n=2, m=3, costs=(c1, c2))
    alloc = Allocation((frozenset({1, 2}), frozenset({0})))
    opt = Fraction(1, 2) + 11 * eps
    fair = Fraction(3, 2) - 2 * eps
    checks = tuple(
        PriceCheck(crit, Fraction(1), fair, fair / opt) for crit in (Criterion.PMMS, Criterion.MMS)
    )
    return FamilyBundle(
        family_id="SUB_POF_PMMS",
        params=(("epsilon", eps),),
        setting="submodular",
        kind="price",
        instance=inst,
        reference_allocation=alloc,
        opt_cost=opt,
        price_checks=checks,
    )


def _sub_pof_pmms32(epsilon) -> FamilyBundle:
    eps = _fr(epsilon)
    _require(0 < eps < Fraction(1, 16), "0 < epsilon < 1/16")
    c1 = Additive((Fraction(3, 8), Fraction(3, 8) + eps, Fraction(1, 8) - eps, Fraction(1, 8)))
    c2 = CappedAdditive((1 - eps, 1 - eps, eps, eps), Fraction(1))
    inst = Instance(n=2, m=4, costs=(c1, c2))
    alloc = Allocation((frozenset(), frozenset({0, 1, 2, 3})))
    opt = Fraction(3, 4) + 3 * eps
    fair = Fraction(1)
    return FamilyBundle(
        family_id="SUB_POF_PMMS32",
        params=(("epsilon", eps),),
        setting="submodular",
        kind="price",
        instance=inst,
        reference_allocation=alloc,
        opt_cost=opt,
        price_checks=(PriceCheck(Criterion.PMMS, Fraction(3, 2), fair, fair / opt),),
    )


_BUILDERS: dict[str, tuple[Callable[..., FamilyBundle], tuple[str, ...]]] = {
    "EF_MMS_TIGHT": (_ef_mms_tight, ("n", "alpha")),
    "EF_PMMS_TIGHT": (_ef_pmms_tight, ("n", "alpha")),
    "EF1_NOT_EFX": (_ef1_not_efx, ("n", "p")),
    "EF1_MMS_TIGHT": (_ef1_mms_tight, ("n", "alpha")),
    "EFX_MMS_LB_A": (_efx_mms_lb_a, ("n",)),
    "EFX_MMS_LB_B": (_efx_mms_lb_b, ("n", "alpha")),
    "EFX_PMMS_TIGHT": (_efx_pmms_tight, ("n", "alpha")),
    "EF1_PMMS_TIGHT": (_ef1_pmms_tight, ("n", "alpha")),
    "PMMS_NOT_EF1": (_pmms_not_ef1, ("n", "alpha", "epsilon")),
    "PMMS_MMS_N3_TIGHT": (_pmms_mms_n3_tight, ()),
    "PMMS_MMS_LB": (_pmms_mms_lb, ("n",)),
    "APMMS_MMS_LB": (_apmms_mms_lb, ("n", "alpha")),
    "MMS_NOT_PMMS": (_mms_not_pmms, ("n", "p")),
    "MMS_NOT_EF1": (_mms_not_ef1, ("n", "p")),
    "SUB_EF_COVERAGE": (_sub_ef_coverage, ("n",)),
    "SUB_PMMS_CAPPED": (_sub_pmms_capped, ()),
    "SUB_PMMS_MMS_TIGHT": (_sub_pmms_mms_tight, ("n", "alpha")),
    "POF_EF1_N2": (_pof_ef1_n2, ("epsilon",)),
    "POF_PMMS32_N2": (_pof_pmms32_n2, ("epsilon",)),
    "POF_PMMS_N2": (_pof_pmms_n2, ("epsilon",)),
    "POF_N3_UNBOUNDED": (_pof_n3_unbounded, ("n", "m", "epsilon")),
    "POF_MMS_LB": (_pof_mms_lb, ("n", "epsilon")),
    "POF_2MMS_LB": (_pof_2mms_lb, ("n", "epsilon")),
    "SUB_POF_EFX": (_sub_pof_efx, ("epsilon",)),
    "SUB_POF_EF1": (_sub_pof_ef1, ("epsilon",)),
    "SUB_POF_PMMS": (_sub_pof_pmms, ("epsilon",)),
    "SUB_POF_PMMS32": (_sub_pof_pmms32, ("epsilon",)),
}

FAMILY_IDS = tuple(_BUILDERS)


def make_family(family_id: str, **params) -> FamilyBundle:
    """Instantiate a catalog family; invalid parameters raise with the constraint."""
    if family_id not in _BUILDERS:
        raise ArgumentError(f"unknown family {family_id!r}; known ids: {', '.join(FAMILY_IDS)}")
    builder, names = _BUILDERS[family_id]
    unknown = set(params) - set(names)
    if unknown:
        raise ArgumentError(f"family {family_id} takes parameters {names}, not {sorted(unknown)}")
    missing = [name for name in names if name not in params]
    if missing:
        raise ArgumentError(f"family {family_id} requires parameters {missing}")
    return builder(**{name: params[name] for name in names})


def family_params(family_id: str) -> tuple[str, ...]:
    if family_id not in _BUILDERS:
        raise ArgumentError(f"unknown family {family_id!r}")
    return _BUILDERS[family_id][1]


def valid_params(family_id: str, **params) -> bool:
    try:
        make_family(family_id, **params)
        return True
    except ArgumentError:
        return False


def family_to_json(bundle: FamilyBundle) -> dict:
    from .model import allocation_to_json, instance_to_json

    def ext(v: ExtendedRational) -> str:
        return rational_str(v)

    expected: dict[str, object] = {}
    if bundle.source is not None:
        expected["source_criterion"] = bundle.source[0].value
        expected["source_alpha"] = ext(bundle.source[1])
    for crit, value in bundle.expected_alphas:
        expected[f"min_alpha_{crit.value}"] = ext(value)
    for name, value in bundle.expected_values:
        expected[name] = ext(value)
    if bundle.opt_cost is not None:
        expected["opt_cost"] = ext(bundle.opt_cost)
    for check in bundle.price_checks:
        tag = f"{check.criterion.value}@{check.alpha}"
        expected[f"fair_cost[{tag}]"] = ext(check.fair_cost)
        expected[f"price[{tag}]"] = ext(check.price)
    return {
        "family_id": bundle.family_id,
        "params": {k: (v if isinstance(v, int) else rational_str(v)) for k, v in bundle.params},
        "setting": bundle.setting,
        "kind": bundle.kind,
        "instance": instance_to_json(bundle.instance),
        "reference_allocation": allocation_to_json(bundle.reference_allocation),
        "expected": expected,
    }
