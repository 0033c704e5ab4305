"""Brute-force search oracles and proposition-verification suites.

Everything here enumerates: all allocations of an instance, the cheapest
allocation meeting a fairness level, per-instance prices of fairness, and
sweeps that re-derive the catalog families' exact expectations.
"""

from __future__ import annotations

import itertools
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence

from .criteria import Criterion, context_for, implied_guarantee, min_alpha
from .errors import ArgumentError, NoFairAllocationError, NotInTableError, SizeGuardError
from .families import FAMILY_IDS, FamilyBundle, make_family, valid_params
from .mms import mms_value
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
    instance_digest,
    parse_rational,
    rational_str,
)

__all__ = [
    "SearchReport",
    "PropositionReport",
    "enumerate_allocations",
    "best_fair_allocation",
    "price_of_fairness",
    "random_instance",
    "verify_connections",
    "verify_prices",
    "verify_lemmas",
    "reports_to_csv_rows",
]

ENUMERATION_GUARD = 2_000_000


@dataclass(frozen=True)
class SearchReport:
    instance_digest: str
    criterion: Criterion
    alpha: ExtendedRational
    fair_exists: bool
    best_fair_cost: Fraction | None
    opt_cost: Fraction
    price: ExtendedRational | None
    witness: Allocation | None


@dataclass(frozen=True)
class PropositionReport:
    proposition_id: str
    n: int | None
    alpha: Fraction | None
    epsilon: Fraction | None
    expected: str
    observed: str
    status: str  # "pass" | "fail"

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def _report(prop_id, expected, observed, ok, n=None, alpha=None, epsilon=None) -> PropositionReport:
    return PropositionReport(
        proposition_id=prop_id,
        n=n,
        alpha=alpha,
        epsilon=epsilon,
        expected=expected,
        observed=observed,
        status="pass" if ok else "fail",
    )


def enumerate_allocations(m: int, n: int) -> Iterator[Allocation]:
    """All n^m assignments, in lexicographic order of the assignment vector."""
    count = n**m
    if count > ENUMERATION_GUARD:
        raise SizeGuardError(f"{count} allocations exceed the enumeration guard {ENUMERATION_GUARD}")
    for assignment in itertools.product(range(n), repeat=m):
        yield Allocation.from_assignment(assignment, n)


def _scan_masks(inst: Instance) -> Iterator[tuple[int, ...]]:
    for assignment in itertools.product(range(inst.n), repeat=inst.m):
        masks = [0] * inst.n
        for chore, agent in enumerate(assignment):
            masks[agent] |= 1 << chore
        yield tuple(masks)


def best_fair_allocation(inst: Instance, criterion: Criterion, alpha) -> SearchReport:
    """Cheapest allocation whose minimal alpha for ``criterion`` is <= alpha."""
    if not isinstance(alpha, float):
        alpha = parse_rational(alpha)
        if alpha < 1:
            raise ArgumentError(f"alpha must be >= 1, got {alpha}")
    count = inst.n**inst.m
    if count > ENUMERATION_GUARD:
        raise SizeGuardError(f"{count} allocations exceed the enumeration guard {ENUMERATION_GUARD}")
    ctx = context_for(inst)
    opt_cost: Fraction | None = None
    best_fair: Fraction | None = None
    best_masks: tuple[int, ...] | None = None
    for masks in _scan_masks(inst):
        cost = Fraction(0)
        for agent in range(inst.n):
            cost += ctx.bundle_cost(agent, masks[agent])
        if opt_cost is None or cost < opt_cost:
            opt_cost = cost
        if best_fair is not None and cost >= best_fair:
            continue  # cannot improve the fair optimum; skip the alpha check
        value, _, _ = ctx.min_alpha_masks(masks, criterion)
        if value <= alpha:
            best_fair = cost
            best_masks = masks
    assert opt_cost is not None
    fair_exists = best_fair is not None
    price: ExtendedRational | None = None
    if fair_exists:
        assert best_fair is not None
        if opt_cost > 0:
            price = best_fair / opt_cost
        else:
            price = Fraction(1) if best_fair == 0 else INFINITY
    witness = None
    if best_masks is not None:
        from .model import set_of

        witness = Allocation(tuple(set_of(mask) for mask in best_masks))
    return SearchReport(
        instance_digest=instance_digest(inst),
        criterion=criterion,
        alpha=alpha,
        fair_exists=fair_exists,
        best_fair_cost=best_fair,
        opt_cost=opt_cost,
        price=price,
        witness=witness,
    )


def price_of_fairness(inst: Instance, criterion: Criterion, alpha) -> ExtendedRational:
    report = best_fair_allocation(inst, criterion, alpha)
    if not report.fair_exists:
        raise NoFairAllocationError(
            f"no allocation satisfies {alpha}-{criterion.value} for this instance"
        )
    assert report.price is not None
    return report.price


# ---------------------------------------------------------------------------
# Random instances
# ---------------------------------------------------------------------------

_MAX_RAW_VALUE = 100


def _random_additive(rng: random.Random, m: int) -> Additive:
    raw = [rng.randint(0, _MAX_RAW_VALUE) for _ in range(m)]
    if sum(raw) == 0:
        raw[rng.randrange(m)] = 1
    total = sum(raw)
    return Additive(tuple(Fraction(v, total) for v in raw))


def _random_cost(rng: random.Random, m: int) -> CostFunction:
    kind = rng.choice(("additive", "capped_additive", "row_coverage", "capped_cardinality"))
    if kind == "additive":
        return _random_additive(rng, m)
    if kind == "capped_additive":
        raw = [rng.randint(0, _MAX_RAW_VALUE) for _ in range(m)]
        if sum(raw) == 0:
            raw[rng.randrange(m)] = 1
        cap = rng.randint(max(1, sum(raw) // 2), sum(raw))
        # Scaled by the cap so the full set costs exactly 1.
        return CappedAdditive(tuple(Fraction(v, cap) for v in raw), Fraction(1))
    if kind == "row_coverage":
        groups: dict[int, list[int]] = {}
        count = rng.randint(1, m)
        for chore in range(m):
            groups.setdefault(rng.randrange(count), []).append(chore)
        rows = tuple(tuple(r) for r in groups.values())
        raw = [rng.randint(1, _MAX_RAW_VALUE) for _ in rows]
        total = sum(raw)
        return RowCoverage(rows=rows, weights=tuple(Fraction(v, total) for v in raw))
    return CappedCardinality(cap=rng.randint(1, m))


def random_instance(n: int, m: int, setting: str = "additive", seed: int = 0) -> Instance:
    """Seeded random instance; additive instances are normalized exactly.

    The submodular setting mixes the built-in variant families per agent;
    capped-cardinality costs cannot be rescaled, so those agents keep their
    integral scale.
    """
    if n < 1 or m < 1:
        raise ArgumentError(f"need n >= 1 and m >= 1, got n={n}, m={m}")
    if setting not in ("additive", "submodular"):
        raise ArgumentError(f"setting must be 'additive' or 'submodular', got {setting!r}")
    rng = random.Random((seed, n, m, setting).__repr__())
    if setting == "additive":
        costs = tuple(_random_additive(rng, m) for _ in range(n))
    else:
        costs = tuple(_random_cost(rng, m) for _ in range(n))
    return Instance(n=n, m=m, costs=costs)


def random_allocation(n: int, m: int, seed: int = 0) -> Allocation:
    rng = random.Random((seed, n, m, "allocation").__repr__())
    return Allocation.from_assignment([rng.randrange(n) for _ in range(m)], n)


# ---------------------------------------------------------------------------
# Verification suites
# ---------------------------------------------------------------------------

CONNECTION_GRID_ALPHAS = (Fraction(1), Fraction(5, 4), Fraction(3, 2), Fraction(2))
CONNECTION_GRID_P = (3, 10, 50)


def _connection_param_grid(
    family_id: str,
    n_values: Sequence[int],
    alphas: Sequence[Fraction],
    epsilon: Fraction,
    p_values: Sequence[int],
) -> list[dict]:
    from .families import family_params

    names = family_params(family_id)
    pools: list[list] = []
    for name in names:
        if name == "n":
            pools.append(list(n_values))
        elif name == "alpha":
            pools.append(list(alphas))
        elif name == "epsilon":
            pools.append([epsilon])
        elif name == "p":
            pools.append(list(p_values))
        elif name == "m":
            pools.append([6])
        else:  # pragma: no cover - no other parameter names exist
            raise ArgumentError(f"unknown parameter {name}")
    out = []
    for combo in itertools.product(*pools):
        params = dict(zip(names, combo))
        if valid_params(family_id, **params):
            out.append(params)
    return out


def _params_str(params: dict) -> str:
    if not params:
        return ""
    return "[" + ",".join(f"{k}={v}" for k, v in params.items()) + "]"


def _check_family_connections(bundle: FamilyBundle) -> list[PropositionReport]:
    rows: list[PropositionReport] = []
    params = bundle.params_dict
    n = bundle.instance.n
    alpha = params.get("alpha")
    epsilon = params.get("epsilon")
    label = bundle.family_id + _params_str(params)
    src_crit, src_alpha = bundle.source  # connection families always set it
    for crit, expected in bundle.expected_alphas:
        measured = min_alpha(bundle.instance, bundle.reference_allocation, crit)
        rows.append(
            _report(
                f"{label}:min_alpha[{crit.value}]",
                rational_str(expected),
                rational_str(measured),
                measured == expected,
                n=n,
                alpha=alpha,
                epsilon=epsilon,
            )
        )
        if crit is src_crit:
            continue
        try:
            guarantee = implied_guarantee(src_crit, src_alpha, crit, n, bundle.setting)
        except (ArgumentError, NotInTableError):
            continue
        if guarantee.kind == "bound":
            rows.append(
                _report(
                    f"{label}:guarantee[{src_crit.value}->{crit.value}]",
                    f"<= {rational_str(guarantee.value)}",
                    rational_str(measured),
                    measured <= guarantee.value,
                    n=n,
                    alpha=alpha,
                    epsilon=epsilon,
                )
            )
        elif guarantee.kind == "trivial_only" and crit in (Criterion.MMS, Criterion.PMMS):
            rows.append(
                _report(
                    f"{label}:trivial_bound[{crit.value}]",
                    f"<= {rational_str(guarantee.value)}",
                    rational_str(measured),
                    measured <= guarantee.value,
                    n=n,
                    alpha=alpha,
                    epsilon=epsilon,
                )
            )
    return rows


def _connection_task(args: tuple) -> list[PropositionReport]:
    family_id, params = args
    return _check_family_connections(make_family(family_id, **params))


def _parallel_tasks(worker: Callable, tasks: list) -> list:
    threads = int(os.environ.get("CHOREFAIR_THREADS", "1") or "1")
    if threads > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(worker, tasks))
    return [worker(task) for task in tasks]


def verify_connections(
    family_ids: Iterable[str] | None = None,
    n_values: Sequence[int] = (2, 3, 4, 5),
    alphas: Sequence[Fraction] = CONNECTION_GRID_ALPHAS,
    epsilon: Fraction = Fraction(1, 1000),
    p_values: Sequence[int] = CONNECTION_GRID_P,
) -> list[PropositionReport]:
    """Re-measure every connection family's exact alphas on its grid."""
    ids = list(family_ids) if family_ids is not None else list(FAMILY_IDS)
    tasks = []
    for family_id in ids:
        probe = None
        for params in _connection_param_grid(family_id, n_values, alphas, epsilon, p_values):
            probe = make_family(family_id, **params) if probe is None else probe
            if probe.kind != "connection":
                break
            tasks.append((family_id, params))
    rows: list[PropositionReport] = []
    for chunk in _parallel_tasks(_connection_task, tasks):
        rows.extend(chunk)
    return _canonical(rows)


def _check_family_price(bundle: FamilyBundle) -> list[PropositionReport]:
    rows: list[PropositionReport] = []
    params = bundle.params_dict
    n = bundle.instance.n
    epsilon = params.get("epsilon")
    label = bundle.family_id + _params_str(params)
    first = best_fair_allocation(bundle.instance, bundle.price_checks[0].criterion, bundle.price_checks[0].alpha)
    rows.append(
        _report(
            f"{label}:opt_cost",
            rational_str(bundle.opt_cost),
            rational_str(first.opt_cost),
            first.opt_cost == bundle.opt_cost,
            n=n,
            epsilon=epsilon,
        )
    )
    for check in bundle.price_checks:
        report = best_fair_allocation(bundle.instance, check.criterion, check.alpha)
        tag = f"{check.criterion.value}@{check.alpha}"
        ok = report.fair_exists and report.best_fair_cost == check.fair_cost
        rows.append(
            _report(
                f"{label}:fair_cost[{tag}]",
                rational_str(check.fair_cost),
                rational_str(report.best_fair_cost) if report.fair_exists else "none",
                ok,
                n=n,
                alpha=check.alpha,
                epsilon=epsilon,
            )
        )
        rows.append(
            _report(
                f"{label}:price[{tag}]",
                rational_str(check.price),
                rational_str(report.price) if report.fair_exists else "none",
                report.fair_exists and report.price == check.price,
                n=n,
                alpha=check.alpha,
                epsilon=epsilon,
            )
        )
        ref_alpha = min_alpha(bundle.instance, bundle.reference_allocation, check.criterion)
        rows.append(
            _report(
                f"{label}:reference_is_fair[{tag}]",
                f"<= {check.alpha}",
                rational_str(ref_alpha),
                ref_alpha <= check.alpha,
                n=n,
                alpha=check.alpha,
                epsilon=epsilon,
            )
        )
    return rows


def _price_task(args: tuple) -> list[PropositionReport]:
    family_id, params = args
    return _check_family_price(make_family(family_id, **params))


_PRICE_SWEEP_BOUNDS = (
    ("price-EF1<=5/4", Criterion.EF1, Fraction(1), Fraction(5, 4)),
    ("price-3/2-PMMS<=7/6", Criterion.PMMS, Fraction(3, 2), Fraction(7, 6)),
    ("price-PMMS<=2", Criterion.PMMS, Fraction(1), Fraction(2)),
    ("price-MMS<=2", Criterion.MMS, Fraction(1), Fraction(2)),
    ("price-EFX<=2", Criterion.EFX, Fraction(1), Fraction(2)),
    ("price-2-MMS=1", Criterion.MMS, Fraction(2), Fraction(1)),
)


def verify_prices(
    family_ids: Iterable[str] | None = None,
    epsilon: Fraction = Fraction(1, 100),
    n_values: Sequence[int] = (3, 4),
    sweep_count: int = 200,
    sweep_max_chores: int = 8,
    seed: int = 0,
) -> list[PropositionReport]:
    """Exact per-family price checks plus two-agent price-bound sweeps."""
    ids = list(family_ids) if family_ids is not None else list(FAMILY_IDS)
    tasks = []
    for family_id in ids:
        for params in _connection_param_grid(family_id, n_values, CONNECTION_GRID_ALPHAS, epsilon, CONNECTION_GRID_P):
            bundle = make_family(family_id, **params)
            if bundle.kind != "price":
                break
            tasks.append((family_id, params))
    rows: list[PropositionReport] = []
    for chunk in _parallel_tasks(_price_task, tasks):
        rows.extend(chunk)

    for name, crit, level, bound in _PRICE_SWEEP_BOUNDS:
        worst: ExtendedRational = Fraction(1)
        ok = True
        for trial in range(sweep_count):
            rng = random.Random((seed, name, trial).__repr__())
            inst = random_instance(2, rng.randint(2, sweep_max_chores), "additive", seed=seed * 1_000_003 + trial)
            price = price_of_fairness(inst, crit, level)
            if price > worst:
                worst = price
            if price > bound or (bound == 1 and price != 1):
                ok = False
        rows.append(
            _report(
                f"sweep:{name}(count={sweep_count})",
                f"<= {rational_str(bound)}",
                rational_str(worst),
                ok,
                n=2,
                alpha=level,
                epsilon=epsilon,
            )
        )
    return _canonical(rows)


def _lemma_instances(count: int, seed: int) -> Iterator[tuple[int, Instance, Allocation]]:
    rng = random.Random(("lemma-sweep", seed).__repr__())
    for trial in range(count):
        n = rng.randint(2, 4)
        m = rng.randint(2, 8)
        setting = "additive" if trial % 2 == 0 else "submodular"
        inst = random_instance(n, m, setting, seed=seed * 7_777_777 + trial)
        alloc = random_allocation(n, m, seed=seed * 3_333_331 + trial)
        yield trial, inst, alloc


def verify_lemmas(count: int = 1000, seed: int = 0) -> list[PropositionReport]:
    """Property sweeps for the structural share lemmas.

    Checks, per random instance and random allocation: the share lower
    bounds (a k-way share is at least c(S)/k and at least every single-chore
    cost), the universal 2-PMMS and n-MMS guarantees, monotonicity of the
    half-split share under set inclusion, the 3/2 gap forced by a
    multi-chore max block, and the union bound for half-split shares of
    disjoint sets (additive costs).
    """
    failures: dict[str, str] = {}
    counts: dict[str, int] = {}

    def note(name: str, ok: bool, detail: str) -> None:
        counts[name] = counts.get(name, 0) + 1
        if not ok and name not in failures:
            failures[name] = detail

    for trial, inst, alloc in _lemma_instances(count, seed):
        rng = random.Random(("lemma-subsets", seed, trial).__repr__())
        agent = rng.randrange(inst.n)
        chores = list(range(inst.m))
        subset = frozenset(e for e in chores if rng.random() < 0.6)
        superset = subset | frozenset(e for e in chores if rng.random() < 0.5)

        # Share lower bounds, on the full set and a random subset.
        for s in (frozenset(chores), subset):
            for k in range(1, inst.n + 1):
                share = mms_value(inst, agent, k, s).value
                total = inst.cost(agent, s)
                singles_ok = all(inst.cost(agent, [e]) <= share for e in s)
                note(
                    "share-lower-bounds",
                    share * k >= total and singles_ok,
                    f"trial {trial}: MMS({k}, |S|={len(s)})={share} vs c(S)={total}",
                )

        # Universal guarantees for an arbitrary allocation.
        note(
            "any-allocation-2-PMMS",
            min_alpha(inst, alloc, Criterion.PMMS) <= 2,
            f"trial {trial}",
        )
        note(
            "any-allocation-n-MMS",
            min_alpha(inst, alloc, Criterion.MMS) <= inst.n,
            f"trial {trial}",
        )

        # Half-split share is monotone under inclusion.
        low = mms_value(inst, agent, 2, subset).value
        high = mms_value(inst, agent, 2, superset).value
        note("half-split-monotone", low <= high, f"trial {trial}: {low} > {high}")

        if inst.is_additive():
            # A multi-chore max block forces a 3/2 gap between c(S) and the share.
            result = mms_value(inst, agent, 2, subset)
            total = inst.cost(agent, subset)
            if result.value > 0:
                for block in result.witness:
                    if inst.cost(agent, block) == result.value and len(block) >= 2:
                        note(
                            "multi-chore-max-block-gap",
                            total * 2 >= 3 * result.value,
                            f"trial {trial}: c(S)={total}, share={result.value}",
                        )
                        break

            # Union bound for disjoint sets.
            part_a = frozenset(e for e in chores if rng.random() < 0.5)
            part_b = frozenset(e for e in chores if e not in part_a and rng.random() < 0.7)
            whole = mms_value(inst, agent, 2, part_a | part_b).value
            alone = mms_value(inst, agent, 2, part_a).value
            if whole > alone:
                bound = inst.cost(agent, part_a) / 2 + inst.cost(agent, part_b)
                note(
                    "disjoint-union-share-bound",
                    whole <= bound,
                    f"trial {trial}: {whole} > {bound}",
                )

    rows = []
    for name in sorted(counts):
        detail = failures.get(name)
        rows.append(
            _report(
                f"lemma:{name}(count={counts[name]},seed={seed})",
                "holds",
                "holds" if detail is None else f"violated: {detail}",
                detail is None,
            )
        )
    return _canonical(rows)


def _canonical(rows: list[PropositionReport]) -> list[PropositionReport]:
    return sorted(
        rows,
        key=lambda r: (
            r.proposition_id,
            r.n if r.n is not None else -1,
            r.alpha if r.alpha is not None else Fraction(-1),
            r.epsilon if r.epsilon is not None else Fraction(-1),
        ),
    )


CSV_COLUMNS = ("proposition_id", "n", "alpha", "epsilon", "expected", "observed", "status")


def reports_to_csv_rows(rows: Sequence[PropositionReport]) -> list[dict[str, str]]:
    out = []
    for row in rows:
        out.append(
            {
                "proposition_id": row.proposition_id,
                "n": "" if row.n is None else str(row.n),
                "alpha": "" if row.alpha is None else rational_str(row.alpha),
                "epsilon": "" if row.epsilon is None else rational_str(row.epsilon),
                "expected": row.expected,
                "observed": row.observed,
                "status": row.status,
            }
        )
    return out
