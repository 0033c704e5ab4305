"""Command-line front end.

Subcommands: eval, mms, allocate, search, family, verify. Structured output
is JSON on stdout; verification matrices are CSV. Exit codes: 0 success,
1 internal failure, 2 input/precondition error, 3 verification failures.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

from .allocate import (
    alg1_two_agent_ef1,
    best_round_robin_order,
    optimal_allocation,
    pmms32_two_agent,
    round_robin,
)
from .criteria import DEFAULT_CRITERIA, Criterion, fairness_report
from .errors import ChoreFairError, InternalError
from .families import family_params, family_to_json, make_family
from .mms import mms_share_additive_fast, mms_value
from .model import (
    Additive,
    allocation_from_json,
    allocation_to_json,
    instance_from_json,
    parse_rational,
    rational_str,
)
from .search import (
    CSV_COLUMNS,
    best_fair_allocation,
    reports_to_csv_rows,
    verify_connections,
    verify_lemmas,
    verify_prices,
)

_JSON_KW = dict(separators=(",", ":"), default=str)


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise ChoreFairError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ChoreFairError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc


def _load_instance(path: str):
    return instance_from_json(_load_json(path))


def _parse_int_list(text: str) -> list[int]:
    if not text.strip():
        return []
    try:
        return [int(part) for part in text.split(",")]
    except ValueError as exc:
        raise ChoreFairError(f"expected a comma-separated integer list, got {text!r}") from exc


def _cmd_eval(args) -> int:
    inst = _load_instance(args.instance)
    alloc = allocation_from_json(_load_json(args.allocation))
    criteria = DEFAULT_CRITERIA
    if args.criteria:
        criteria = tuple(Criterion.parse(name) for name in args.criteria.split(","))
    report = fairness_report(inst, alloc, criteria)
    print(json.dumps(report.alpha_str(), **_JSON_KW))
    return 0


def _cmd_mms(args) -> int:
    inst = _load_instance(args.instance)
    chores = frozenset(_parse_int_list(args.chores)) if args.chores is not None else None
    if args.enumerate:
        from .mms import mms_share

        result = mms_share(inst, args.agent, args.k, chores)
    elif isinstance(inst.costs[args.agent], Additive):
        result = mms_share_additive_fast(inst, args.agent, args.k, chores)
    else:
        result = mms_value(inst, args.agent, args.k, chores)
    print(
        json.dumps(
            {"value": rational_str(result.value), "witness": [sorted(b) for b in result.witness]},
            **_JSON_KW,
        )
    )
    return 0


_ALGORITHMS = ("round_robin", "alg1", "pmms32", "optimal", "best_rr_order")


def _cmd_allocate(args) -> int:
    inst = _load_instance(args.instance)
    if args.algorithm == "round_robin":
        order = _parse_int_list(args.order) if args.order else None
        outcome = round_robin(inst, order)
    elif args.algorithm == "alg1":
        outcome = alg1_two_agent_ef1(inst, normalize_input=args.normalize)
    elif args.algorithm == "pmms32":
        outcome = pmms32_two_agent(inst, normalize_input=args.normalize)
    elif args.algorithm == "optimal":
        outcome = optimal_allocation(inst)
    else:
        outcome = best_round_robin_order(inst)
    payload = {
        "allocation": allocation_to_json(outcome.allocation),
        "social_cost": rational_str(outcome.social_cost),
    }
    if args.trace:
        payload["trace"] = list(outcome.trace)
    print(json.dumps(payload, **_JSON_KW))
    return 0


def _cmd_search(args) -> int:
    inst = _load_instance(args.instance)
    crit = Criterion.parse(args.criterion)
    report = best_fair_allocation(inst, crit, parse_rational(args.alpha))
    payload = {
        "instance_digest": report.instance_digest,
        "criterion": crit.value,
        "alpha": rational_str(report.alpha),
        "fair_exists": report.fair_exists,
        "opt_cost": rational_str(report.opt_cost),
        "best_fair_cost": rational_str(report.best_fair_cost) if report.fair_exists else None,
        "price": rational_str(report.price) if report.fair_exists else None,
        "witness": allocation_to_json(report.witness) if report.witness else None,
    }
    print(json.dumps(payload, **_JSON_KW))
    return 0


def _cmd_family(args) -> int:
    params: dict = {}
    for name, raw in (("n", args.n), ("m", args.m), ("p", args.p)):
        if raw is not None:
            params[name] = raw
    for name, raw in (("alpha", args.alpha), ("epsilon", args.epsilon)):
        if raw is not None:
            params[name] = parse_rational(raw)
    wanted = family_params(args.id)
    params = {k: v for k, v in params.items() if k in wanted}
    bundle = make_family(args.id, **params)
    print(json.dumps(family_to_json(bundle), **_JSON_KW))
    return 0


def _cmd_verify(args) -> int:
    epsilon = parse_rational(args.epsilon) if args.epsilon else Fraction(1, 100)
    n_values = tuple(range(2, args.n_max + 1))
    rows = []
    if args.suite in ("connections", "all"):
        rows.extend(verify_connections(n_values=n_values, epsilon=epsilon))
    if args.suite in ("prices", "all"):
        if args.seed is None:
            raise ChoreFairError("the prices suite runs randomized sweeps; pass --seed")
        rows.extend(
            verify_prices(
                epsilon=epsilon,
                n_values=tuple(v for v in n_values if v >= 3),
                sweep_count=args.count,
                seed=args.seed,
            )
        )
    if args.suite in ("lemmas", "all"):
        if args.seed is None:
            raise ChoreFairError("the lemmas suite runs randomized sweeps; pass --seed")
        rows.extend(verify_lemmas(count=args.count, seed=args.seed))
    with open(args.out, "w", encoding="utf-8", newline="") as handle:
        writer = csv.DictWriter(handle, fieldnames=CSV_COLUMNS)
        writer.writeheader()
        for row in reports_to_csv_rows(rows):
            writer.writerow(row)
    failures = [row for row in rows if not row.passed]
    print(f"{len(rows) - len(failures)}/{len(rows)} checks passed; report written to {args.out}")
    for row in failures:
        print(f"FAIL {row.proposition_id}: expected {row.expected}, observed {row.observed}")
    return 3 if failures else 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chorefair",
        description="Exact fairness analysis for allocating indivisible chores.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="minimal fairness factors of an allocation")
    p_eval.add_argument("--instance", required=True)
    p_eval.add_argument("--allocation", required=True)
    p_eval.add_argument("--criteria", help="comma list, e.g. EF,EFX,EF1,MMS,PMMS")
    p_eval.set_defaults(func=_cmd_eval)

    p_mms = sub.add_parser("mms", help="exact maximin share of one agent")
    p_mms.add_argument("--instance", required=True)
    p_mms.add_argument("--agent", type=int, required=True)
    p_mms.add_argument("--k", type=int, required=True)
    p_mms.add_argument("--chores", help="comma list of chore indices (default: all)")
    p_mms.add_argument("--enumerate", action="store_true", help="force partition enumeration")
    p_mms.set_defaults(func=_cmd_mms)

    p_alloc = sub.add_parser("allocate", help="run an allocation algorithm")
    p_alloc.add_argument("--instance", required=True)
    p_alloc.add_argument("--algorithm", choices=_ALGORITHMS, required=True)
    p_alloc.add_argument("--order", help="agent order for round_robin, e.g. 0,1,2")
    p_alloc.add_argument("--trace", action="store_true")
    p_alloc.add_argument("--normalize", action="store_true", help="rescale input before alg1/pmms32")
    p_alloc.set_defaults(func=_cmd_allocate)

    p_search = sub.add_parser("search", help="cheapest allocation meeting a fairness level")
    p_search.add_argument("--instance", required=True)
    p_search.add_argument("--criterion", required=True)
    p_search.add_argument("--alpha", required=True)
    p_search.set_defaults(func=_cmd_search)

    p_family = sub.add_parser("family", help="emit a catalog instance family")
    p_family.add_argument("--id", required=True)
    p_family.add_argument("--n", type=int)
    p_family.add_argument("--m", type=int)
    p_family.add_argument("--p", type=int)
    p_family.add_argument("--alpha")
    p_family.add_argument("--epsilon")
    p_family.set_defaults(func=_cmd_family)

    p_verify = sub.add_parser("verify", help="run a verification suite and write CSV")
    p_verify.add_argument("--suite", choices=("connections", "prices", "lemmas", "all"), required=True)
    p_verify.add_argument("--out", required=True)
    p_verify.add_argument("--n-max", type=int, default=5, dest="n_max")
    p_verify.add_argument("--epsilon")
    p_verify.add_argument("--seed", type=int)
    p_verify.add_argument("--count", type=int, default=200, help="sweep size for randomized rows")
    p_verify.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InternalError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    except ChoreFairError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal-error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
