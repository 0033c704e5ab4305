"""Command-line interface: outputs, schemas, exit codes."""

from __future__ import annotations

import csv
import json

import pytest

from chorefair.cli import main

INSTANCE_JSON = {
    "n": 3,
    "m": 7,
    "agents": [
        {"cost": {"type": "additive", "values": ["2", "3", "3", "0", "4", "2", "1"]}},
        {"cost": {"type": "additive", "values": ["3", "1", "3", "2", "5", "0", "5"]}},
        {"cost": {"type": "additive", "values": ["1", "5", "10", "2", "3", "1", "3"]}},
    ],
}


@pytest.fixture()
def instance_file(tmp_path):
    path = tmp_path / "instance.json"
    path.write_text(json.dumps(INSTANCE_JSON))
    return str(path)


def _write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


def test_eval_reference_output(tmp_path, instance_file, capsys):
    alloc = _write(tmp_path, "b.json", {"bundles": [[0, 4, 6], [1, 3, 5], [2]]})
    assert main(["eval", "--instance", instance_file, "--allocation", alloc]) == 0
    out = capsys.readouterr().out.strip()
    assert out == '{"EF":"7/3","EFX":"2","EF1":"1","MMS":"7/5","PMMS":"7/5"}'


def test_eval_criteria_subset(tmp_path, instance_file, capsys):
    alloc = _write(tmp_path, "a.json", {"bundles": [[0, 3, 6], [1, 2, 5], [4]]})
    assert main(["eval", "--instance", instance_file, "--allocation", alloc, "--criteria", "EF,EFX_STRONG"]) == 0
    assert json.loads(capsys.readouterr().out) == {"EF": "1", "EFX_STRONG": "1"}


def test_eval_empty_instance(tmp_path, capsys):
    inst = _write(tmp_path, "empty.json", {"n": 2, "m": 0, "agents": [
        {"cost": {"type": "additive", "values": []}},
        {"cost": {"type": "additive", "values": []}},
    ]})
    alloc = _write(tmp_path, "alloc.json", {"bundles": [[], []]})
    assert main(["eval", "--instance", inst, "--allocation", alloc]) == 0
    assert set(json.loads(capsys.readouterr().out).values()) == {"1"}


def test_eval_partition_violation_exits_2(tmp_path, instance_file, capsys):
    alloc = _write(tmp_path, "bad.json", {"bundles": [[0, 4], [1, 3, 5], [2]]})
    assert main(["eval", "--instance", instance_file, "--allocation", alloc]) == 2
    assert "validation-error" in capsys.readouterr().err


def test_parse_error_has_location(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text('{"n": 1,\n  "m": }')
    alloc = _write(tmp_path, "a.json", {"bundles": [[]]})
    assert main(["eval", "--instance", str(path), "--allocation", alloc]) == 2
    assert ":2:" in capsys.readouterr().err


def test_mms_subcommand(tmp_path, instance_file, capsys):
    assert main(["mms", "--instance", instance_file, "--agent", "1", "--k", "3"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["value"] == "7"
    assert sorted(sum(payload["witness"], [])) == list(range(7))
    assert main(["mms", "--instance", instance_file, "--agent", "1", "--k", "3", "--enumerate"]) == 0
    assert json.loads(capsys.readouterr().out)["value"] == "7"


def test_mms_subset_flag(tmp_path, instance_file, capsys):
    assert main(["mms", "--instance", instance_file, "--agent", "0", "--k", "2", "--chores", "0,2,4,6"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["value"] == "5"
    assert sorted(sum(payload["witness"], [])) == [0, 2, 4, 6]


def test_allocate_optimal(tmp_path, instance_file, capsys):
    assert main(["allocate", "--instance", instance_file, "--algorithm", "optimal"]) == 0
    assert json.loads(capsys.readouterr().out)["social_cost"] == "9"


def test_allocate_round_robin_with_trace(tmp_path, instance_file, capsys):
    assert main([
        "allocate", "--instance", instance_file, "--algorithm", "round_robin",
        "--order", "2,0,1", "--trace",
    ]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["trace"][0] == {"op": "order", "order": [2, 0, 1]}


def test_allocate_order_length_mismatch(tmp_path, instance_file, capsys):
    assert main([
        "allocate", "--instance", instance_file, "--algorithm", "round_robin", "--order", "0,1",
    ]) == 2
    assert "argument-error" in capsys.readouterr().err


def test_allocate_alg1_mismatch_exits_2(instance_file, capsys):
    assert main(["allocate", "--instance", instance_file, "--algorithm", "alg1"]) == 2
    assert "precondition-failed" in capsys.readouterr().err


def test_allocate_alg1_on_price_family(tmp_path, capsys):
    assert main(["family", "--id", "POF_EF1_N2", "--epsilon", "1/100"]) == 0
    family = json.loads(capsys.readouterr().out)
    inst = _write(tmp_path, "fam.json", family["instance"])
    assert main(["allocate", "--instance", inst, "--algorithm", "alg1"]) == 0
    assert json.loads(capsys.readouterr().out)["social_cost"] == "253/300"


def test_search_subcommand(tmp_path, instance_file, capsys):
    assert main(["search", "--instance", instance_file, "--criterion", "EF", "--alpha", "1"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["fair_exists"] is True
    assert payload["opt_cost"] == "9"
    assert payload["price"] == "1"


def test_family_unknown_id_exits_2(capsys):
    assert main(["family", "--id", "BOGUS"]) == 2
    assert "argument-error" in capsys.readouterr().err


def test_family_output_is_loadable(tmp_path, capsys):
    assert main(["family", "--id", "SUB_POF_PMMS", "--epsilon", "1/100"]) == 0
    family = json.loads(capsys.readouterr().out)
    inst = _write(tmp_path, "table.json", family["instance"])
    alloc = _write(tmp_path, "ref.json", family["reference_allocation"])
    assert main(["eval", "--instance", inst, "--allocation", alloc, "--criteria", "PMMS"]) == 0
    assert json.loads(capsys.readouterr().out)["PMMS"] == "1"


def test_verify_connections_writes_csv(tmp_path, capsys):
    out = tmp_path / "report.csv"
    code = main(["verify", "--suite", "connections", "--n-max", "3", "--out", str(out)])
    assert code == 0
    with open(out, newline="") as handle:
        rows = list(csv.DictReader(handle))
    assert rows and all(row["status"] == "pass" for row in rows)
    assert list(rows[0]) == ["proposition_id", "n", "alpha", "epsilon", "expected", "observed", "status"]
    # canonical ordering: sorted by proposition id
    ids = [row["proposition_id"] for row in rows]
    assert ids == sorted(ids)


def test_verify_lemmas_requires_seed(tmp_path, capsys):
    out = tmp_path / "r.csv"
    assert main(["verify", "--suite", "lemmas", "--out", str(out)]) == 2
    assert main(["verify", "--suite", "lemmas", "--out", str(out), "--seed", "5", "--count", "40"]) == 0


def test_byte_stable_output(tmp_path, instance_file, capsys):
    alloc = _write(tmp_path, "b.json", {"bundles": [[0, 4, 6], [1, 3, 5], [2]]})
    main(["eval", "--instance", instance_file, "--allocation", alloc])
    first = capsys.readouterr().out
    main(["eval", "--instance", instance_file, "--allocation", alloc])
    assert capsys.readouterr().out == first
