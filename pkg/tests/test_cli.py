import json

import pytest

from sclab.cli import D_GROUP, CheckRecord, battery_groups, RunConfig, SuiteResult, UsageError, cmd_counterexamples, main, run


def _json(capsys, argv):
    code = main(argv + ["--json"])
    return code, json.loads(capsys.readouterr().out)


def _strip_times(d):
    for r in d["records"]:
        r.pop("wall_time")
    return d


def test_collection_counts_on_d8(capsys):
    code, out = _json(capsys, ["collections", "--group", "dihedral:8", "--prime", "2",
                               "--kinds", "S,B,Ce,D,A,Z,E,I"])
    assert code == 0
    counts = {r["inputs"]["kind"]: r["witnesses"]["members"] for r in out["records"]
              if "kind" in r["inputs"]}
    assert [counts[k] for k in "S,B,Ce,D,A,Z,E,I".split(",")] == [9, 1, 4, 1, 7, 3, 1, 1]


def test_empty_collections_are_vacuous(capsys):
    code, out = _json(capsys, ["collections", "--group", "cyclic:6", "--prime", "5"])
    assert code == 0
    assert {r["verdict"] for r in out["records"] if "kind" in r["inputs"]} == {"VACUOUS"}


def test_s4_e_collection(capsys):
    _, out = _json(capsys, ["collections", "--group", "sym:4", "--kinds", "E"])
    w = out["records"][0]["witnesses"]
    assert (w["members"], w["classes"]) == (4, 2)


def test_equivalence_examples(capsys):
    code, out = _json(capsys, ["equivalence", "--group", "sym:4", "--row", "normalizer",
                               "--pair", "B,S", "--scope", "full"])
    assert code == 0 and out["records"][0]["verdict"] == "EVIDENCE_PASS"
    code, out = _json(capsys, ["equivalence", "--group", "product(cyclic:2,sym:3)", "--row",
                               "normalizer", "--pair", "Ce,S", "--scope", "plain"])
    assert code == 1 and out["records"][0]["verdict"] == "MISMATCH"
    code, out = _json(capsys, ["equivalence", "--group", "sym:5", "--row", "normalizer",
                               "--pair", "E,S", "--scope", "plain", "--expect", "MISMATCH"])
    assert code == 0
    assert out["records"][0]["witnesses"]["components"] == [[5, 1]]


def test_sharpness_examples(capsys):
    code, out = _json(capsys, ["sharpness", "--group", "cyclic:4", "--kind", "A", "--type", "subgroup"])
    assert code == 1 and out["records"][0]["witnesses"]["failure"]["n"] == 1
    code, _ = _json(capsys, ["sharpness", "--group", "cyclic:4", "--kind", "A", "--type", "subgroup",
                             "--expect", "FAILS"])
    assert code == 0
    code, out = _json(capsys, ["sharpness", "--group", "sym:4", "--kind", "B", "--type", "subgroup",
                               "--nmax", "3"])
    assert code == 0 and out["records"][0]["verdict"] == "EVIDENCE_PASS"
    code, out = _json(capsys, ["sharpness", "--group", "dihedral:8", "--kind", "Ce", "--type",
                               "centralizer", "--nmax", "4", "--expect", "FAILS"])
    assert code == 0


def test_counterexample_battery(capsys):
    code, out = _json(capsys, ["counterexamples"])
    assert code == 0
    assert {r["verdict"] for r in out["records"]} == {"PASS"}
    ids = [r["check_id"] for r in out["records"]]
    assert len(ids) == len(set(ids))
    z2s3 = next(r for r in out["records"] if r["check_id"].startswith("Z2xS3"))
    assert z2s3["witnesses"]["Ce_reduced_b0"] == 2
    sl = next(r for r in out["records"] if r["check_id"].startswith("SL(3,2)"))
    assert sl["witnesses"]["empty"] == {"B/centralizer": True, "I/centralizer": False}


def test_text_output_and_group_command(capsys):
    assert main(["group", "--group", "sym:4"]) == 0
    assert "order=24" in capsys.readouterr().out
    assert main(["equivalence", "--group", "sym:4", "--table"]) == 0
    text = capsys.readouterr().out
    assert "|EO|" in text and "|EA|" in text


@pytest.mark.parametrize("argv", [
    ["collections", "--group", "cyclic:"],
    ["collections", "--group", "sym:4", "--prime", "4"],
    ["collections", "--group", "sym:4", "--kinds", "S,Q"],
    ["equivalence", "--group", "sym:4", "--row", "normalizer", "--pair", "B,S,A"],
    ["equivalence", "--group", "sym:4", "--row", "diagonal", "--pair", "B,S"],
    ["sharpness", "--group", "sym:4", "--kind", "S"],
    ["collections", "--group", "sym:6", "--order-cap", "200"],
    ["frobnicate"],
])
def test_usage_errors_exit_2(argv, capsys):
    assert main(argv) == 2


def test_run_config_validation():
    with pytest.raises(UsageError):
        RunConfig("sym:4", 2, ["S"], None, 0, 3, 3, "text", None).validate()
    with pytest.raises(UsageError):
        RunConfig("sym:4", 2, ["S"], None, 200, 3, 3, "yaml", None).validate()


def test_json_round_trip_and_determinism():
    res, _ = run(["sharpness", "--group", "sym:4", "--kind", "S", "--type", "normalizer"])
    back = SuiteResult.from_json(res.to_json())
    assert back == res
    again, _ = run(["sharpness", "--group", "sym:4", "--kind", "S", "--type", "normalizer",
                    "--seed", "3"])
    assert again.records[0].verdict == res.records[0].verdict
    assert again.records[0].witnesses["reshuffled_bredon_agrees"] is True
    one = _strip_times(json.loads(cmd_counterexamples().to_json()))
    two = _strip_times(json.loads(cmd_counterexamples().to_json()))
    assert one == two


def test_mismatch_semantics():
    r = CheckRecord("x", {}, "MISMATCH", {}, 0.0)
    assert r.bad and SuiteResult("t", [r]).exit_code == 1
    r = CheckRecord("x", {}, "MISMATCH", {}, 0.0, expected="MISMATCH")
    assert not r.bad


def test_battery_at_p2_uses_the_named_groups():
    fam = battery_groups(2)
    assert fam["D-group"][1] == D_GROUP
    assert [fam[k][2] for k in ("D-group", "e", "SL3")] == [24, 120, 168]


def test_odd_prime_battery(capsys):
    code, out = _json(capsys, ["counterexamples", "--prime", "3"])
    assert code == 0
    verdicts = {r["check_id"]: r["verdict"] for r in out["records"]}
    assert verdicts.pop("SL2(F9):Z3/E-vs-S-components") == "UNKNOWN"
    assert verdicts.pop("SL(3,3)/B-vs-I-below-C(S)") == "UNKNOWN"
    assert set(verdicts.values()) == {"PASS"}
    ce = next(r for r in out["records"] if r["check_id"].endswith("Ce-vs-S"))
    assert ce["witnesses"]["Ce_reduced_b0"] == 6       # seven isolated Sylow subgroups
    assert main(["counterexamples", "--prime", "4"]) == 2
