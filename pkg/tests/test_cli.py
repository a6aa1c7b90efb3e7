from __future__ import annotations

import json

import pytest

from artifact.algebra import find_isomorphism, from_json
from artifact.cli import main
from artifact.suites import intertwining_table, run_suite
from artifact.zoo import build_A


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_zoo_build_reports_dim(tmp_path, capsys):
    path = tmp_path / "a42.json"
    code, out, _ = run(capsys, "zoo", "build", "--family", "A", "--n", "4", "--d", "2", "--out", str(path))
    assert code == 0
    assert json.loads(out)["dim"] == 15
    B = from_json(json.loads(path.read_text()))
    A = build_A(4, 2)
    assert find_isomorphism(B, A, {v: v for v in A.vertices}) is not None


def test_verify_quotient_passes(capsys):
    code, out, err = run(capsys, "verify", "quotient", "--n", "4", "--d", "2")
    rep = json.loads(out)
    assert code == 0 and rep["status"] == "PASS"
    assert rep["checks"][0]["witness"]["dim"] == 13
    assert "certificate" in rep["checks"][0]["witness"]
    assert err.startswith("PASS")


def test_verify_auslander_step(capsys):
    code, out, _ = run(capsys, "verify", "auslander-step", "--n", "4", "--d", "1")
    (check,) = json.loads(out)["checks"]
    assert code == 0 and check["witness"]["dim"] == 35 and check["witness"]["target"] == "A_5,2"


def test_export_G42_dot(capsys):
    code, out, _ = run(capsys, "export", "G_4,2", "--dot")
    assert code == 0
    assert out.count("->") == 6
    assert sum(1 for line in out.splitlines() if line.strip().endswith(";") and "->" not in line) == 6


def test_export_cartan_json(capsys):
    code, out, _ = run(capsys, "export", "cartan:A_4,2")
    assert code == 0 and json.loads(out)["cartan"] == intertwining_table(4, 2)


def test_export_round_trip(tmp_path, capsys):
    path = tmp_path / "g.json"
    assert run(capsys, "export", "G_3,2", "--out", str(path))[0] == 0
    code, out, _ = run(capsys, "alg", "export", "--in", str(path))
    assert code == 0 and out == path.read_text()


def test_unknown_target_is_usage_error(capsys):
    code, _, err = run(capsys, "export", "X_4,2")
    assert code == 2 and "unknown export target" in err


def test_bad_grammar_is_usage_error(capsys):
    assert run(capsys, "zoo")[0] == 2
    assert run(capsys, "verify", "nonsense")[0] == 2
    assert run(capsys, "zoo", "build", "--family", "A", "--n", "2", "--d", "5")[0] == 2


def test_failing_verification_exit_code(capsys):
    code, out, err = run(capsys, "verify", "tilting", "--n", "3", "--d", "2")
    assert code == 1
    w = json.loads(out)["checks"][0]["witness"]
    assert w["failing_pair"] and w["table"]
    assert "tilting" in err


def test_field_env_overrides_char(capsys, monkeypatch):
    monkeypatch.setenv("ASW_FIELD", "3")
    _, out, _ = run(capsys, "--char", "2", "alg", "dims", "--family", "A", "--n", "3", "--d", "1")
    assert json.loads(out)["field"] == "Fp:3"
    monkeypatch.delenv("ASW_FIELD")
    _, out, _ = run(capsys, "--char", "2", "alg", "dims", "--family", "A", "--n", "3", "--d", "1")
    assert json.loads(out)["field"] == "Fp:2"


def test_outputs_are_byte_identical(capsys):
    first = run(capsys, "verify", "mainthm3", "--max-n", "3")[1]
    assert run(capsys, "verify", "mainthm3", "--max-n", "3")[1] == first


def test_rep_commands(capsys):
    _, out, _ = run(capsys, "rep", "ext", "--family", "A", "--n", "3", "--d", "1",
                    "--left", "S:(1)", "--right", "S:(2)")
    assert json.loads(out)["ext"] == 1
    _, out, _ = run(capsys, "rep", "domdim", "--family", "A", "--n", "4", "--d", "2")
    assert json.loads(out)["domdim"] == 2


def test_derived_and_arc_commands(capsys):
    code, out, _ = run(capsys, "derived", "staircase", "--n", "3", "--d", "1", "--index", "2")
    assert code == 0 and [t["degree"] for t in json.loads(out)["terms"]] == [-1, 0]
    code, out, _ = run(capsys, "derived", "mutate", "--family", "G", "--n", "3", "--d", "1", "--k", "2")
    assert code == 0 and json.loads(out)["exceptional"]
    code, out, _ = run(capsys, "arc", "end", "--collection", "swinging", "--n", "4", "--d", "2")
    assert code == 0 and json.loads(out)["tame"]
    code, out, _ = run(capsys, "arc", "triangle", "--n", "4", "--i", "0", "--j", "1", "--k", "2",
                       "--background", "3,4")
    assert code == 0 and json.loads(out)["status"] == "PASS"


def test_arc_collection_from_file(tmp_path, capsys):
    path = tmp_path / "fan.json"
    run(capsys, "export", "fan_4,2", "--out", str(path))
    _, out, _ = run(capsys, "arc", "end", "--in", str(path))
    assert json.loads(out)["totals"] == intertwining_table(4, 2)


@pytest.mark.parametrize("suite", ["cartan", "mainthm2", "maincor", "dehn-orthogonality", "auroux"])
def test_small_suites_pass(suite):
    assert run_suite(suite, max_n=3, max_d=2).ok
