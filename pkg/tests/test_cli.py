import json
import subprocess
import sys

import pytest

from genus2aut.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    assert code == 0
    return json.loads(out)


def test_invariants(capsys):
    doc = run_json(capsys, "invariants", "--s2", "120", "--base-genus", "0")
    assert doc["relative"] == {"ksq_rel": 24, "chi_f": 12, "n": 12}
    assert doc["global"]["ksq"] == 16
    doc = run_json(capsys, "invariants", "--surface", "hirzebruch:4", "--branch", "6,20")
    assert doc["double_cover"]["ksq"] == 8 and doc["double_cover"]["ramification"] == 80
    assert run(capsys, "invariants", "--s2", "3", "--s3", "1")[0] == 3


def test_germ(capsys):
    doc = run_json(capsys, "germ", "--group", "Z6", "--case", "1", "--k", "3")
    assert (doc["s2_min"], doc["s3"], doc["exact"]) == (3, 1, True)
    doc = run_json(capsys, "germ", "--ratios")
    assert doc["max_ratio"] == 4
    doc = run_json(capsys, "germ")
    assert doc["version"] == "1" and len(doc["rows"]) == 19
    assert run(capsys, "germ", "--group", "Z5", "--case", "9")[0] == 3


def test_orbifold(capsys):
    doc = run_json(capsys, "orbifold", "minimize")
    assert doc["value"] == "1/42" and doc["witness"] == "(0;2,3,7)"
    doc = run_json(capsys, "orbifold", "minimize", "--half")
    assert doc["value"] == "2/21" and doc["marked_period"] == 7
    assert run_json(capsys, "orbifold", "genus", "--order", "168",
                    "--signature", "0;2,3,7")["genus"] == 3
    assert run_json(capsys, "orbifold", "elliptic", "--order", "12", "--j", "j0")["min_orbit"] == 2
    assert run_json(capsys, "orbifold", "hurwitz", "--genus", "3")["max_order"] == 168
    assert run(capsys, "orbifold", "minimize", "--max-period", "6")[0] == 3
    assert run(capsys, "orbifold", "genus")[0] == 2


def test_wiman(capsys):
    doc = run_json(capsys, "wiman", "--genus", "4", "--odd", "--oracle")
    assert doc["bound"] == 15 and doc["oracle"]["order"] == 15 and doc["oracle"]["valid"]


def test_bound(capsys):
    doc = run_json(capsys, "bound", "--base-genus", "0", "--ksq", "16")
    assert {"formula_name": "aut-rational-base", "value": 2880, "sharp": True,
            "quote": "|Aut(f)| <= 120 K^2 + 960", "note": ""} in doc
    doc = run_json(capsys, "bound", "--exceptions")
    assert [(r["ratio_plus8"], r["ratio"]) for r in doc] == [(120, 180), (72, 90), (96, 288), (72, 144)]
    doc = run_json(capsys, "bound", "--stabilizer", "s3_positive", "--r", "2", "--ksq-rel", "1")
    assert doc["value"] == "120/7"
    assert run(capsys, "bound", "--ksq", "0")[0] == 3


def test_examples(capsys):
    doc = run_json(capsys, "examples", "list")
    assert [d["id"] for d in doc][:3] == ["5.1", "5.2", "5.3"]
    doc = run_json(capsys, "examples", "verify", "--id", "5.9", "--param", "m=7")
    assert doc[0]["g_order"] == 210 and doc[0]["ksq_double_cover"] == 40
    doc = run_json(capsys, "examples", "verify")
    assert all(d["sharp"] for d in doc)
    assert run(capsys, "examples", "verify", "--id", "5.8", "--param", "m=5")[0] == 3
    assert run(capsys, "examples", "verify", "--id", "5.8", "--param", "m")[0] == 2


def test_check(capsys, golden):
    code, out, _ = run(capsys, "check", str(golden / "valid" / "icosahedron.fib"))
    assert code == 0 and "2880" in out
    code, out, _ = run(capsys, "check", "--json", str(golden / "valid" / "icosahedron.fib"))
    assert out.encode() == (golden / "valid" / "icosahedron.report.json").read_bytes()
    code, _, err = run(capsys, "check", str(golden / "invalid" / "unknown_key.fib"))
    assert code == 2 and "ScenarioSyntaxError" in err
    assert run(capsys, "check", str(golden / "missing.fib"))[0] == 3


def test_module_entry_point(golden):
    proc = subprocess.run([sys.executable, "-m", "genus2aut", "check",
                           str(golden / "invalid" / "nonintegral.fib")],
                          capture_output=True, text=True)
    assert proc.returncode == 3 and "NonIntegral" in proc.stderr


def test_bad_subcommand_is_a_parse_error():
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2
