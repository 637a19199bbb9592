import json
from pathlib import Path

import pytest

from dilator import cli

DATA = Path(__file__).resolve().parent.parent / "data"


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("argv,code", [
    (["validate", DATA / "fair.json"], 0),
    (["validate", DATA / "biased.json"], 0),
    (["validate", DATA / "broken.json"], 1),
    (["validate", DATA / "fair_2x3.json"], 0),
    (["axioms", DATA / "biased.json", "-D", "2"], 0),
    (["kernel", DATA / "kernel.json"], 0),
    (["kernel", DATA / "kernel_zero.json"], 1),
    (["compare", DATA / "fair.json", DATA / "biased.json", "-D", "1", "-W", "1"], 0),
    (["solenoid", "--m", "0:1,1:-2", "--samples", "8"], 0),
    (["solenoid", "--omega", "w3", "--m", "1:1"], 0),
])
def test_exit_codes(capsys, argv, code):
    got, out, _ = run(capsys, *argv)
    assert got == code
    assert json.loads(out)["tool"] == "dilator"


def test_dilate_relaxed_reports_witness(capsys):
    code, out, _ = run(capsys, "dilate", DATA / "relaxed.json", "-D", "1", "-W", "1", "-N", "2")
    assert code == 1
    report = json.loads(out)
    statuses = {c["check"]: c["status"] for c in report["checks"]}
    assert statuses["dilation.faithfulness"] == "witness"


def test_validate_broken_has_witness(capsys):
    _, out, _ = run(capsys, "validate", DATA / "broken.json")
    failing = [c for c in json.loads(out)["checks"] if c["status"] == "fail"]
    assert failing and failing[0]["witness"]


def test_output_is_byte_stable(capsys):
    argv = ["axioms", DATA / "fair.json", "-D", "2", "-W", "1", "--verbose"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
    data = json.loads(first)
    assert data["parameters"] == {"depth": 2, "word_bound": 1}
    assert data["input_digest"].startswith("sha256:")


def test_kernel_report_fields(capsys):
    _, out, _ = run(capsys, "kernel", DATA / "kernel.json")
    data = json.loads(out)
    assert data["faithful"] is True
    assert data["index"] == {"z1": "3/2", "z2": "3", "z3": "1"}


def test_solenoid_report(capsys):
    _, out, _ = run(capsys, "solenoid", "--omega", "w2", "--m", "1:1", "--samples", "4")
    data = json.loads(out)
    assert data["classification"] == "faithful_not_index_finite"
    assert data["mbar"] == 1 and data["exponent"] == 1
    assert all(abs(v["closed_form"]["re"]) < 1e-12 for v in data["values"])


@pytest.mark.parametrize("argv", [
    ["validate", "/nonexistent.json"],
    ["kernel", DATA / "fair.json"],
    ["solenoid", "--omega", "0:1/2"],
    ["compare", DATA / "fair.json", DATA / "relaxed.json"],
])
def test_malformed_input(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("dilator:")


def test_malformed_json(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "validate", bad)[0] == 2
    bad.write_text(json.dumps({"factors": [{"alphabet": 2}], "generators": []}))
    assert run(capsys, "validate", bad)[0] == 2


def test_random_seed_path(capsys):
    a = run(capsys, "validate", "random", "--seed", "7", "--alphabet", "2,3")
    b = run(capsys, "validate", "random", "--seed", "7", "--alphabet", "2,3")
    c = run(capsys, "validate", "random", "--seed", "8", "--alphabet", "2,3")
    assert a == b and a[0] == 0
    assert json.loads(a[1])["input_digest"] != json.loads(c[1])["input_digest"]
