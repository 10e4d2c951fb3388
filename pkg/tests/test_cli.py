import json
from pathlib import Path

import pytest

from cellstrat.cli import main

FLAG = ["--r", "9", "--n", "5", "--l", "9", "--lambda", "7,2", "--v", "L{1}L{2}L{3}L{4,5}L{6,7}U{8,9}"]
GOLDEN = Path(__file__).parent / "golden" / "flagship.json"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_multiply(capsys):
    code, out, _ = run(capsys, "multiply", "--r", "2", "--x", "{1,2}{1',2'}", "--y", "{1,2}{1',2'}", "--text")
    assert code == 0 and out.strip() == "δ^1 * {1,2}{1',2'}"
    code, out, _ = run(capsys, "multiply", "--r", "2", "--x", "{1,2}{1',2'}", "--y", "{1,2}{1',2'}", "--delta", "3", "--json")
    assert code == 0 and json.loads(out)


def test_basis_and_cap(capsys):
    code, out, _ = run(capsys, "basis", "--r", "1", "--text")
    assert code == 0 and len(out.split()) == 2
    code, out, _ = run(capsys, "basis", "--r", "2", "--json")
    assert json.loads(out)["count"] == 15
    code, _, err = run(capsys, "basis", "--r", "9", "--cap-basis", "1000")
    assert code == 3 and "cap" in err


def test_env_caps(capsys, monkeypatch):
    monkeypatch.setenv("CELLSTRAT_CAPS", "basis=10")
    assert run(capsys, "basis", "--r", "2")[0] == 3
    assert run(capsys, "basis", "--r", "2", "--cap-basis", "100")[0] == 0


def test_usage_errors(capsys):
    assert run(capsys)[0] == 2
    assert run(capsys, "decompose", "--r", "9")[0] == 2
    assert run(capsys, "decompose", *FLAG[:-1], "L{1}{2")[0] == 2
    assert run(capsys, "idempotent", "--r", "2", "--l", "0", "--delta", "x")[0] == 2
    assert run(capsys, "--version")[0] == 0


def test_idempotent(capsys):
    code, out, _ = run(capsys, "idempotent", "--algebra", "brauer", "--r", "3", "--l", "1", "--delta", "0", "--text")
    assert code == 0 and out.strip()
    assert run(capsys, "idempotent", "--algebra", "brauer", "--r", "2", "--l", "0", "--delta", "0")[0] == 2


def test_decompose_matches_golden(capsys):
    code, out, _ = run(capsys, "decompose", *FLAG)
    assert code == 0 and json.loads(out) == json.loads(GOLDEN.read_text())
    code, again, _ = run(capsys, "decompose", *FLAG, "--jobs", "2")
    assert again == out


def test_decompose_all_empty(capsys):
    code, out, _ = run(capsys, "decompose-all", "--r", "4", "--n", "3", "--l", "2", "--lambda", "2", "--text")
    assert code == 0 and out.strip() == "[]"


def test_oracle_check(capsys):
    code, out, _ = run(capsys, "oracle-check", *FLAG, "--json")
    assert code == 0 and json.loads(out)["ok"]
    code, out, _ = run(capsys, "oracle-check", *FLAG, "--negative-control", "--text")
    assert code == 0 and "rejected as expected" in out
    code, _, _ = run(capsys, "oracle-check", "--r", "4", "--n", "2", "--l", "3", "--lambda", "2,1")
    assert code == 0
    assert run(capsys, "oracle-check", *FLAG, "--cap-oracle", "100")[0] == 3


def test_verify_stratification(capsys):
    code, out, _ = run(capsys, "verify-stratification", "--r", "2", "--text")
    assert code == 0 and "FAIL" not in out
    code, out, _ = run(capsys, "verify-stratification", "--algebra", "brauer", "--r", "3", "--delta", "0", "--module-law", "--json")
    assert code == 0 and json.loads(out)
    assert run(capsys, "verify-stratification", "--r", "2", "--module-law")[0] == 2


def test_partial_classes(capsys):
    code, out, _ = run(capsys, "partial-classes", "--r", "4", "--n", "1", "--l", "2", "--json")
    assert code == 0 and sum(c["size"] for c in json.loads(out)) > 0


def test_report_check(capsys, tmp_path):
    code, out, _ = run(capsys, "report", "--input", str(GOLDEN), "--check", "--text")
    assert code == 0 and out.splitlines()[-1].endswith("dimension 180")
    tampered = json.loads(GOLDEN.read_text())
    tampered["q"] = 6
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(tampered))
    code, _, err = run(capsys, "report", "--input", str(bad), "--check")
    assert code == 1 and "q" in err
    junk = tmp_path / "junk.json"
    junk.write_text("{}")
    assert run(capsys, "report", "--input", str(junk))[0] == 2
    assert run(capsys, "report", "--input", str(tmp_path / "missing.json"))[0] == 2
