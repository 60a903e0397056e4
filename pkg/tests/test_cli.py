from __future__ import annotations

import json
from importlib import resources

import pytest

from nilrad.catalog import Report
from nilrad.cli import main

HEISENBERG = "dim 3; [1,2]=3\n"


@pytest.fixture()
def law_file(tmp_path):
    def write(text, name="law.txt"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return write


def _run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_en_exit_zero(law_file, capsys):
    code, out, _ = _run(capsys, ["check", law_file(HEISENBERG)])
    assert code == 0
    assert "verdict: EN" in out
    assert "positive_solution" in out


def test_check_not_en_exit_one(law_file, capsys, by_id):
    code, out, _ = _run(capsys, ["check", law_file(by_id["1.3(iv)"].law_text)])
    assert code == 1
    assert "no_positive_solution" in out


def test_check_rank_zero_certificate(law_file, capsys, by_id):
    code, out, _ = _run(capsys, ["check", law_file(by_id["0.1"].law_text)])
    assert code == 1
    assert "rank_zero" in out


def test_check_inconclusive_exit_two(law_file, capsys):
    text = "dim 7; [1,2]=4; [1,3]=5; [1,4]=6; [1,6]=7; [2,3]=6; [2,4]=7*2; [2,5]=7; [3,5]=7"
    code, out, _ = _run(capsys, ["check", "--search", "500", law_file(text)])
    assert code == 2
    assert "INCONCLUSIVE" in out


def test_check_parse_error_exit_64(law_file, capsys):
    code, _, err = _run(capsys, ["check", law_file("dim 3; [1,2]=")])
    assert code == 64
    assert "expected" in err or "syntax" in err


def test_check_json_round_trips(law_file, capsys):
    code, out, _ = _run(capsys, ["check", "--json", law_file(HEISENBERG)])
    assert code == 0
    rep = Report.from_json(out)
    assert rep.verdict == "EN"


def test_usage_error_exit_64():
    with pytest.raises(SystemExit) as exc:
        main(["check"])  # missing file argument
    assert exc.value.code == 64


def test_invariants(law_file, capsys):
    code, out, _ = _run(capsys, ["invariants", law_file(HEISENBERG)])
    assert code == 0
    assert "dim_der: 6" in out
    assert "rank: 2" in out
    assert "nice: True" in out


def test_catalog_verify_green(capsys, tmp_path):
    src = resources.files("nilrad").joinpath("data/catalog7.json").read_text()
    p = tmp_path / "catalog7.json"
    p.write_text(src)
    code, out, _ = _run(capsys, ["catalog", "verify", str(p), "--only", "1.11"])
    assert code == 0
    assert "1/1 match" in out


def test_catalog_verify_detects_corruption(capsys, tmp_path):
    doc = json.loads(resources.files("nilrad").joinpath("data/catalog7.json").read_text())
    doc["entries"] = [e for e in doc["entries"] if e["id"] == "2.3"]
    doc["entries"][0]["expected"]["dim_der"] = 99
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(doc))
    code, out, _ = _run(capsys, ["catalog", "verify", str(p)])
    assert code == 1
    assert "MISMATCH" in out and "dim_der" in out


def test_catalog_schema_error_exit_65(capsys, tmp_path):
    p = tmp_path / "broken.json"
    p.write_text("{\"entries\": [{\"id\": \"x\"}]}")
    code, _, err = _run(capsys, ["catalog", "verify", str(p)])
    assert code == 65
    assert "missing required field" in err


def test_degenerate_explicit_x(capsys, tmp_path, by_id):
    entry = by_id["1.3(v)"]
    p = tmp_path / "law.txt"
    p.write_text(entry.law_text)
    code, out, _ = _run(capsys, ["degenerate", str(p), "--X", "-1,2,-2,1,1,0,-1"])
    assert code == 0
    assert "in_g_phi: True" in out
    assert "limit: dim 7" in out
    assert "[2,4]" not in out.split("limit:")[1].splitlines()[0]


def test_degenerate_zero(capsys, tmp_path, by_id):
    p = tmp_path / "law.txt"
    p.write_text(by_id["1.21"].law_text)
    code, out, _ = _run(capsys, ["degenerate", str(p), "--X", "-4,23,-28,10,-1,-8,8"])
    assert code == 0
    assert "limit: zero" in out


def test_degenerate_identity_flow(capsys, tmp_path, by_id):
    p = tmp_path / "law.txt"
    p.write_text(by_id["1.21"].law_text)
    code, out, _ = _run(capsys, ["degenerate", str(p), "--X", "0,0,0,0,0,0,0"])
    assert code == 0
    assert "limit: dim 7" in out


def test_degenerate_bad_x_length(capsys, tmp_path):
    p = tmp_path / "law.txt"
    p.write_text("dim 7; [1,2]=3")
    code, _, err = _run(capsys, ["degenerate", str(p), "--X", "1,2"])
    assert code == 64
    assert "needs 7 entries" in err


def test_degenerate_search(capsys, tmp_path, by_id):
    p = tmp_path / "law.txt"
    p.write_text(by_id["1.21"].law_text)
    code, out, _ = _run(capsys, ["degenerate", str(p), "--search", "10000", "--seed", "1"])
    assert code == 0
    assert "X:" in out


def test_report_json_format(capsys, tmp_path):
    p = tmp_path / "law.txt"
    p.write_text(HEISENBERG)
    code, out, _ = _run(capsys, ["report", str(p), "--format", "json"])
    assert code == 0
    assert Report.from_json(out).verdict == "EN"


def test_float_laws_rejected_by_pipeline(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("NILRAD_TOL", "1e-8")
    p = tmp_path / "law.txt"
    p.write_text("dim 3; [1,2]=3*(1 sqrt(2))")
    code, _, err = _run(capsys, ["invariants", str(p)])
    assert code == 64
    assert "exact" in err
    code, _, err = _run(capsys, ["check", str(p)])
    assert code == 64
    assert "exact" in err
