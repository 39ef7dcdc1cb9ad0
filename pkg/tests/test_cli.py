import json
import shutil
import subprocess
import sys

import jsonschema
import pytest

from coxbeauville.cli import compute_traces, main
from coxbeauville.paperdata import data_dir, paper_structure, trace_oracle


def _schema(name):
    return json.loads((data_dir() / "schema" / f"{name}.schema.json").read_text())


def _run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_verify_catalogued_ok(capsys):
    code, out = _run(capsys, "verify", "B6", "--paper")
    assert code == 0
    doc = json.loads(out.out)
    jsonschema.validate(doc, _schema("report"))
    assert doc["stronglyReal"] is True


def test_verify_to_file(tmp_path, capsys):
    dest = tmp_path / "r.json"
    code, _ = _run(capsys, "verify", "D6", "--out", str(dest), "--exact")
    assert code == 0
    assert json.loads(dest.read_text())["mode"] == "exact"


def test_verify_file_with_repeated_pair_fails(tmp_path, capsys):
    rec = paper_structure("B7")
    doc = {"group": "B7", "x1": rec.x1, "y1": rec.y1, "x2": rec.x1, "y2": rec.y1}
    jsonschema.validate(doc, _schema("structure-file"))
    f = tmp_path / "s.json"
    f.write_text(json.dumps(doc))
    code, out = _run(capsys, "verify", "--file", str(f))
    assert code == 1
    assert json.loads(out.out)["dagger"]["outcome"] == "IntersectNontrivial"


def test_verify_file_bad_element(tmp_path, capsys):
    f = tmp_path / "s.json"
    f.write_text(json.dumps({"group": "D5", "x1": "(_1)", "y1": "(1,2)", "x2": "(1,2)", "y2": "(1,2)"}))
    assert main(["verify", "--file", str(f)]) == 2


@pytest.mark.parametrize("argv", [["verify", "Z9"], ["search", "A2xA2xA2"], ["tables", "B-even", "13"],
                                  ["tables", "Q-odd", "11"], ["tables", "B-even", "20..12"]])
def test_input_errors(argv):
    assert main(argv) == 2


def test_corrupt_data_exits_2(tmp_path, monkeypatch):
    shutil.copytree(data_dir(), tmp_path / "d")
    (tmp_path / "d" / "structures" / "parametric.json").write_text("{ not json")
    monkeypatch.setenv("BEAUVILLE_DATA_DIR", str(tmp_path / "d"))
    assert main(["verify", "B12"]) == 2


def test_search_negative_and_positive(capsys):
    code, out = _run(capsys, "search", "I2(5)", "--exhaustive")
    assert code == 1
    doc = json.loads(out.out)
    jsonschema.validate(doc, _schema("search"))
    assert doc["outcome"] == "NoneExists"
    code, out = _run(capsys, "search", "A4")
    assert code == 0 and json.loads(out.out)["outcome"] == "Found"


def test_search_budget_exhausted(capsys):
    code, _ = _run(capsys, "search", "B6", "--randomized", "--budget", "1")
    assert code == 3


def test_search_over_bound(capsys):
    code, _ = _run(capsys, "search", "B6")
    assert code == 2


def test_tables(capsys):
    code, out = _run(capsys, "tables", "B-even", "12")
    assert code == 0
    doc = json.loads(out.out)
    assert doc["ranks"] == [12]
    assert all(r["match"] for r in doc["rows"])
    assert "diagonal rule used" in out.err


def test_computed_traces_match_oracle():
    traces = compute_traces("B-even", 12)
    assert traces["x1y1"][0] == 8
    assert traces["x1y1"][3] == 4
    assert traces["x1"][10] == trace_oracle("B-even", "x1", 12, 11)


def test_mixed_and_mixable(capsys):
    code, out = _run(capsys, "mixed", "B4")
    assert code == 0
    assert all(c["outcome"] == "Blocked" for c in json.loads(out.out)["characters"])
    code, out = _run(capsys, "mixable", "I2(6)")
    assert code == 0


def test_mixed_too_large(capsys):
    code, _ = _run(capsys, "mixable", "E7", "--bound", "1000")
    assert code == 3


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "coxbeauville", "verify", "B5"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["group"] == "B5"
    assert "B5: certified" in proc.stderr


def test_verify_everything_small(tmp_path, capsys):
    dest = tmp_path / "all.json"
    code = main(["verify-paper-all", "--max-rank", "6", "--workers", "1", "--out", str(dest)])
    doc = json.loads(dest.read_text())
    jsonschema.validate(doc, _schema("summary"))
    names = [i["item"] for i in doc["items"]]
    assert "B5" in names and "H3" in names and "I2(12)" in names
    assert code == (0 if not doc["failed"] else 1)


def test_verbose_flag_either_side(capsys):
    assert main(["tables", "D-odd", "11", "-v"]) == 0
    first = capsys.readouterr().err
    assert main(["-v", "tables", "D-odd", "11"]) == 0
    assert capsys.readouterr().err == first
    assert "  x1y1" in first
