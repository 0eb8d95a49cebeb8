import json

import pytest

from diskroute.cli import main
from diskroute.report import rows_from_csv, rows_from_json


@pytest.fixture
def chain_files(tmp_path):
    inst = tmp_path / "chain.txt"
    assert main(["gen", "--generator", "chain", "--n", "30", "--seed", "1", "--out", str(inst)]) == 0
    scheme = tmp_path / "chain.scheme.json"
    assert main(["build", str(inst), "--c", "13", "--out", str(scheme)]) == 0
    return tmp_path, inst, scheme


def test_gen_is_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for p in (a, b):
        main(["gen", "--generator", "uniform-square", "--n", "80", "--seed", "9", "--out", str(p)])
    assert a.read_bytes() == b.read_bytes()


def test_build_is_deterministic(chain_files):
    d, inst, scheme = chain_files
    again = d / "again.json"
    main(["build", str(inst), "--c", "13", "--out", str(again)])
    assert again.read_bytes() == scheme.read_bytes()


def test_route_csv_parses_back(chain_files):
    d, inst, scheme = chain_files
    out = d / "r.csv"
    assert main(["route", str(scheme), str(inst), "--format", "csv", "--out", str(out)]) == 0
    (row,) = rows_from_csv(out.read_text())
    assert row.n == 30 and row.mode == "wspd"
    assert row.max_stretch >= 1.0


def test_route_json_and_traces(chain_files):
    d, inst, scheme = chain_files
    out, tr = d / "r.json", d / "t.jsonl"
    assert main(["route", str(scheme), str(inst), "--pairs", "0:29,3:4", "--out", str(out),
                 "--traces", str(tr)]) == 0
    rows = rows_from_json(out.read_text())
    assert rows[0].n == 30
    recs = [json.loads(x) for x in tr.read_text().splitlines()]
    assert [(r["src"], r["dst"]) for r in recs] == [(0, 29), (3, 4)]
    assert recs[1]["path"] == [3, 4]


def test_build_report(chain_files):
    d, inst, _ = chain_files
    rep = d / "rep.json"
    assert main(["build", str(inst), "--out", str(d / "s.json"), "--report", str(rep)]) == 0
    (row,) = rows_from_json(rep.read_text())
    assert row.preprocess_seconds > 0


def test_verify_passes(chain_files, capsys):
    _, inst, scheme = chain_files
    assert main(["verify", str(inst), "--c", "13", "--scheme", str(scheme)]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out and "PASS" in out


def test_verify_detects_corrupted_interval(chain_files, capsys):
    d, inst, scheme = chain_files
    data = json.loads(scheme.read_text())
    tables = data["components"][0]["scheme"]["tables"]
    t = next(t for t in tables if t["entries"])
    t["entries"][0][1] += 1
    bad = d / "bad.json"
    bad.write_text(json.dumps(data))
    assert main(["verify", str(inst), "--c", "13", "--scheme", str(bad)]) == 2
    out = capsys.readouterr().out
    assert "FAIL" in out and "witness:" in out


def test_hash_mismatch(chain_files, tmp_path):
    _, _, scheme = chain_files
    other = tmp_path / "other.txt"
    main(["gen", "--generator", "chain", "--n", "31", "--out", str(other)])
    assert main(["route", str(scheme), str(other)]) == 3


def test_bad_files(tmp_path):
    junk = tmp_path / "junk"
    junk.write_text("not an instance\n")
    assert main(["build", str(junk)]) == 3
    assert main(["build", str(tmp_path / "missing")]) == 3


def test_usage_errors(chain_files):
    _, inst, scheme = chain_files
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 1
    assert main(["build", str(inst), "--c", "5"]) == 1
    assert main(["route", str(scheme), str(inst), "--pairs", "0-3"]) == 1


def test_extended_mode_selected(tmp_path):
    inst = tmp_path / "cl.txt"
    main(["gen", "--generator", "clustered", "--n", "300", "--seed", "0", "--out", str(inst)])
    scheme = tmp_path / "cl.json"
    assert main(["build", str(inst), "--out", str(scheme)]) == 0
    kinds = {c["scheme"]["kind"] for c in json.loads(scheme.read_text())["components"]}
    assert kinds == {"extended"}
    out = tmp_path / "r.csv"
    assert main(["route", str(scheme), str(inst), "--pairs", "200", "--format", "csv",
                 "--out", str(out)]) == 0
    (row,) = rows_from_csv(out.read_text())
    assert row.mode == "extended" and row.max_stretch <= 2.0


def test_small_diameter_uses_direct(tmp_path):
    inst = tmp_path / "tiny.txt"
    inst.write_text("3\n0 0 0\n1 0.5 0\n2 0.9 0.3\n")
    scheme = tmp_path / "tiny.json"
    assert main(["build", str(inst), "--out", str(scheme)]) == 0
    assert json.loads(scheme.read_text())["components"][0]["scheme"]["kind"] == "direct"
    assert main(["route", str(scheme), str(inst), "--out", str(tmp_path / "r.json")]) == 0
