import json

import pytest

from tlk.catalog import chain, garland
from tlk.cli import main
from tlk.frames import loads, to_dot, write_frame


@pytest.fixture
def frames(tmp_path):
    paths = {}
    for name, F in {"c1": chain(1), "c2": chain(2), "G2": garland(2), "G4": garland(4)}.items():
        p = tmp_path / f"{name}.json"
        write_frame(F, p)
        paths[name] = str(p)
    return paths


def _json(capsys):
    return json.loads(capsys.readouterr().out)


def test_frame_reports_metrics(frames, capsys):
    assert main(["frame", frames["G2"], "--ball", "0", "1"]) == 0
    out = _json(capsys)
    assert out["metrics"]["dep"] == 2 and out["skeleton"]
    assert sorted(out["ball"]) == ["0", "1"]


def test_check_exit_codes(frames, capsys):
    assert main(["check", "--frame", frames["c2"], "--formula", "[]p0 -> p0", "--valid"]) == 0
    capsys.readouterr()
    assert main(["check", "--frame", frames["c2"], "--formula", "p0 -> []p0", "--valid"]) == 1
    out = _json(capsys)
    assert out["holds"] is False and "counter_valuation" in out
    assert main(["check", "--frame", frames["c2"], "--formula", "p0 ->", "--valid"]) == 2
    assert main(["check", "--frame", frames["c2"], "--formula", "p0", "--omega"]) == 2


def test_budget_exceeded_is_input_error(frames, capsys):
    code = main(["check", "--frame", frames["G4"], "--formula", "p0 | p1 | p2 | p3 | p4", "--valid", "--budget", "1"])
    assert code == 2
    assert "TLK_BUDGET" in capsys.readouterr().err


def test_morphism(frames, tmp_path):
    assert main(["morphism", "find", "--from", frames["G4"], "--to", frames["G2"]]) == 0
    assert main(["morphism", "find", "--from", frames["G2"], "--to", frames["G4"]]) == 1
    m = json.dumps({"0": "0", "1": "0"})
    assert main(["morphism", "check", "--from", frames["c2"], "--to", frames["c2"], "--map", m]) == 1
    path = tmp_path / "id.json"
    path.write_text(json.dumps({"0": "0", "1": "1"}))
    assert main(["morphism", "check", "--from", frames["c2"], "--to", frames["c2"], "--map", str(path)]) == 0
    assert main(["morphism", "check", "--from", frames["c2"], "--to", frames["c2"], "--map", "{oops"]) == 2


def test_jankov_and_classify(frames, capsys):
    assert main(["jankov", "--frame", frames["c1"], "--root", "0", "--degree", "1"]) == 0
    assert "p0" in capsys.readouterr().out
    assert main(["classify", "--frame", frames["G2"]]) == 0
    assert "garland" in capsys.readouterr().out


def test_seq(capsys):
    assert main(["seq", "gtm", "--bits", "1", "--stage", "1"]) == 0
    assert capsys.readouterr().out.strip() == "0011110"
    assert main(["seq", "embed", "--needle", "010", "--hay", "0011110"]) == 1
    assert main(["seq", "witness", "--f", "01", "--g", "00"]) == 0
    assert main(["seq", "witness", "--f", "01", "--g", "01"]) == 2


def test_enumerate_count(capsys):
    assert main(["enumerate", "--max", "3", "--count"]) == 0
    assert "13" in capsys.readouterr().out


def test_umbrella(tmp_path, capsys):
    dot = tmp_path / "z.dot"
    assert main(["umbrella", "--bits", "01", "--dot", str(dot)]) == 0
    assert _json(capsys)["points"] == 24
    assert dot.read_text().startswith("digraph")


def test_papercheck_single_case(tmp_path, capsys):
    assert main(["papercheck", "--case", "11", "--out", str(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert out.startswith("11\tPASS")
    assert (tmp_path / "report.json").exists() and (tmp_path / "cases.csv").exists()
    assert (tmp_path / "timings.png").exists()


def test_papercheck_unknown_suite(capsys):
    assert main(["papercheck", "--suite", "nope"]) == 2


def test_export(frames, tmp_path, capsys):
    assert to_dot(chain(2)).count("->") == 1
    assert main(["export", "--frame", frames["c2"], "--format", "dot"]) == 0
    assert capsys.readouterr().out.count("->") == 1
    assert main(["export", "--frame", frames["G2"], "--format", "json"]) == 0
    assert loads(capsys.readouterr().out) == garland(2)
    png = tmp_path / "g.png"
    assert main(["export", "--frame", frames["G2"], "--format", "png", "--out", str(png)]) == 0
    assert png.stat().st_size > 0
    assert main(["export", "--frame", frames["G2"], "--format", "png"]) == 2


def test_bad_input(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"points": ["a"], "edges": [["a", "b"]]}))
    assert main(["frame", str(bad)]) == 2
    bad.write_text("{")
    assert main(["frame", str(bad)]) == 2
    assert main(["frame", str(tmp_path / "missing.json")]) == 2
    with pytest.raises(SystemExit) as e:
        main(["nope"])
    assert e.value.code == 2
