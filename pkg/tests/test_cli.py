import json
import os

import pytest

from inkfeat import geometry as geo
from inkfeat.cli import main
from inkfeat.inkio import read_document, read_feature_table, write_document
from inkfeat.semantic import synthetic_clock

from conftest import DATA

FIXTURES = os.path.join(DATA, "fixtures.json")


def _doc(gestures, labels=None):
    return {"version": 1, "test": "t", "regions": [], "labels": labels or {},
            "gestures": [{"id": gid, "region": None, "strokes": st} for gid, st in gestures]}


def _write(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


def _three(tmp_path):
    g = [
        ("a", [[[0, 0, 0.5, 0], [1, 0, 0.5, 10], [1, 1, 0.5, 20]]]),
        ("b", [[[0, 0, 0.5, 0], [2, 2, 0.5, 10]], [[0, 2, 0.5, 30], [2, 0, 0.5, 40]]]),
        ("c", [[[5, 5, 0.5, 0], [6, 7, 0.5, 10], [8, 8, 0.5, 20], [9, 6, 0.5, 30]]]),
    ]
    return _write(tmp_path / "three.json", _doc(g))


# validate


def test_validate_ok(capsys):
    assert main(["validate", FIXTURES]) == 0
    out = capsys.readouterr()
    assert out.out == "" and out.err == ""


def test_validate_bad_time(tmp_path, capsys):
    bad = _write(tmp_path / "bad.json", _doc([("g7", [[[0, 0, 0.5, 10], [1, 1, 0.5, 5]]])]))
    assert main(["validate", bad]) == 1
    assert "g7" in capsys.readouterr().err


def test_validate_missing_file(tmp_path):
    assert main(["validate", str(tmp_path / "nope.json")]) == 2
    assert main(["validate", FIXTURES, str(tmp_path / "nope.json")]) == 2


# extract


def test_extract_rubine_three(tmp_path, capsys):
    assert main(["extract", _three(tmp_path), "--set", "rubine"]) == 0
    t = read_feature_table(capsys.readouterr().out.encode())
    assert len(t.rows) == 3
    assert len(t.ids) == 13
    assert [r.gesture_id for r in t.rows] == ["three.json#a", "three.json#b", "three.json#c"]


def test_extract_crossing(capsys):
    assert main(["extract", FIXTURES, "--features", "willems.f54"]) == 0
    t = read_feature_table(capsys.readouterr().out.encode())
    row = next(r for r in t.rows if r.gesture_id.endswith("#X"))
    assert list(row.values) == [1.0]


def test_extract_json_format(tmp_path):
    out = tmp_path / "o.json"
    assert main(["extract", FIXTURES, "--features", "rubine.f13,willems.f1", "--format", "json", "--out", str(out)]) == 0
    t = read_feature_table(out.read_bytes(), "json")
    assert list(t.ids) == ["rubine.f13", "willems.f1"]
    assert len(t.rows) == 8


def test_extract_errors(tmp_path):
    assert main(["extract", FIXTURES, "--features", "rubine.f99"]) == 1
    assert main(["extract", FIXTURES, "--features", "semantic.f1"]) == 1
    assert main(["extract", str(tmp_path / "missing.json")]) == 2
    assert main(["extract", FIXTURES, "--out", str(tmp_path / "no" / "dir.csv")]) == 2


def test_extract_multiple_files(tmp_path, capsys):
    assert main(["extract", FIXTURES, _three(tmp_path), "--set", "sonntag"]) == 0
    t = read_feature_table(capsys.readouterr().out.encode())
    assert len(t.rows) == 11


# catalog


def test_catalog_pressure(capsys):
    assert main(["catalog", "--category", "pressure"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert [ln.split("\t")[0] for ln in lines] == ["willems.f22", "willems.f23"]
    assert lines[0].split("\t")[1:] == ["willems", "pressure", "TSR"]


def test_catalog_full_stable(capsys):
    assert main(["catalog"]) == 0
    first = capsys.readouterr().out
    assert main(["catalog"]) == 0
    assert capsys.readouterr().out == first
    ids = [ln.split("\t")[0] for ln in first.splitlines()]
    assert ids[0] == "sonntag.f1" and len(ids) == len(set(ids))


def test_catalog_bogus():
    assert main(["catalog", "--category", "bogus"]) == 1


# train / predict


def test_train_predict(tmp_path, capsys):
    train = tmp_path / "train.json"
    assert main(["synth", "--class", "circle,rectangle,triangle,arrow", "--n", "15", "--seed", "1",
                 "--jitter", "0.03", "--out", str(train)]) == 0
    model = tmp_path / "m.json"
    assert main(["train", str(train), "--model", str(model)]) == 0
    held = tmp_path / "held.json"
    assert main(["synth", "--class", "circle", "--n", "1", "--seed", "77", "--jitter", "0.03", "--out", str(held)]) == 0
    capsys.readouterr()
    assert main(["predict", str(held), "--model", str(model)]) == 0
    report = json.loads(capsys.readouterr().out)
    assert list(report) == ["held.json#circle-0000"]
    assert report["held.json#circle-0000"]["label"] == "circle"
    assert set(report["held.json#circle-0000"]) == {"label", "margin", "rejected"}


def test_predict_missing_model(tmp_path):
    assert main(["predict", FIXTURES, "--model", str(tmp_path / "none.json")]) == 2


def test_predict_bad_model(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{}")
    assert main(["predict", FIXTURES, "--model", str(bad)]) == 1


def test_train_one_class(tmp_path):
    data = tmp_path / "one.json"
    assert main(["synth", "--class", "circle", "--n", "5", "--out", str(data)]) == 0
    assert main(["train", str(data), "--model", str(tmp_path / "m.json")]) == 1


# cdt


def _clock_file(tmp_path, name="clock.json", **kw):
    doc, _ = synthetic_clock(**kw)
    path = tmp_path / name
    path.write_bytes(write_document(doc))
    return str(path)


def test_cdt_perfect(tmp_path, capsys):
    assert main(["cdt", _clock_file(tmp_path)]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["score"] == 6
    assert report["findings"] == []
    assert report["features"]["alpha"] == pytest.approx(85, abs=0.5)


def test_cdt_swapped_hands(tmp_path, capsys):
    assert main(["cdt", _clock_file(tmp_path, hour_length=0.8, minute_length=0.5)]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["score"] <= 5
    assert any(f.startswith("hand_ratio") for f in report["findings"])


def test_cdt_missing_face(tmp_path):
    doc, _ = synthetic_clock()
    doc.labels.pop("face")
    path = tmp_path / "noface.json"
    path.write_bytes(write_document(doc))
    assert main(["cdt", str(path)]) == 1


def test_cdt_annotation_file(tmp_path, capsys):
    doc, ann = synthetic_clock()
    doc.labels.clear()
    path = tmp_path / "bare.json"
    path.write_bytes(write_document(doc))
    ann_path = tmp_path / "ann.json"
    ann_path.write_text(json.dumps(ann.to_obj()))
    assert main(["cdt", str(path), "--annotations", str(ann_path)]) == 0
    assert json.loads(capsys.readouterr().out)["score"] == 6


def test_cdt_figure(tmp_path):
    fig = tmp_path / "clock.png"
    assert main(["cdt", _clock_file(tmp_path), "--figure", str(fig), "--out", str(tmp_path / "r.json")]) == 0
    assert fig.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


# synth


def test_synth_count(tmp_path):
    out = tmp_path / "c.json"
    assert main(["synth", "--class", "circle", "--n", "100", "--seed", "7", "--out", str(out)]) == 0
    doc = read_document(out.read_bytes())
    assert len(doc.gestures) == 100
    assert set(doc.labels.values()) == {"circle"}
    assert set(doc.labels) == {dg.id for dg in doc.gestures}


def test_synth_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        assert main(["synth", "--class", "cube", "--n", "3", "--seed", "7", "--jitter", "0.05", "--out", str(p)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_synth_pentagram(tmp_path):
    out = tmp_path / "p.json"
    assert main(["synth", "--class", "pentagrams", "--n", "1", "--out", str(out)]) == 0
    g = read_document(out.read_bytes()).gestures[0].gesture
    assert geo.count_crossings(g) >= 5


def test_synth_errors():
    assert main(["synth", "--class", "hexagon"]) == 1
    assert main(["synth", "--class", "circle", "--jitter", "0.5"]) == 1
