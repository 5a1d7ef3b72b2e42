import os
import subprocess
import sys

import numpy as np

from inkfeat import features as F
from inkfeat.cli import main
from inkfeat.inkio import read_feature_table

from conftest import DATA

FIXTURES = os.path.join(DATA, "fixtures.json")
GOLDEN = os.path.join(DATA, "golden_all.csv")


def _golden() -> bytes:
    with open(GOLDEN, "rb") as fh:
        return fh.read()


def test_extract_matches_golden_bytes(tmp_path):
    out = tmp_path / "all.csv"
    assert main(["extract", FIXTURES, "--set", "all", "--out", str(out)]) == 0
    assert out.read_bytes() == _golden()


def test_golden_rows_and_columns():
    t = read_feature_table(_golden())
    assert [r.gesture_id for r in t.rows] == [
        f"fixtures.json#{g}" for g in ("G_square", "G_line", "circle", "X", "zigzag", "L", "V", "W")
    ]
    assert list(t.ids) == [d.id for d in F.catalog() if d.set != "semantic"]


def test_golden_independent_of_threads(tmp_path, monkeypatch):
    for n in ("1", "3", "8"):
        monkeypatch.setenv("INKFEAT_THREADS", n)
        out = tmp_path / f"t{n}.csv"
        assert main(["extract", FIXTURES, "--set", "all", "--out", str(out)]) == 0
        assert out.read_bytes() == _golden()


def test_entry_point_subprocess():
    r = subprocess.run(
        [sys.executable, "-m", "inkfeat.cli", "extract", FIXTURES, "--set", "all"],
        capture_output=True, check=True,
    )
    assert r.stdout == _golden()


def test_golden_values_finite():
    t = read_feature_table(_golden())
    for row in t.rows:
        assert np.all(np.isfinite(row.values))
