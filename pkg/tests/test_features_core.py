import math

import numpy as np
import pytest

from inkfeat import errors
from inkfeat import features as F
from inkfeat.ink import validate

from conftest import gesture


def test_catalog_counts():
    counts = {}
    for d in F.catalog():
        counts[d.set] = counts.get(d.set, 0) + 1
    assert counts["sonntag"] == 15
    assert counts["rubine"] == 13
    assert counts["willems"] == 89
    assert counts["hbf49"] == 49


def test_catalog_order_and_uniqueness():
    ids = [d.id for d in F.catalog()]
    assert len(ids) == len(set(ids))
    sets = [d.set for d in F.catalog()]
    order = [s for i, s in enumerate(sets) if i == 0 or sets[i - 1] != s]
    assert order == ["sonntag", "rubine", "willems", "hbf49", "semantic"]
    assert F.ids_for_set("rubine") == [f"rubine.f{i}" for i in range(1, 14)]
    assert F.catalog() == F.catalog()


def test_catalog_categories_are_known():
    for d in F.catalog():
        assert d.category in F.CATEGORIES
        assert (d.category == "semantic") == (d.set == "semantic")


def test_pressure_category():
    assert [d.id for d in F.catalog() if d.category == "pressure"] == ["willems.f22", "willems.f23"]


def test_descriptor_unknown():
    with pytest.raises(errors.UnknownFeatureId):
        F.descriptor("rubine.f99")
    with pytest.raises(errors.UnknownFeatureId):
        F.extract(gesture([(0, 0), (1, 1)]), F.FeatureRequest(ids=("nope.f1",)))
    with pytest.raises(errors.UnknownFeatureId):
        F.FeatureRequest(sets=("bogus",)).resolve()


def test_semantic_ids_rejected_by_extract():
    sem = next(d.id for d in F.catalog() if d.set == "semantic")
    with pytest.raises(errors.UnknownFeatureId):
        F.FeatureRequest(ids=(sem,)).resolve()


def test_single_sample_velocity_degenerate():
    g = validate([[(1.0, 2.0, 0.5, 0.0)]])
    v = F.extract(g, F.FeatureRequest(ids=("willems.f25",)))
    assert v["willems.f25"] == 0.0
    assert v.is_degenerate("willems.f25")


def test_line_duration(fixtures_doc):
    v = F.extract(fixtures_doc.gesture("G_line"), F.FeatureRequest(ids=("rubine.f13",)))
    assert v["rubine.f13"] == 100.0
    assert not v.degenerate


def test_full_vector_on_square(fixtures_doc):
    v = F.extract(fixtures_doc.gesture("G_square"))
    assert len(v) == 15 + 13 + 89 + 49
    assert np.all(np.isfinite(v.values))
    # documented degenerates: the zero first-to-last vector, too few samples for the
    # k-strided and acceleration features, and no straight line detected
    assert v.degenerate <= {
        "rubine.f6", "rubine.f7", "hbf49.f6", "hbf49.f7",
        "willems.f21", "willems.f28", "willems.f40", "willems.f41", "willems.f29", "willems.f30", "willems.f31",
        "willems.f59", "willems.f60", "willems.f61", "willems.f64", "willems.f65", "willems.f66",
        "hbf49.f22", "hbf49.f23", "hbf49.f28", "hbf49.f29", "hbf49.f30", "hbf49.f31",
    }
    for fid in v.degenerate:
        assert v[fid] == 0.0


def test_request_order_follows_catalog():
    v = F.extract(gesture([(0, 0), (1, 1), (2, 0)]), F.FeatureRequest(ids=("hbf49.f1", "rubine.f3", "sonntag.f2")))
    assert v.ids == ("sonntag.f2", "rubine.f3", "hbf49.f1")


def test_subset_equals_full():
    rng = np.random.default_rng(3)
    for _ in range(5):
        g = F.random_gesture(rng)
        full = F.extract(g)
        for fid in rng.choice(full.ids, 25, replace=False):
            part = F.extract(g, F.FeatureRequest(ids=(str(fid),)))
            assert part[str(fid)] == full[str(fid)]
            assert part.is_degenerate(str(fid)) == full.is_degenerate(str(fid))


def test_deterministic():
    g = F.random_gesture(np.random.default_rng(11))
    a, b = F.extract(g), F.extract(g)
    assert a.ids == b.ids
    assert a.values.tobytes() == b.values.tobytes()
    assert a.degenerate == b.degenerate


def test_batch_matches_serial_any_threads():
    rng = np.random.default_rng(5)
    gs = [F.random_gesture(rng) for _ in range(12)]
    serial = F.extract_batch(gs, threads=1)
    threaded = F.extract_batch(gs, threads=4)
    for a, b in zip(serial, threaded):
        assert a.values.tobytes() == b.values.tobytes()


def test_thread_count_env(monkeypatch):
    monkeypatch.setenv("INKFEAT_THREADS", "3")
    assert F.thread_count() == 3
    assert F.thread_count(2) == 2
    monkeypatch.setenv("INKFEAT_THREADS", "0")
    assert F.thread_count() == 1


def test_values_always_finite_on_degenerate_inputs():
    cases = [
        [[(0.0, 0.0, 0.5, 0.0)]],
        [[(0.0, 0.0, 0.5, 0.0), (0.0, 0.0, 0.5, 10.0)]],
        [[(0.0, 0.0, 0.0, 0.0), (1.0, 0.0, 0.0, 10.0)]],
        [[(0.0, 0.0, 0.5, 0.0)], [(0.0, 0.0, 0.5, 20.0)]],
        [[(0.0, 0.0, 0.5, 0.0), (0.0, 1.0, 0.5, 10.0), (0.0, 2.0, 0.5, 20.0)]],
    ]
    for raw in cases:
        v = F.extract(validate(raw))
        assert np.all(np.isfinite(v.values))
        for fid in v.degenerate:
            assert v[fid] == 0.0


# ---------------------------------------------------------------------------
# invariance audit


def test_audit_hu_rotation():
    r = F.invariance_flags_audit(n=20, seed=1, ids=[f"hbf49.f{i}" for i in range(41, 48)])
    assert r.ok, r.lines()
    assert r.checked["rotation"] > 0


def test_length_not_scale_invariant():
    assert not F.descriptor("willems.f1").scale_invariant
    g = F.random_gesture(np.random.default_rng(2))
    a = F.extract(g, F.FeatureRequest(ids=("willems.f1",)))["willems.f1"]
    b = F.extract(g.transformed(2 * np.eye(2), (0.0, 0.0)), F.FeatureRequest(ids=("willems.f1",)))["willems.f1"]
    assert b == pytest.approx(2 * a, rel=1e-12)


def test_eccentricity_translation():
    assert F.descriptor("sonntag.f6").translation_invariant
    r = F.invariance_flags_audit(n=20, seed=4, ids=["sonntag.f6"])
    assert r.ok and r.checked["translation"] == 20


def test_audit_reports_violations():
    # a feature wrongly believed invariant would be caught: fake it by auditing
    # willems.f1 under a scale check through the report type itself
    rep = F.AuditReport(1, {"scale": 1}, [("willems.f1", "scale", 0, 1.0, 2.0)])
    assert not rep.ok
    assert rep.lines() == ["willems.f1 scale gesture=0 before=1.0 after=2.0"]


def test_random_gesture_is_valid_and_seeded():
    a = F.random_gesture(np.random.default_rng(9))
    b = F.random_gesture(np.random.default_rng(9))
    assert a.m >= 1
    for s, t in zip(a.strokes, b.strokes):
        assert np.array_equal(s.xy, t.xy)
    assert math.isfinite(F.extract(a)["willems.f1"])
