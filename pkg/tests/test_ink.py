import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from inkfeat import errors
from inkfeat.ink import Gesture, flatten, validate
from inkfeat.inkio import DocGesture, InkDocument, read_document, write_document


def test_validate_minimal_stroke():
    g = validate([[(0, 0, 0.5, 0), (3, 4, 0.5, 100)]])
    assert isinstance(g, Gesture)
    assert g.n == 2 and g.m == 1


def test_validate_equal_timestamps_rejected():
    with pytest.raises(errors.NonMonotonicTime):
        validate([[(0, 0, 0.5, 10), (1, 0, 0.5, 10)]])


def test_validate_pressure_out_of_range():
    with pytest.raises(errors.PressureOutOfRange):
        validate([[(0, 0, 1.5, 0)]])


def test_validate_empty_inputs():
    with pytest.raises(errors.EmptyGesture):
        validate([])
    with pytest.raises(errors.EmptyGesture):
        validate([[]])


def test_validate_non_finite():
    with pytest.raises(errors.NonFiniteValue):
        validate([[(0, math.nan, 0.5, 0)]])
    with pytest.raises(errors.NonFiniteValue):
        validate([[(0, 0, 0.5, math.inf)]])


def test_validate_overlapping_strokes():
    with pytest.raises(errors.NonMonotonicTime):
        validate([[(0, 0, 0.5, 0), (1, 0, 0.5, 10)], [(2, 0, 0.5, 10)]])


def test_validate_copies_input():
    raw = np.array([[0, 0, 0.5, 0], [1, 1, 0.5, 5]], dtype=float)
    g = validate([raw])
    raw[0, 0] = 99.0
    assert g.strokes[0].xy[0, 0] == 0.0
    with pytest.raises(ValueError):
        g.strokes[0].xy[0, 0] = 1.0


def test_flatten_concatenates():
    g = validate([[(0, 0, .5, 0), (1, 0, .5, 1), (2, 0, .5, 2)], [(5, 5, .5, 10), (6, 5, .5, 11)]])
    fs = flatten(g)
    assert len(fs) == 5
    assert np.all(np.diff(fs.t) >= 0)


def test_flatten_single_stroke_identity():
    raw = [(0, 0, .5, 0), (1, 2, .6, 1), (3, 1, .7, 2), (4, 4, .8, 3)]
    fs = flatten(validate([raw]))
    assert [tuple(s) for s in fs.samples()] == [tuple(map(float, r)) for r in raw]


def test_flatten_orders_strokes_by_time():
    g = validate([[(0, 0, .5, 0), (1, 0, .5, 10)], [(9, 9, .5, 20), (8, 8, .5, 30)]])
    fs = flatten(g)
    assert fs.t.tolist() == [0, 10, 20, 30]
    assert fs.xy[:2].tolist() == [[0, 0], [1, 0]]


finite = st.floats(-1e6, 1e6, allow_nan=False)


@st.composite
def raw_gestures(draw):
    strokes, t = [], draw(st.floats(0, 1e3))
    for _ in range(draw(st.integers(1, 3))):
        n = draw(st.integers(1, 8))
        s = []
        for _ in range(n):
            s.append((draw(finite), draw(finite), draw(st.floats(0, 1)), t))
            t += draw(st.floats(0.001, 50))
        strokes.append(s)
    return strokes


@settings(max_examples=60, deadline=None)
@given(raw_gestures())
def test_flatten_preserves_tuples_bitwise(raw):
    g = validate(raw)
    flat = [tuple(s) for s in flatten(g).samples()]
    assert flat == [tuple(map(float, r)) for s in raw for r in s]
    assert len(flat) == g.n


@settings(max_examples=60, deadline=None)
@given(raw_gestures())
def test_validate_serialize_validate_identity(raw):
    g = validate(raw)
    doc = InkDocument(version=1, test="t", gestures=[DocGesture("g", None, g)])
    back = read_document(write_document(doc)).gesture("g")
    assert back == g
    assert validate(back) == g
