import os
import sys

import numpy as np
import pytest

from inkfeat.ink import validate

HERE = os.path.dirname(os.path.abspath(__file__))
DATA = os.path.join(HERE, "data")
sys.path.insert(0, os.path.join(HERE, "oracle"))


def stroke(pts, t0=0.0, dt=10.0, p=0.5):
    return [(float(x), float(y), p, t0 + dt * i) for i, (x, y) in enumerate(pts)]


def gesture(*strokes, dt=10.0, gap=10.0):
    """Gesture from point lists; strokes follow each other ``gap`` ms apart."""
    out, t0 = [], 0.0
    for pts in strokes:
        s = stroke(pts, t0, dt)
        out.append(s)
        t0 = s[-1][3] + gap
    return validate(out)


def circle_points(n=64, center=(0.0, 0.0), r=1.0):
    a = 2 * np.pi * np.arange(n) / n
    return list(zip(center[0] + r * np.cos(a), center[1] + r * np.sin(a)))


@pytest.fixture(scope="session")
def fixtures_doc():
    from inkfeat.inkio import read_document

    with open(os.path.join(DATA, "fixtures.json"), "rb") as fh:
        return read_document(fh.read())


def raw_strokes(*strokes, dt=10.0, gap=10.0, p=0.5):
    """The raw ``[x, y, p, t]`` rows ``gesture`` would build, for the desk oracle."""
    out, t0 = [], 0.0
    for pts in strokes:
        s = [list(r) for r in stroke(pts, t0, dt, p)]
        out.append(s)
        t0 = s[-1][3] + gap
    return out


def fixture_gesture(doc, gid):
    return doc.gesture(gid)


ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
