"""Synthetic symbol gestures for the eleven symbol classes."""

from __future__ import annotations

import math

import numpy as np

from .ink import Gesture, validate

SYMBOL_CLASSES = (
    "arrow",
    "circle",
    "rectangle",
    "triangle",
    "diamond",
    "overlapping-rectangles",
    "cube",
    "pentagrams",
    "checkmark",
    "checkmarks",
    "send-symbol",
)

TOTAL_POINTS = 60
DT_MS = 5.0
PRESSURE = 0.5
SIZE = 100.0


def _closed(*pts):
    return [*pts, pts[0]]


def _rect(x0, y0, x1, y1):
    return _closed((x0, y0), (x1, y0), (x1, y1), (x0, y1))


def _star(cx, cy, r):
    # {5/2} star polygon, one closed stroke
    pts = [(cx + r * math.sin(4 * math.pi * k / 5), cy - r * math.cos(4 * math.pi * k / 5)) for k in range(5)]
    return _closed(*pts)


def _checkmark(x0, y0, w):
    return [(x0, y0 + 0.55 * w), (x0 + 0.35 * w, y0 + w), (x0 + w, y0)]


def templates(cls: str) -> list:
    """Template strokes in a 100-unit box; the circle is marked as an arc."""
    s = SIZE
    if cls == "arrow":
        return [[(0, 0.5 * s), (s, 0.5 * s)], [(0.75 * s, 0.3 * s), (s, 0.5 * s), (0.75 * s, 0.7 * s)]]
    if cls == "circle":
        return ["arc"]
    if cls == "rectangle":
        return [_rect(0, 0.2 * s, s, 0.7 * s)]
    if cls == "triangle":
        return [_closed((0.5 * s, 0), (s, 0.85 * s), (0, 0.85 * s))]
    if cls == "diamond":
        return [_closed((0.5 * s, 0), (0.85 * s, 0.5 * s), (0.5 * s, s), (0.15 * s, 0.5 * s))]
    if cls == "overlapping-rectangles":
        return [_rect(0, 0, 0.6 * s, 0.6 * s), _rect(0.35 * s, 0.35 * s, s, s)]
    if cls == "cube":
        a, o = 0.65 * s, 0.35 * s
        return [
            _rect(0, o, a, o + a),
            _rect(o, 0, o + a, a),
            [(0, o), (o, 0)],
            [(a, o), (o + a, 0)],
            [(a, o + a), (o + a, a)],
            [(0, o + a), (o, a)],
        ]
    if cls == "pentagrams":
        return [_star(0.25 * s, 0.5 * s, 0.24 * s), _star(0.75 * s, 0.5 * s, 0.24 * s)]
    if cls == "checkmark":
        return [_checkmark(0, 0, s)]
    if cls == "checkmarks":
        return [_checkmark(0, 0.25 * s, 0.45 * s), _checkmark(0.55 * s, 0.25 * s, 0.45 * s)]
    if cls == "send-symbol":
        return [_closed((0, 0), (s, 0.5 * s), (0, s), (0.3 * s, 0.5 * s))]
    raise ValueError(f"unknown symbol class {cls!r}")


def _resample_polyline(pts: np.ndarray, count: int) -> np.ndarray:
    """``count`` points equally spaced along the polyline, end points kept."""
    seg = np.hypot(*np.diff(pts, axis=0).T)
    cum = np.concatenate([[0.0], np.cumsum(seg)])
    s = np.linspace(0.0, cum[-1], count)
    s[-1] = cum[-1]
    return np.column_stack([np.interp(s, cum, pts[:, 0]), np.interp(s, cum, pts[:, 1])])


def _arc(count: int) -> np.ndarray:
    # closed polygon: count - 1 distinct vertices plus the closing sample
    ang = 2 * np.pi * np.arange(count) / (count - 1)
    pts = np.column_stack([0.5 * SIZE + 0.5 * SIZE * np.sin(ang), 0.5 * SIZE - 0.5 * SIZE * np.cos(ang)])
    pts[-1] = pts[0]
    return pts


def _allocate(lengths: list[float], total: int) -> list[int]:
    """Split ``total`` samples over strokes proportionally to length, at least 3 each."""
    L = sum(lengths)
    counts = [max(3, int(round(total * l / L))) for l in lengths]
    return counts


def synthesize(cls: str, seed: int = 0, jitter: float = 0.0) -> Gesture:
    """Deterministic sample of a symbol class.

    The template is resampled to about 60 points, spread over the strokes in
    proportion to their length; each coordinate then gets Gaussian noise with
    SD ``jitter`` times the template's bounding-box diagonal. Samples are
    5 ms apart (also across pen lifts) with pressure 0.5.
    """
    if not 0.0 <= jitter <= 0.2:
        raise ValueError("jitter must lie in [0, 0.2]")
    parts = templates(cls)
    if parts == ["arc"]:
        strokes = [_arc(TOTAL_POINTS + 1)]
    else:
        arrays = [np.asarray(p, dtype=float) for p in parts]
        lengths = [float(np.hypot(*np.diff(a, axis=0).T).sum()) for a in arrays]
        strokes = [_resample_polyline(a, c) for a, c in zip(arrays, _allocate(lengths, TOTAL_POINTS))]
    allpts = np.concatenate(strokes)
    diag = float(np.hypot(*(allpts.max(axis=0) - allpts.min(axis=0))))
    rng = np.random.default_rng([seed, SYMBOL_CLASSES.index(cls)])
    out = []
    t = 0.0
    for pts in strokes:
        if jitter > 0:
            pts = pts + rng.normal(0.0, jitter * diag, pts.shape)
        n = pts.shape[0]
        ts = t + DT_MS * np.arange(n)
        out.append(np.column_stack([pts, np.full(n, PRESSURE), ts]))
        t = ts[-1] + DT_MS
    return validate(out)
