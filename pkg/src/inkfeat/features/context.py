"""Per-extraction memo of shared sub-results and the value collector."""

from __future__ import annotations

import math
from functools import cached_property

import numpy as np

from .. import geometry as geo
from ..errors import DegenerateGeometry
from ..ink import Gesture, flatten

DEFAULT_PARAMS = {
    "k": 2,
    "window": geo.DEFAULT_LINE_WINDOW,
    "threshold": geo.DEFAULT_LINE_THRESHOLD,
    "eps": None,
    "gamma": 0.25,
    "willems.chaincode": "weighted",
    "hbf49.f13": "proportion",
}


class Context:
    """Lazily computed quantities for one gesture; lives for one extract call."""

    def __init__(self, gesture: Gesture, params: dict | None = None):
        self.gesture = gesture
        self.params = dict(DEFAULT_PARAMS)
        if params:
            self.params.update(params)
        self.flat = flatten(gesture)
        self.xy = self.flat.xy
        self.n = len(self.flat)
        self.m = gesture.m

    @property
    def k(self) -> int:
        return int(self.params["k"])

    @cached_property
    def bbox(self) -> geo.BoundingBox:
        return geo.bounding_box(self.xy)

    @cached_property
    def hull(self) -> geo.ConvexHull:
        return geo.convex_hull(self.xy)

    @cached_property
    def pca(self) -> geo.PrincipalAxes | None:
        try:
            return geo.principal_axes(self.xy)
        except DegenerateGeometry:
            return None

    @cached_property
    def seg(self) -> np.ndarray:
        """Flat segment vectors, pen-up jumps included."""
        return np.diff(self.xy, axis=0)

    @cached_property
    def seg_len(self) -> np.ndarray:
        return np.hypot(self.seg[:, 0], self.seg[:, 1])

    @cached_property
    def length(self) -> float:
        return float(self.seg_len.sum())

    @cached_property
    def in_stroke_segments(self) -> np.ndarray:
        """Segment vectors drawn with the pen down (``n - m`` rows)."""
        parts = [np.diff(s.xy, axis=0) for s in self.gesture.strokes]
        return np.concatenate(parts) if parts else np.zeros((0, 2))

    @cached_property
    def theta(self) -> np.ndarray:
        """Unsigned vertex angles for ``i = 1 .. n-2``."""
        return geo.vertex_angles(self.xy, 1)

    @cached_property
    def theta_k(self) -> np.ndarray:
        """Unsigned ``k``-strided vertex angles for ``i = k .. n-1-k``."""
        return geo.vertex_angles(self.xy, self.k)

    @cached_property
    def centroid(self) -> np.ndarray:
        return self.xy.mean(axis=0)

    @cached_property
    def radii(self) -> np.ndarray:
        return geo.centroidal_radii(self.xy)

    @cached_property
    def straight_lines(self) -> geo.StraightLineSet:
        return geo.detect_straight_lines(self.flat, int(self.params["window"]), float(self.params["threshold"]))

    @cached_property
    def cups(self) -> geo.CupSet:
        return geo.detect_cups(self.xy)

    @cached_property
    def first_last(self) -> np.ndarray:
        return self.xy[-1] - self.xy[0]


class Values:
    """Ordered feature values with a degeneracy set.

    Degenerate features always carry 0.0, never NaN or infinity.
    """

    def __init__(self):
        self.values: dict[str, float] = {}
        self.degenerate: set[str] = set()

    def put(self, fid: str, value) -> None:
        v = float(value)
        if not math.isfinite(v):
            self.flag(fid)
            return
        self.values[fid] = v + 0.0

    def flag(self, fid: str) -> None:
        self.values[fid] = 0.0
        self.degenerate.add(fid)

    def ratio(self, fid: str, num, den) -> None:
        """``num / den``, degenerate when the denominator vanishes."""
        den = float(den)
        if den == 0.0:
            self.flag(fid)
        else:
            self.put(fid, float(num) / den)


def mean_sd(a: np.ndarray) -> tuple[float, float]:
    """Mean and population standard deviation."""
    mu = float(a.mean())
    return mu, float(np.sqrt(np.mean((a - mu) ** 2)))
