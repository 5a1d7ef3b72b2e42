"""Computational-geometry and kinematics primitives over ink samples.

Functions accept a :class:`~inkfeat.ink.FlatPointSequence`, a
:class:`~inkfeat.ink.Gesture` (flattened on the fly) or anything that
converts to an ``(n, 2)`` float array. Orientation predicates are exact:
a floating-point evaluation is accepted when it clears a forward error
bound and is otherwise recomputed with rationals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key

import numpy as np
from scipy.signal import find_peaks

from .errors import DegenerateGeometry, IndexOutOfRange, InsufficientSamples
from .ink import FlatPointSequence, Gesture, flatten

# Shewchuk's ccwerrboundA for orient2d evaluated in double precision
_EPS = np.finfo(float).eps / 2
_ORIENT_ERRBOUND = (3.0 + 16.0 * _EPS) * _EPS
# below this the products may have underflowed and the bound no longer holds
_ORIENT_TINY = 2.0 ** -900
_ANGLE_SLACK = 1e-9  # well above atan2 rounding on [0, pi]

DEFAULT_LINE_WINDOW = 5
DEFAULT_LINE_THRESHOLD = 0.26
DEFAULT_CUP_SEGMENTS = 64
DEFAULT_CUP_PROMINENCE = 0.05
DEFAULT_TOUCH_FRACTION = 0.01
ISOTROPY_TOL = 1e-12


def as_points(S) -> np.ndarray:
    """Return the ``(n, 2)`` coordinate array behind ``S``."""
    if isinstance(S, FlatPointSequence):
        return S.xy
    if isinstance(S, Gesture):
        return flatten(S).xy
    pts = np.asarray(S, dtype=float)
    if pts.ndim != 2 or pts.shape[1] < 2:
        raise ValueError("expected an (n, 2) point array")
    return pts[:, :2]


def _flat(S) -> FlatPointSequence:
    if isinstance(S, FlatPointSequence):
        return S
    if isinstance(S, Gesture):
        return flatten(S)
    raise TypeError("timestamps required: pass a Gesture or FlatPointSequence")


def _stroke_pieces(S) -> list[np.ndarray]:
    """Coordinate arrays per stroke; a bare array counts as one stroke."""
    if isinstance(S, Gesture):
        return [s.xy for s in S.strokes]
    if isinstance(S, FlatPointSequence):
        return [S.xy[sl] for sl in S.stroke_slices()]
    return [as_points(S)]


# --------------------------------------------------------------------------
# basic measures


def distance(q, r) -> float:
    return math.hypot(float(r[0]) - float(q[0]), float(r[1]) - float(q[1]))


def segment_lengths(S) -> np.ndarray:
    pts = as_points(S)
    d = np.diff(pts, axis=0)
    return np.hypot(d[:, 0], d[:, 1])


def path_length(S, i: int = 0, j: int | None = None) -> float:
    """Path length ``L_{i,j}`` between samples ``i <= j`` (``j`` defaults to the last)."""
    pts = as_points(S)
    n = pts.shape[0]
    if j is None:
        j = n - 1
    if not (0 <= i <= j < n):
        raise IndexOutOfRange(f"need 0 <= i <= j < {n}, got i={i}, j={j}")
    seg = segment_lengths(pts[i:j + 1])
    return math.fsum(seg.tolist())


@dataclass(frozen=True)
class BoundingBox:
    xmin: float
    xmax: float
    ymin: float
    ymax: float

    @property
    def width(self) -> float:
        return self.xmax - self.xmin

    @property
    def height(self) -> float:
        return self.ymax - self.ymin

    @property
    def area(self) -> float:
        return self.width * self.height

    @property
    def diagonal(self) -> float:
        return math.hypot(self.width, self.height)

    @property
    def center(self) -> tuple[float, float]:
        return (self.xmin + 0.5 * (self.xmax - self.xmin), self.ymin + 0.5 * (self.ymax - self.ymin))


def bounding_box(S) -> BoundingBox:
    pts = as_points(S)
    lo = pts.min(axis=0)
    hi = pts.max(axis=0)
    return BoundingBox(float(lo[0]), float(hi[0]), float(lo[1]), float(hi[1]))


def centroid(S) -> tuple[float, float]:
    pts = as_points(S)
    mu = pts.mean(axis=0)
    return (float(mu[0]), float(mu[1]))


def centroidal_radii(S) -> np.ndarray:
    """Distances of every sample from the centroid."""
    pts = as_points(S)
    d = pts - pts.mean(axis=0)
    return np.hypot(d[:, 0], d[:, 1])


# --------------------------------------------------------------------------
# exact orientation


def _orient_exact(ax, ay, bx, by, cx, cy) -> int:
    F = Fraction
    det = (F(ax) - F(cx)) * (F(by) - F(cy)) - (F(ay) - F(cy)) * (F(bx) - F(cx))
    return (det > 0) - (det < 0)


def orientation(a, b, c) -> int:
    """Sign of the signed area of triangle ``abc``.

    +1 when ``a, b, c`` turn counter-clockwise in a y-up frame (clockwise on
    screen), -1 for the opposite turn, 0 when collinear. Exact for all
    finite double inputs.
    """
    ax, ay = float(a[0]), float(a[1])
    bx, by = float(b[0]), float(b[1])
    cx, cy = float(c[0]), float(c[1])
    left = (ax - cx) * (by - cy)
    right = (ay - cy) * (bx - cx)
    det = left - right
    bound = _ORIENT_ERRBOUND * (abs(left) + abs(right))
    if bound >= _ORIENT_TINY:
        if det > bound:
            return 1
        if -det > bound:
            return -1
    elif (ax == cx or by == cy) and (ay == cy or bx == cx):
        return 0  # both products are exact zeros
    return _orient_exact(ax, ay, bx, by, cx, cy)


def _orient_signs(ax, ay, bx, by, cx, cy) -> np.ndarray:
    """Vectorised :func:`orientation` over equally shaped coordinate arrays."""
    left = (ax - cx) * (by - cy)
    right = (ay - cy) * (bx - cx)
    det = left - right
    bound = _ORIENT_ERRBOUND * (np.abs(left) + np.abs(right))
    sign = np.where(det > bound, 1, np.where(-det > bound, -1, 0)).astype(np.int8)
    tiny = bound < _ORIENT_TINY
    zero = tiny & ((ax == cx) | (by == cy)) & ((ay == cy) | (bx == cx))
    sign[zero] = 0
    for u in np.flatnonzero(((np.abs(det) <= bound) | tiny) & ~zero):
        sign[u] = _orient_exact(ax[u], ay[u], bx[u], by[u], cx[u], cy[u])
    return sign


# --------------------------------------------------------------------------
# convex hull


@dataclass(frozen=True, eq=False)
class ConvexHull:
    """Counter-clockwise (y-up sense) hull polygon with area and perimeter.

    A collinear point set yields a two-vertex hull whose perimeter is the
    out-and-back traversal, i.e. twice the segment length, and zero area.
    """

    vertices: np.ndarray
    area: float
    perimeter: float


def _polygon_area(v: np.ndarray) -> float:
    if v.shape[0] < 3:
        return 0.0
    x, y = v[:, 0], v[:, 1]
    return 0.5 * abs(float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))))


def _polygon_perimeter(v: np.ndarray) -> float:
    if v.shape[0] < 2:
        return 0.0
    d = np.roll(v, -1, axis=0) - v
    return float(np.hypot(d[:, 0], d[:, 1]).sum())


def convex_hull(S) -> ConvexHull:
    """Convex hull by Graham's scan.

    The pivot is the lowest point (smallest y, then smallest x); the other
    points are sorted by polar angle around it with ties broken by
    distance (near-equal angles are ordered by exact orientation), and the
    scan pops every vertex that does not make a strict
    left turn. Collinear boundary points are dropped.
    """
    pts = np.unique(as_points(S), axis=0)
    if pts.shape[0] == 1:
        return ConvexHull(vertices=pts.copy(), area=0.0, perimeter=0.0)
    piv = int(np.lexsort((pts[:, 0], pts[:, 1]))[0])
    pivot = pts[piv]
    rest = np.delete(pts, piv, axis=0)
    d = rest - pivot
    ang = np.arctan2(d[:, 1], d[:, 0])
    dist2 = d[:, 0] ** 2 + d[:, 1] ** 2
    order = list(np.lexsort((dist2, ang)))
    plist = rest.tolist()
    pv = pivot.tolist()
    d2 = dist2.tolist()

    def by_angle(a, b):
        o = orientation(pv, plist[a], plist[b])
        if o:
            return -o
        return (d2[a] > d2[b]) - (d2[a] < d2[b])

    # atan2 cannot separate nearly equal directions; settle those runs exactly
    i = 0
    while i < len(order):
        j = i + 1
        while j < len(order) and ang[order[j]] - ang[order[i]] <= _ANGLE_SLACK:
            j += 1
        if j - i > 1:
            order[i:j] = sorted(order[i:j], key=cmp_to_key(by_angle))
        i = j
    stack = [pv]
    for k in order:
        p = plist[k]
        while len(stack) >= 2 and orientation(stack[-2], stack[-1], p) <= 0:
            stack.pop()
        stack.append(p)
    v = np.array(stack)
    return ConvexHull(vertices=v, area=_polygon_area(v), perimeter=_polygon_perimeter(v))


# --------------------------------------------------------------------------
# principal axes


@dataclass(frozen=True)
class PrincipalAxes:
    p1: tuple[float, float]
    p2: tuple[float, float]
    alpha: float
    beta: float
    center: tuple[float, float]


def principal_axes(S) -> PrincipalAxes:
    """PCA axes of the sample coordinates and the extents along them.

    ``p1`` is the major eigenvector of the (population) covariance, taken in
    closed form at angle ``0.5 * atan2(2 c_xy, c_xx - c_yy)`` and signed so
    that ``p1_x >= 0`` (``p1_y >= 0`` on ties); ``p2`` is ``p1`` turned by
    +90 degrees. An isotropic covariance (no preferred direction, up to
    rounding) gets ``p1 = (1, 0)``. ``alpha`` / ``beta`` are the extents of
    the point set along ``p1`` / ``p2``; ``center`` is the centre of the
    PCA-aligned enclosing box.
    """
    pts = as_points(S)
    if pts.shape[0] < 2 or np.all(pts == pts[0]):
        raise DegenerateGeometry("principal axes need at least two distinct points")
    mu = pts.mean(axis=0)
    d = pts - mu
    cxx = float(np.mean(d[:, 0] ** 2))
    cyy = float(np.mean(d[:, 1] ** 2))
    cxy = float(np.mean(d[:, 0] * d[:, 1]))
    if math.hypot(2 * cxy, cxx - cyy) <= ISOTROPY_TOL * (cxx + cyy):
        phi = 0.0
    else:
        phi = 0.5 * math.atan2(2 * cxy, cxx - cyy)
    p1 = np.array([math.cos(phi), math.sin(phi)])
    if p1[0] < 0 or (p1[0] == 0 and p1[1] < 0):
        p1 = -p1
    p2 = np.array([-p1[1], p1[0]])
    u = d @ p1
    v = d @ p2
    cu = 0.5 * (u.min() + u.max())
    cv = 0.5 * (v.min() + v.max())
    c = mu + cu * p1 + cv * p2
    return PrincipalAxes(
        p1=(float(p1[0]), float(p1[1])),
        p2=(float(p2[0]), float(p2[1])),
        alpha=float(u.max() - u.min()),
        beta=float(v.max() - v.min()),
        center=(float(c[0]), float(c[1])),
    )


# --------------------------------------------------------------------------
# angles


def _unsigned_angle(ux, uy, vx, vy):
    # arccos(u.v / |u||v|) evaluated as atan2(|u x v|, u.v) for accuracy near 0 and pi
    return np.arctan2(np.abs(ux * vy - uy * vx), ux * vx + uy * vy)


def vertex_angle(S, i: int, k: int = 1) -> float:
    """Unsigned angle in ``[0, pi]`` between ``s_{i-k} -> s_i`` and ``s_i -> s_{i+k}``."""
    pts = as_points(S)
    n = pts.shape[0]
    if k < 1 or not (k <= i < n - k):
        raise IndexOutOfRange(f"vertex {i} with stride {k} outside sequence of {n} samples")
    u = pts[i] - pts[i - k]
    v = pts[i + k] - pts[i]
    if not (u.any() and v.any()):
        raise DegenerateGeometry(f"zero-length arm at vertex {i}")
    return float(_unsigned_angle(u[0], u[1], v[0], v[1]))


def vertex_angles(S, k: int = 1) -> np.ndarray:
    """All angles ``theta_i^k`` for ``i = k .. n-1-k``.

    Vertices with a zero-length arm (repeated samples) contribute 0.
    """
    pts = as_points(S)
    n = pts.shape[0]
    if n < 2 * k + 1:
        return np.zeros(0)
    u = pts[k:n - k] - pts[: n - 2 * k]
    v = pts[2 * k:] - pts[k:n - k]
    return _unsigned_angle(u[:, 0], u[:, 1], v[:, 0], v[:, 1])


def signed_turn_angle(S, i: int) -> float:
    """Signed turning angle at vertex ``i`` in ``(-pi, pi]``.

    Two-argument arctangent of ``(dx_i dy_{i-1} - dx_{i-1} dy_i,
    dx_i dx_{i-1} + dy_i dy_{i-1})``; with y pointing down, a clockwise
    turn on screen is negative.
    """
    pts = as_points(S)
    n = pts.shape[0]
    if not (1 <= i <= n - 2):
        raise IndexOutOfRange(f"vertex {i} outside 1..{n - 2}")
    d0 = pts[i] - pts[i - 1]
    d1 = pts[i + 1] - pts[i]
    if not (d0.any() and d1.any()):
        raise DegenerateGeometry(f"zero-length segment at vertex {i}")
    return float(signed_turn_angles(pts[i - 1:i + 2])[0])


def signed_turn_angles(S) -> np.ndarray:
    """Vectorised :func:`signed_turn_angle` for ``i = 1 .. n-2`` (0 at degenerate vertices)."""
    pts = as_points(S)
    if pts.shape[0] < 3:
        return np.zeros(0)
    d = np.diff(pts, axis=0)
    dx0, dy0 = d[:-1, 0], d[:-1, 1]
    dx1, dy1 = d[1:, 0], d[1:, 1]
    num = dx1 * dy0 - dx0 * dy1
    den = dx1 * dx0 + dy1 * dy0
    theta = np.arctan2(num, den)
    theta = np.where(theta == -np.pi, np.pi, theta)
    return theta + 0.0  # drop negative zeros


def direction_angles(S) -> np.ndarray:
    """Segment directions ``atan2(dy, dx)`` in ``(-pi, pi]``."""
    d = np.diff(as_points(S), axis=0)
    a = np.arctan2(d[:, 1], d[:, 0])
    return np.where(a == -np.pi, np.pi, a) + 0.0


def full_angles(dx, dy) -> np.ndarray:
    """``atan2(dy, dx)`` mapped to ``[0, 2 pi)``."""
    a = np.arctan2(dy, dx)
    a = np.where(a < 0, a + 2 * np.pi, a)
    return np.where(a >= 2 * np.pi, 0.0, a) + 0.0


def octants(dx, dy) -> np.ndarray:
    """``floor(angle / (pi/4))`` for the direction of ``(dx, dy)`` in ``[0, 2 pi)``.

    Decided by exact sign and magnitude comparisons, so directions on or
    within rounding of an octant boundary land where their true angle puts
    them (``atan2`` can be off by an ulp). The zero vector maps to 0.
    """
    dx = np.asarray(dx, dtype=float)
    dy = np.asarray(dy, dtype=float)
    ax, ay = np.abs(dx), np.abs(dy)
    upper = (dy > 0) | ((dy == 0) & (dx > 0))  # angle in [0, pi)
    o = np.where(
        upper,
        np.where(dx > 0, np.where(ay < ax, 0, 1), np.where(ay > ax, 2, 3)),
        np.where(dx < 0, np.where(ay < ax, 4, 5), np.where(ax < ay, 6, 7)),
    )
    return np.where((dx == 0) & (dy == 0), 0, o).astype(int)


# --------------------------------------------------------------------------
# resampling


def _dedupe(pts: np.ndarray) -> np.ndarray:
    if pts.shape[0] < 2:
        return pts
    keep = np.ones(pts.shape[0], dtype=bool)
    keep[1:] = np.any(pts[1:] != pts[:-1], axis=1)
    return pts[keep]


def point_at_length(S, s: float) -> np.ndarray:
    """Point on the polyline at arc length ``s`` (clamped to the path)."""
    pts = _dedupe(as_points(S))
    if pts.shape[0] == 1:
        return pts[0].copy()
    cum = np.concatenate([[0.0], np.cumsum(segment_lengths(pts))])
    return np.array([np.interp(s, cum, pts[:, 0]), np.interp(s, cum, pts[:, 1])])


def resample_equidistant(S, segments: int) -> np.ndarray:
    """``segments + 1`` points at arc lengths ``0, L/m, ..., L`` along the path."""
    if segments < 1:
        raise ValueError("segments must be >= 1")
    pts = _dedupe(as_points(S))
    if pts.shape[0] < 2:
        raise DegenerateGeometry("cannot resample a zero-length path")
    cum = np.concatenate([[0.0], np.cumsum(segment_lengths(pts))])
    total = cum[-1]
    pos = total * np.arange(segments + 1) / segments
    out = np.column_stack([np.interp(pos, cum, pts[:, 0]), np.interp(pos, cum, pts[:, 1])])
    out[0] = pts[0]
    out[-1] = pts[-1]
    return out


# --------------------------------------------------------------------------
# segment intersection and crossings


def _on_segment_box(ax, ay, bx, by, cx, cy, dx, dy):
    return (
        (np.maximum(ax, bx) >= np.minimum(cx, dx))
        & (np.maximum(cx, dx) >= np.minimum(ax, bx))
        & (np.maximum(ay, by) >= np.minimum(cy, dy))
        & (np.maximum(cy, dy) >= np.minimum(ay, by))
    )


def _intersect_mask(a1, a2, b1, b2) -> np.ndarray:
    """Closed-segment intersection test for row-aligned ``(k, 2)`` arrays."""
    ax, ay, bx, by = a1[:, 0], a1[:, 1], a2[:, 0], a2[:, 1]
    cx, cy, dx, dy = b1[:, 0], b1[:, 1], b2[:, 0], b2[:, 1]
    box = _on_segment_box(ax, ay, bx, by, cx, cy, dx, dy)
    result = np.zeros(ax.shape[0], dtype=bool)
    idx = np.flatnonzero(box)
    if idx.size == 0:
        return result
    ax, ay, bx, by = ax[idx], ay[idx], bx[idx], by[idx]
    cx, cy, dx, dy = cx[idx], cy[idx], dx[idx], dy[idx]
    o1 = _orient_signs(ax, ay, bx, by, cx, cy)
    o2 = _orient_signs(ax, ay, bx, by, dx, dy)
    o3 = _orient_signs(cx, cy, dx, dy, ax, ay)
    o4 = _orient_signs(cx, cy, dx, dy, bx, by)
    # collinear pairs reduce to the (already checked) bounding-box overlap
    hit = (o1.astype(int) * o2 <= 0) & (o3.astype(int) * o4 <= 0)
    result[idx] = hit
    return result


def segments_intersect(a1, a2, b1, b2) -> bool:
    """True iff the closed segments ``a1a2`` and ``b1b2`` share a point."""
    arr = [np.asarray(v, dtype=float).reshape(1, 2) for v in (a1, a2, b1, b2)]
    return bool(_intersect_mask(*arr)[0])


def _segments(S):
    """Per-stroke deduplicated segments plus adjacency bookkeeping."""
    starts, ends, stroke_id, local, closed_last = [], [], [], [], []
    for sid, piece in enumerate(_stroke_pieces(S)):
        pts = _dedupe(np.asarray(piece, dtype=float))
        k = pts.shape[0] - 1
        if k < 1:
            continue
        starts.append(pts[:-1])
        ends.append(pts[1:])
        stroke_id.append(np.full(k, sid))
        local.append(np.arange(k))
        closed = k >= 3 and bool(np.all(pts[0] == pts[-1]))
        closed_last.append(np.full(k, k - 1 if closed else -1))
    if not starts:
        empty = np.zeros((0, 2))
        z = np.zeros(0, dtype=int)
        return empty, empty, z, z, z
    return (
        np.concatenate(starts),
        np.concatenate(ends),
        np.concatenate(stroke_id),
        np.concatenate(local),
        np.concatenate(closed_last),
    )


def _overlapping_pairs(lo: np.ndarray, hi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Index pairs ``i < j`` whose axis-aligned boxes overlap (closed).

    Sort-and-sweep on x: after sorting by ``lo_x`` the partners of a box
    form a contiguous run, located by binary search.
    """
    order = np.argsort(lo[:, 0], kind="stable")
    xs = lo[order, 0]
    upper = np.searchsorted(xs, hi[order, 0], side="right")
    pos = np.arange(order.size)
    counts = np.maximum(upper - pos - 1, 0)
    p = np.repeat(pos, counts)
    offsets = np.arange(counts.sum()) - np.repeat(np.cumsum(counts) - counts, counts)
    q = p + 1 + offsets
    i, j = order[p], order[q]
    keep = (hi[i, 1] >= lo[j, 1]) & (hi[j, 1] >= lo[i, 1])
    i, j = i[keep], j[keep]
    return np.minimum(i, j), np.maximum(i, j)


def count_crossings(S) -> int:
    """Number of intersecting non-adjacent segment pairs.

    Segments never join consecutive strokes (pen-up jumps are not drawn).
    Within a stroke, consecutive segments share a vertex and are skipped,
    as are the first and last segment of a stroke that ends exactly where
    it started. Repeated samples are collapsed first.
    """
    a, b, sid, loc, closed_last = _segments(S)
    m = a.shape[0]
    if m < 2:
        return 0
    i, j = _overlapping_pairs(np.minimum(a, b), np.maximum(a, b))
    same = sid[i] == sid[j]
    adjacent = same & ((loc[j] - loc[i] == 1) | ((loc[i] == 0) & (loc[j] == closed_last[j])))
    i, j = i[~adjacent], j[~adjacent]
    if i.size == 0:
        return 0
    return int(_intersect_mask(a[i], b[i], a[j], b[j]).sum())


# --------------------------------------------------------------------------
# straight lines


@dataclass(frozen=True)
class StraightLine:
    start: int  # first sample index (flat)
    end: int  # last sample index (flat), inclusive
    length: float


@dataclass(frozen=True)
class StraightLineSet:
    lines: tuple[StraightLine, ...]

    def __len__(self) -> int:
        return len(self.lines)

    @property
    def lengths(self) -> np.ndarray:
        return np.array([ln.length for ln in self.lines], dtype=float)


def _lines_in_piece(pts: np.ndarray, offset: int, window: int, threshold: float):
    n = pts.shape[0]
    if n < window or n < 2:
        return []
    turn = np.zeros(n)
    turn[1:n - 1] = vertex_angles(pts, 1)
    # window [j, j+window-1] is straight when its interior turning sums below the threshold
    inner = window - 2
    if inner > 0:
        c = np.concatenate([[0.0], np.cumsum(turn)])
        wsum = c[window - 1:n] - c[1:n - window + 2]
    else:
        wsum = np.zeros(n - window + 1)
    straight = wsum <= threshold
    seg = segment_lengths(pts)
    out = []
    j = 0
    nw = straight.shape[0]
    while j < nw:
        if not straight[j]:
            j += 1
            continue
        k = j
        while k + 1 < nw and straight[k + 1]:
            k += 1
        first, last = j, k + window - 1
        out.append(StraightLine(offset + first, offset + last, float(seg[first:last].sum())))
        j = k + 1
    return out


def detect_straight_lines(S, window: int = DEFAULT_LINE_WINDOW, threshold: float = DEFAULT_LINE_THRESHOLD) -> StraightLineSet:
    """Maximal runs of samples with little accumulated turning.

    A window of ``window`` consecutive samples is straight when the sum of
    the unsigned vertex angles at its interior samples is at most
    ``threshold`` radians. Consecutive straight windows merge into one
    line. Lines never span a pen-up.
    """
    if window < 2:
        raise ValueError("window must be >= 2")
    lines = []
    if isinstance(S, (FlatPointSequence, Gesture)):
        fs = _flat(S)
        for sl in fs.stroke_slices():
            lines.extend(_lines_in_piece(fs.xy[sl], sl.start, window, threshold))
    else:
        lines.extend(_lines_in_piece(as_points(S), 0, window, threshold))
    return StraightLineSet(tuple(lines))


# --------------------------------------------------------------------------
# cups


@dataclass(frozen=True)
class CupSet:
    indices: tuple[int, ...]  # positions on the resampled trajectory
    positions: tuple[float, ...]  # arc-length fraction in [0, 1]

    @property
    def count(self) -> int:
        return len(self.indices)

    @property
    def first_offset(self) -> float:
        return self.positions[0] if self.positions else 0.0

    @property
    def last_offset(self) -> float:
        return self.positions[-1] if self.positions else 0.0


def detect_cups(S, segments: int = DEFAULT_CUP_SEGMENTS, prominence: float = DEFAULT_CUP_PROMINENCE) -> CupSet:
    """Vertical direction reversals of the trajectory.

    The path is resampled to ``segments`` equal pieces; interior local
    maxima and minima of y whose prominence is at least ``prominence``
    times the bounding-box height count as cups.
    """
    pts = as_points(S)
    h = float(pts[:, 1].max() - pts[:, 1].min()) if pts.shape[0] else 0.0
    if pts.shape[0] < 3 or h <= 0:
        return CupSet((), ())
    try:
        r = resample_equidistant(pts, segments)
    except DegenerateGeometry:
        return CupSet((), ())
    y = r[:, 1]
    need = prominence * h
    hi, _ = find_peaks(y, prominence=need)
    lo, _ = find_peaks(-y, prominence=need)
    idx = sorted(int(i) for i in np.concatenate([hi, lo]))
    return CupSet(tuple(idx), tuple(i / segments for i in idx))


# --------------------------------------------------------------------------
# connected components


def _point_segment_dist(p: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Distances from each point in ``p`` (k, 2) to each segment ``a[j]b[j]`` -> (k, s)."""
    ab = b - a
    ap = p[:, None, :] - a[None, :, :]
    den = np.einsum("ij,ij->i", ab, ab)
    with np.errstate(invalid="ignore", divide="ignore"):
        tt = np.where(den > 0, np.einsum("kij,ij->ki", ap, ab) / np.where(den > 0, den, 1.0), 0.0)
    tt = np.clip(tt, 0.0, 1.0)
    closest = a[None, :, :] + tt[:, :, None] * ab[None, :, :]
    diff = p[:, None, :] - closest
    return np.hypot(diff[..., 0], diff[..., 1])


def _as_segments(pts: np.ndarray):
    pts = _dedupe(pts)
    if pts.shape[0] == 1:
        return pts, pts
    return pts[:-1], pts[1:]


def stroke_distance(p: np.ndarray, q: np.ndarray) -> float:
    """Minimum distance between two polylines (0 when they intersect)."""
    a1, a2 = _as_segments(np.asarray(p, dtype=float))
    b1, b2 = _as_segments(np.asarray(q, dtype=float))
    pa = np.concatenate([a1, a2[-1:]])
    pb = np.concatenate([b1, b2[-1:]])
    d = min(float(_point_segment_dist(pa, b1, b2).min()), float(_point_segment_dist(pb, a1, a2).min()))
    if d == 0.0:
        return 0.0
    i, j = np.meshgrid(np.arange(a1.shape[0]), np.arange(b1.shape[0]), indexing="ij")
    i, j = i.ravel(), j.ravel()
    if _intersect_mask(a1[i], a2[i], b1[j], b2[j]).any():
        return 0.0
    return d


def connected_components(g, eps: float | None = None) -> int:
    """Number of groups of strokes that touch, directly or through other strokes.

    Two strokes touch when their polylines come within ``eps``; by default
    ``eps`` is 1% of the gesture's bounding-box diagonal.
    """
    pieces = _stroke_pieces(g)
    m = len(pieces)
    if m <= 1:
        return m
    if eps is None:
        eps = DEFAULT_TOUCH_FRACTION * bounding_box(np.concatenate(pieces)).diagonal
    parent = list(range(m))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    boxes = [(p.min(axis=0), p.max(axis=0)) for p in pieces]
    for a in range(m):
        for b in range(a + 1, m):
            if find(a) == find(b):
                continue
            lo_a, hi_a = boxes[a]
            lo_b, hi_b = boxes[b]
            gap = np.maximum(0.0, np.maximum(lo_a - hi_b, lo_b - hi_a))
            if math.hypot(gap[0], gap[1]) > eps:
                continue
            if stroke_distance(pieces[a], pieces[b]) <= eps:
                parent[find(a)] = find(b)
    return len({find(a) for a in range(m)})


# --------------------------------------------------------------------------
# kinematics


def velocity(S, i: int) -> np.ndarray:
    """Central-difference velocity ``(s_{i+1} - s_{i-1}) / (t_{i+1} - t_{i-1})``."""
    fs = _flat(S)
    n = len(fs)
    if not (1 <= i <= n - 2):
        raise InsufficientSamples(f"velocity needs 1 <= i <= n-2 (n={n}, i={i})")
    return (fs.xy[i + 1] - fs.xy[i - 1]) / (fs.t[i + 1] - fs.t[i - 1])


def acceleration(S, i: int) -> np.ndarray:
    """``(v_{i+1} - v_{i-1}) / (t_{i+1} - t_{i-1})`` from central-difference velocities."""
    fs = _flat(S)
    n = len(fs)
    if not (2 <= i <= n - 3):
        raise InsufficientSamples(f"acceleration needs 2 <= i <= n-3 (n={n}, i={i})")
    return (velocity(fs, i + 1) - velocity(fs, i - 1)) / (fs.t[i + 1] - fs.t[i - 1])


def speed(S, i: int) -> float:
    """Scalar speed ``(|s_{i+1} - s_i| + |s_i - s_{i-1}|) / (t_{i+1} - t_{i-1})``."""
    fs = _flat(S)
    n = len(fs)
    if not (1 <= i <= n - 2):
        raise InsufficientSamples(f"speed needs 1 <= i <= n-2 (n={n}, i={i})")
    return float(speeds(fs)[i - 1])


def speeds(S) -> np.ndarray:
    """:func:`speed` for every ``i = 1 .. n-2``."""
    fs = _flat(S)
    if len(fs) < 3:
        return np.zeros(0)
    seg = segment_lengths(fs.xy)
    return (seg[1:] + seg[:-1]) / (fs.t[2:] - fs.t[:-2])


def scalar_accelerations(S) -> np.ndarray:
    """``(v_{i+1} - v_{i-1}) / (t_{i+1} - t_{i-1})`` over scalar speeds, ``i = 2 .. n-3``."""
    fs = _flat(S)
    n = len(fs)
    if n < 5:
        return np.zeros(0)
    v = speeds(fs)  # v[j] is the speed at sample j + 1
    return (v[2:] - v[:-2]) / (fs.t[3:n - 1] - fs.t[1:n - 3])
