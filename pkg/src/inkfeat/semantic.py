"""Clock-drawing semantic features over role-labelled gestures.

Roles come from the document's label map: ``clockface``, ``hour_hand``,
``minute_hand`` and ``digit_<d>`` for d in 1..12. Angles on the dial are
in degrees, 0 at twelve o'clock (negative y, since y grows downward) and
increasing clockwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateGeometry, MissingRole
from .ink import Gesture, flatten, validate
from .inkio import DocGesture, InkDocument

FACE, HOUR, MINUTE = "clockface", "hour_hand", "minute_hand"
DIGIT_PREFIX = "digit_"


@dataclass(frozen=True)
class ClockAnnotation:
    clockface: str | None
    hour_hand: str | None
    minute_hand: str | None
    digits: dict[int, str] = field(default_factory=dict)

    @classmethod
    def from_labels(cls, labels: dict[str, str]) -> "ClockAnnotation":
        by_role: dict[str, str] = {}
        digits = {}
        for gid, role in labels.items():
            if role.startswith(DIGIT_PREFIX):
                digits[int(role[len(DIGIT_PREFIX):])] = gid
            else:
                by_role.setdefault(role, gid)
        return cls(by_role.get(FACE), by_role.get(HOUR), by_role.get(MINUTE), dict(sorted(digits.items())))

    @classmethod
    def from_obj(cls, obj: dict) -> "ClockAnnotation":
        digits = {int(k): v for k, v in (obj.get("digits") or {}).items()}
        return cls(obj.get(FACE), obj.get(HOUR), obj.get(MINUTE), dict(sorted(digits.items())))

    def to_obj(self) -> dict:
        return {
            FACE: self.clockface,
            HOUR: self.hour_hand,
            MINUTE: self.minute_hand,
            "digits": {str(d): g for d, g in self.digits.items()},
        }

    def labels(self) -> dict[str, str]:
        out = {self.clockface: FACE, self.hour_hand: HOUR, self.minute_hand: MINUTE}
        out.update({g: f"{DIGIT_PREFIX}{d}" for d, g in self.digits.items()})
        return {k: v for k, v in out.items() if k is not None}


@dataclass(frozen=True)
class ClockFeatures:
    c: tuple[float, float]
    face_center: tuple[float, float]
    radius: float
    center_offset: float
    face_gap: float
    hour_length: float
    minute_length: float
    hand_ratio: float
    alpha: float
    hour_orientation: float
    minute_orientation: float
    digit_displacement: dict[int, float]

    def as_dict(self) -> dict:
        return {
            "c": list(self.c),
            "face_center": list(self.face_center),
            "radius": self.radius,
            "center_offset": self.center_offset,
            "face_gap": self.face_gap,
            "hour_length": self.hour_length,
            "minute_length": self.minute_length,
            "hand_ratio": self.hand_ratio,
            "alpha": self.alpha,
            "hour_orientation": self.hour_orientation,
            "minute_orientation": self.minute_orientation,
            "digit_displacement": {str(d): v for d, v in self.digit_displacement.items()},
        }

    def semantic_values(self) -> dict[str, float]:
        """Values keyed by the ``semantic.*`` catalog ids (absent digits omitted)."""
        out = {
            "semantic.f1": self.center_offset,
            "semantic.f2": self.hour_length,
            "semantic.f3": self.minute_length,
            "semantic.f4": self.hand_ratio,
            "semantic.f5": self.alpha,
            "semantic.f6": self.hour_orientation,
            "semantic.f7": self.minute_orientation,
            "semantic.f8": self.face_gap,
        }
        out.update({f"semantic.f9.d{d}": v for d, v in self.digit_displacement.items()})
        return out


def fit_clockface(face) -> tuple[tuple[float, float], float]:
    """Algebraic least-squares circle through the face samples.

    Solves ``x^2 + y^2 + D x + E y + F = 0`` in the least-squares sense on
    centred, scaled coordinates (for conditioning) and maps back.
    """
    xy = flatten(face).xy if isinstance(face, Gesture) else np.asarray(face, dtype=float)
    if xy.shape[0] < 3:
        raise DegenerateGeometry("circle fit needs at least three samples")
    mu = xy.mean(axis=0)
    d = xy - mu
    scale = float(np.sqrt(np.mean(np.sum(d ** 2, axis=1))))
    if scale == 0:
        raise DegenerateGeometry("all face samples coincide")
    u = d / scale
    A = np.column_stack([u[:, 0], u[:, 1], np.ones(len(u))])
    b = -(u[:, 0] ** 2 + u[:, 1] ** 2)
    sv = np.linalg.svd(A, compute_uv=False)
    if sv[-1] <= 1e-10 * sv[0]:
        raise DegenerateGeometry("face samples are collinear")
    (D, E, F), *_ = np.linalg.lstsq(A, b, rcond=None)
    cx, cy = -D / 2, -E / 2
    r2 = cx * cx + cy * cy - F
    if r2 <= 0:
        raise DegenerateGeometry("no real circle fits the face samples")
    center = (float(mu[0] + scale * cx), float(mu[1] + scale * cy))
    return center, float(scale * math.sqrt(r2))


def dial_angle(dx: float, dy: float) -> float:
    """Direction of ``(dx, dy)`` in dial degrees [0, 360)."""
    a = math.degrees(math.atan2(dx, -dy)) % 360.0
    return 0.0 if a == 360.0 else a


def hand_geometry(hand: Gesture, center) -> tuple[float, float]:
    """Length and dial orientation of a hand.

    The hand runs from whichever end sample lies closer to ``center`` to the
    other one, so the drawing direction does not matter.
    """
    xy = flatten(hand).xy
    if xy.shape[0] < 2:
        raise DegenerateGeometry("a hand needs at least two samples")
    c = np.asarray(center, dtype=float)
    a, b = xy[0], xy[-1]
    da, db = float(np.hypot(*(a - c))), float(np.hypot(*(b - c)))
    if da > db or (da == db and tuple(a) > tuple(b)):
        a, b = b, a
    v = b - a
    length = float(math.hypot(v[0], v[1]))
    if length == 0:
        raise DegenerateGeometry("hand end points coincide")
    return length, dial_angle(v[0], v[1])


def ideal_digit_position(center, radius: float, digit: int, factor: float = 0.75) -> np.ndarray:
    ang = math.radians(30.0 * digit)
    return np.array([center[0] + factor * radius * math.sin(ang), center[1] - factor * radius * math.cos(ang)])


def _lookup(doc: InkDocument, gid: str | None, role: str) -> Gesture:
    if gid is None:
        raise MissingRole(f"no gesture labelled {role!r}")
    try:
        return doc.gesture(gid)
    except KeyError:
        raise MissingRole(f"{role} gesture {gid!r} not in document") from None


def clock_features(doc: InkDocument, ann: ClockAnnotation | None = None, digit_factor: float = 0.75) -> ClockFeatures:
    """Semantic measurements of an annotated clock drawing.

    ``c`` is the mean of the per-gesture centroids of all annotated clock
    parts, so dense strokes (the face) do not dominate it.
    """
    ann = ann or ClockAnnotation.from_labels(doc.labels)
    face = _lookup(doc, ann.clockface, FACE)
    hour = _lookup(doc, ann.hour_hand, HOUR)
    minute = _lookup(doc, ann.minute_hand, MINUTE)
    digits = {d: _lookup(doc, gid, f"{DIGIT_PREFIX}{d}") for d, gid in ann.digits.items()}

    center, r = fit_clockface(face)
    parts = [face, hour, minute, *digits.values()]
    c = np.mean([flatten(g).xy.mean(axis=0) for g in parts], axis=0)
    center_offset = float(np.hypot(*(c - np.asarray(center)))) / r

    fxy = flatten(face).xy
    face_gap = float(np.hypot(*(fxy[-1] - fxy[0]))) / r

    lh, oh = hand_geometry(hour, center)
    lm, om = hand_geometry(minute, center)
    diff = abs(oh - om) % 360.0
    alpha = min(diff, 360.0 - diff)

    disp = {}
    for d, g in digits.items():
        ideal = ideal_digit_position(center, r, d, digit_factor)
        disp[d] = float(np.hypot(*(flatten(g).xy.mean(axis=0) - ideal))) / r

    return ClockFeatures(
        c=(float(c[0]), float(c[1])),
        face_center=center,
        radius=r,
        center_offset=center_offset,
        face_gap=face_gap,
        hour_length=lh,
        minute_length=lm,
        hand_ratio=lh / lm,
        alpha=alpha,
        hour_orientation=oh,
        minute_orientation=om,
        digit_displacement=disp,
    )


@dataclass(frozen=True)
class Rubric:
    """Scoring thresholds; one point per satisfied criterion."""

    max_face_gap: float = 0.1
    max_center_offset: float = 0.1
    max_digit_displacement: float = 0.25
    hour: int = 11
    minute: int = 10
    time_tolerance: float = 15.0
    alpha_range: tuple[float, float] = (70.0, 100.0)

    def target_orientations(self) -> tuple[float, float]:
        return (30.0 * (self.hour % 12) + 0.5 * self.minute) % 360.0, (6.0 * self.minute) % 360.0


def _angle_gap(a: float, b: float) -> float:
    d = abs(a - b) % 360.0
    return min(d, 360.0 - d)


def score_cdt(features: ClockFeatures, rubric: Rubric | None = None) -> tuple[int, list[str]]:
    """Six-point rubric. Findings are ``"<criterion>: <detail>"`` strings."""
    rb = rubric or Rubric()
    findings = []
    if features.face_gap > rb.max_face_gap:
        findings.append(f"face_closed: gap {features.face_gap:.3f} r")
    if features.center_offset > rb.max_center_offset:
        findings.append(f"center_offset: {features.center_offset:.3f} r")
    bad = [d for d, v in features.digit_displacement.items() if v > rb.max_digit_displacement]
    if bad:
        findings.append("digits: displaced " + " ".join(str(d) for d in bad))
    if not features.hand_ratio < 1.0:
        findings.append(f"hand_ratio: {features.hand_ratio:.3f}")
    th, tm = rb.target_orientations()
    if _angle_gap(features.hour_orientation, th) > rb.time_tolerance or _angle_gap(features.minute_orientation, tm) > rb.time_tolerance:
        findings.append(f"time: hands at {features.hour_orientation:.1f} / {features.minute_orientation:.1f} deg")
    lo, hi = rb.alpha_range
    if not lo <= features.alpha <= hi:
        findings.append(f"hand_angle: {features.alpha:.1f} deg")
    return 6 - len(findings), findings


# ---------------------------------------------------------------------------
# synthetic clocks


def _polyline_stroke(points, t0: float, dt: float = 5.0) -> tuple[np.ndarray, float]:
    pts = np.asarray(points, dtype=float)
    t = t0 + dt * np.arange(len(pts))
    return np.column_stack([pts, np.full(len(pts), 0.5), t]), float(t[-1])


def _segment(a, b, n: int) -> np.ndarray:
    s = np.linspace(0.0, 1.0, n)[:, None]
    return (1 - s) * np.asarray(a, dtype=float) + s * np.asarray(b, dtype=float)


def synthetic_clock(
    center=(100.0, 100.0),
    radius: float = 80.0,
    hour: int = 11,
    minute: int = 10,
    hour_length: float = 0.5,
    minute_length: float = 0.8,
    digit_offsets: dict[int, tuple[float, float]] | None = None,
    face_shift: tuple[float, float] = (0.0, 0.0),
    face_samples: int = 64,
) -> tuple[InkDocument, ClockAnnotation]:
    """A clock drawing built from exact angles.

    Lengths and offsets are fractions of ``radius``. Each digit is a small
    plus sign centred on its slot at 0.75 r (plus ``digit_offsets``);
    ``face_shift`` moves only the face circle.
    """
    cx, cy = center
    fx, fy = cx + face_shift[0] * radius, cy + face_shift[1] * radius
    t = 0.0
    gestures = []

    ang = 2 * np.pi * np.arange(face_samples + 1) / face_samples
    face_pts = np.column_stack([fx + radius * np.sin(ang), fy - radius * np.cos(ang)])
    face_pts[-1] = face_pts[0]
    stroke, t = _polyline_stroke(face_pts, t)
    gestures.append(DocGesture("face", None, validate([stroke])))

    def hand(gid, length, deg):
        nonlocal t
        tip = (cx + length * radius * math.sin(math.radians(deg)), cy - length * radius * math.cos(math.radians(deg)))
        stroke, t = _polyline_stroke(_segment((cx, cy), tip, 12), t + 200.0)
        gestures.append(DocGesture(gid, None, validate([stroke])))

    hand("hour", hour_length, (30.0 * (hour % 12) + 0.5 * minute) % 360.0)
    hand("minute", minute_length, (6.0 * minute) % 360.0)

    offsets = digit_offsets or {}
    size = 0.05 * radius
    digits = {}
    for d in range(1, 13):
        px, py = ideal_digit_position((cx, cy), radius, d)
        ox, oy = offsets.get(d, (0.0, 0.0))
        px, py = px + ox * radius, py + oy * radius
        s1, t = _polyline_stroke(_segment((px - size, py), (px + size, py), 5), t + 200.0)
        s2, t = _polyline_stroke(_segment((px, py - size), (px, py + size), 5), t + 100.0)
        gid = f"digit{d}"
        gestures.append(DocGesture(gid, None, validate([s1, s2])))
        digits[d] = gid

    ann = ClockAnnotation("face", "hour", "minute", digits)
    doc = InkDocument(version=1, test="CDT", regions=[], gestures=gestures, labels=ann.labels())
    return doc, ann
