"""JSON ink documents and delimited feature tables.

Document layout (all keys lowercase)::

    {"version": 1, "test": "CDT",
     "regions": [{"id": "r1", "role": "face", "bbox": [xmin, ymin, xmax, ymax]}],
     "gestures": [{"id": "g1", "region": "r1", "strokes": [[[x, y, p, t], ...], ...]}],
     "labels": {"g1": "clockface"}}

Floats are written with Python's shortest round-trip repr, so reading a
written document and writing it again reproduces the same bytes.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DocumentValidationError, ParseError, ValidationError
from .ink import Gesture, validate


@dataclass(frozen=True)
class Region:
    id: str
    role: str
    bbox: tuple[float, float, float, float]


@dataclass(frozen=True)
class DocGesture:
    id: str
    region: str | None
    gesture: Gesture


@dataclass
class InkDocument:
    version: int = 1
    test: str = ""
    regions: list[Region] = field(default_factory=list)
    gestures: list[DocGesture] = field(default_factory=list)
    labels: dict[str, str] = field(default_factory=dict)

    def gesture(self, gid: str) -> Gesture:
        for dg in self.gestures:
            if dg.id == gid:
                return dg.gesture
        raise KeyError(gid)

    def ids(self) -> list[str]:
        return [dg.id for dg in self.gestures]

    def check(self) -> None:
        """Raise :class:`ParseError` on duplicate ids or dangling references."""
        region_ids = [r.id for r in self.regions]
        if len(set(region_ids)) != len(region_ids):
            raise ParseError("duplicate region id")
        gids = self.ids()
        if len(set(gids)) != len(gids):
            raise ParseError("duplicate gesture id")
        known = set(region_ids)
        for dg in self.gestures:
            if dg.region is not None and dg.region not in known:
                raise ParseError(f"gesture {dg.id!r} references unknown region {dg.region!r}")
        for gid in self.labels:
            if gid not in gids:
                raise ParseError(f"label for unknown gesture {gid!r}")


def _fail(msg: str):
    raise ParseError(msg)


def _expect(cond: bool, msg: str) -> None:
    if not cond:
        _fail(msg)


def _number(v, what: str) -> float:
    _expect(isinstance(v, (int, float)) and not isinstance(v, bool), f"{what}: expected a number")
    return float(v)


def _string(v, what: str) -> str:
    _expect(isinstance(v, str), f"{what}: expected a string")
    return v


def _parse_gesture(obj) -> tuple[str, str | None, list]:
    _expect(isinstance(obj, dict), "gesture entry must be an object")
    _expect(set(obj) <= {"id", "region", "strokes"} and {"id", "strokes"} <= set(obj),
            "gesture entry needs exactly 'id', 'strokes' and optional 'region'")
    gid = _string(obj["id"], "gesture id")
    region = obj.get("region")
    if region is not None:
        region = _string(region, f"gesture {gid!r} region")
    strokes = obj["strokes"]
    _expect(isinstance(strokes, list), f"gesture {gid!r}: strokes must be a list")
    raw = []
    for s in strokes:
        _expect(isinstance(s, list), f"gesture {gid!r}: stroke must be a list of samples")
        rows = []
        for sample in s:
            _expect(isinstance(sample, list) and len(sample) == 4,
                    f"gesture {gid!r}: sample must be [x, y, p, t]")
            rows.append([_number(v, f"gesture {gid!r} sample") for v in sample])
        raw.append(rows)
    return gid, region, raw


def read_document(data: bytes) -> InkDocument:
    """Parse and validate a JSON document.

    Raises :class:`ParseError` for malformed JSON or schema violations and
    :class:`DocumentValidationError` (a ``ParseError``) when a gesture fails
    ink validation; the latter names the gesture and keeps the cause.
    """
    try:
        obj = json.loads(data.decode("utf-8") if isinstance(data, (bytes, bytearray)) else data)
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ParseError(f"malformed JSON: {exc}") from exc
    _expect(isinstance(obj, dict), "document must be a JSON object")
    _expect({"version", "gestures"} <= set(obj), "document needs 'version' and 'gestures'")
    unknown = set(obj) - {"version", "test", "regions", "gestures", "labels"}
    _expect(not unknown, f"unknown document keys: {sorted(unknown)}")
    version = obj["version"]
    _expect(isinstance(version, int) and not isinstance(version, bool), "version must be an integer")

    regions = []
    for r in obj.get("regions", []) or []:
        _expect(isinstance(r, dict) and set(r) == {"id", "role", "bbox"}, "region needs 'id', 'role', 'bbox'")
        bbox = r["bbox"]
        _expect(isinstance(bbox, list) and len(bbox) == 4, "region bbox must be [xmin, ymin, xmax, ymax]")
        regions.append(Region(_string(r["id"], "region id"), _string(r["role"], "region role"),
                              tuple(_number(v, "region bbox") for v in bbox)))

    _expect(isinstance(obj["gestures"], list), "gestures must be a list")
    gestures = []
    for entry in obj["gestures"]:
        gid, region, raw = _parse_gesture(entry)
        try:
            g = validate(raw)
        except ValidationError as exc:
            raise DocumentValidationError(gid, exc) from exc
        gestures.append(DocGesture(gid, region, g))

    labels = obj.get("labels", {}) or {}
    _expect(isinstance(labels, dict), "labels must be an object")
    labels = {_string(k, "label key"): _string(v, "label") for k, v in labels.items()}

    doc = InkDocument(version, _string(obj.get("test", ""), "test"), regions, gestures, labels)
    doc.check()
    return doc


def document_to_obj(doc: InkDocument) -> dict:
    return {
        "version": doc.version,
        "test": doc.test,
        "regions": [{"id": r.id, "role": r.role, "bbox": [float(v) for v in r.bbox]} for r in doc.regions],
        "gestures": [
            {"id": dg.id, "region": dg.region, "strokes": dg.gesture.to_lists()} for dg in doc.gestures
        ],
        "labels": dict(doc.labels),
    }


def write_document(doc: InkDocument) -> bytes:
    """Compact canonical JSON; ``regions`` is always present."""
    return json.dumps(document_to_obj(doc), separators=(",", ":"), allow_nan=False).encode("utf-8")


# ---------------------------------------------------------------------------
# feature tables


@dataclass(frozen=True)
class FeatureRow:
    gesture_id: str
    values: tuple[float, ...]
    degenerate: frozenset = frozenset()


@dataclass
class FeatureTable:
    """Rows share one column set, ``ids``, in catalog order."""

    ids: tuple[str, ...]
    rows: list[FeatureRow] = field(default_factory=list)

    def add(self, gesture_id: str, vector) -> None:
        """Append a row from a ``FeatureVector``."""
        if tuple(vector.ids) != tuple(self.ids):
            raise ValueError("feature vector columns differ from the table columns")
        self.rows.append(FeatureRow(gesture_id, tuple(float(v) for v in vector.values), frozenset(vector.degenerate)))

    def degenerate_columns(self) -> set[str]:
        out = set()
        for r in self.rows:
            out |= r.degenerate
        return out


def format_value(v: float) -> str:
    s = "%.12f" % v
    return s[1:] if s.startswith("-") and float(s) == 0 else s


def write_feature_table(t: FeatureTable, fmt: str = "csv") -> bytes:
    """Render a table as CSV or JSON.

    CSV: header ``gesture_id,<ids>``, 12 digits after the decimal point,
    and a ``<id>.degenerate`` column right after any feature that is
    degenerate in at least one row.
    """
    if fmt == "json":
        obj = {
            "features": list(t.ids),
            "rows": [
                {
                    "gesture_id": r.gesture_id,
                    "values": dict(zip(t.ids, r.values)),
                    "degenerate": [f for f in t.ids if f in r.degenerate],
                }
                for r in t.rows
            ],
        }
        return json.dumps(obj, separators=(",", ":"), allow_nan=False).encode("utf-8")
    if fmt != "csv":
        raise ValueError(f"unknown table format {fmt!r}")
    flagged = t.degenerate_columns()
    header = ["gesture_id"]
    for f in t.ids:
        header.append(f)
        if f in flagged:
            header.append(f + ".degenerate")
    lines = [",".join(header)]
    for r in t.rows:
        cells = [r.gesture_id]
        for f, v in zip(t.ids, r.values):
            cells.append(format_value(v))
            if f in flagged:
                cells.append("true" if f in r.degenerate else "false")
        lines.append(",".join(cells))
    return ("\n".join(lines) + "\n").encode("utf-8")


def read_feature_table(data: bytes, fmt: str = "csv") -> FeatureTable:
    text = data.decode("utf-8")
    if fmt == "json":
        obj = json.loads(text)
        ids = tuple(obj["features"])
        rows = [
            FeatureRow(r["gesture_id"], tuple(float(r["values"][f]) for f in ids), frozenset(r["degenerate"]))
            for r in obj["rows"]
        ]
        return FeatureTable(ids, rows)
    if fmt != "csv":
        raise ValueError(f"unknown table format {fmt!r}")
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if not header or header[0] != "gesture_id":
        raise ParseError("feature table must start with a gesture_id column")
    ids = [h for h in header[1:] if not h.endswith(".degenerate")]
    rows = []
    for cells in reader:
        rec = dict(zip(header, cells))
        values = tuple(float(rec[f]) for f in ids)
        degenerate = frozenset(f for f in ids if rec.get(f + ".degenerate") == "true")
        if any(not math.isfinite(v) for v in values):
            raise ParseError("non-finite value in feature table")
        rows.append(FeatureRow(cells[0], values, degenerate))
    return FeatureTable(tuple(ids), rows)


def table_from_vectors(named_vectors) -> FeatureTable:
    """Build a table from ``(row id, FeatureVector)`` pairs."""
    named_vectors = list(named_vectors)
    if not named_vectors:
        raise ValueError("empty feature table")
    t = FeatureTable(tuple(named_vectors[0][1].ids))
    for rid, v in named_vectors:
        t.add(rid, v)
    return t


def as_array(t: FeatureTable) -> np.ndarray:
    return np.array([r.values for r in t.rows], dtype=float).reshape(len(t.rows), len(t.ids))
