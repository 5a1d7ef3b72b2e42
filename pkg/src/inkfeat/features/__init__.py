"""Feature extraction pipeline over the syntactic sets."""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ..errors import UnknownFeatureId
from ..ink import Gesture, validate
from . import hbf49, rubine, sonntag, willems
from .catalog import (
    CATEGORIES,
    SETS,
    SYNTACTIC_SETS,
    FeatureDescriptor,
    catalog,
    catalog_position,
    descriptor,
    ids_for_set,
)
from .context import DEFAULT_PARAMS, Context, Values

__all__ = [
    "CATEGORIES",
    "SETS",
    "SYNTACTIC_SETS",
    "FeatureDescriptor",
    "FeatureRequest",
    "FeatureVector",
    "AuditReport",
    "catalog",
    "descriptor",
    "ids_for_set",
    "extract",
    "extract_batch",
    "invariance_flags_audit",
    "random_gesture",
]

_COMPUTE = {
    "sonntag": sonntag.compute,
    "rubine": rubine.compute,
    "willems": willems.compute,
    "hbf49": hbf49.compute,
}


@dataclass(frozen=True)
class FeatureRequest:
    """Which features to compute.

    ``sets`` and ``ids`` are unioned; when both are empty every syntactic
    set is requested. ``params`` overrides entries of ``DEFAULT_PARAMS``
    (``k``, ``window``, ``threshold``, ``eps``, ...).
    """

    sets: tuple[str, ...] = ()
    ids: tuple[str, ...] = ()
    params: dict = field(default_factory=dict)

    def resolve(self) -> list[str]:
        """Requested ids in catalog order, validated."""
        wanted = set()
        for s in self.sets:
            if s == "all":
                for name in SYNTACTIC_SETS:
                    wanted.update(ids_for_set(name))
                continue
            if s not in SYNTACTIC_SETS:
                raise UnknownFeatureId(f"unknown or non-syntactic feature set {s!r}")
            wanted.update(ids_for_set(s))
        for fid in self.ids:
            d = descriptor(fid)
            if d.set not in SYNTACTIC_SETS:
                raise UnknownFeatureId(f"{fid!r} needs a role annotation; use the cdt tools")
            wanted.add(fid)
        if not self.sets and not self.ids:
            for name in SYNTACTIC_SETS:
                wanted.update(ids_for_set(name))
        return sorted(wanted, key=catalog_position)


@dataclass(frozen=True)
class FeatureVector:
    ids: tuple[str, ...]
    values: np.ndarray
    degenerate: frozenset = frozenset()

    def __getitem__(self, fid: str) -> float:
        try:
            return float(self.values[self.ids.index(fid)])
        except ValueError:
            raise UnknownFeatureId(f"feature {fid!r} not in this vector") from None

    def __len__(self) -> int:
        return len(self.ids)

    def as_dict(self) -> dict[str, float]:
        return {f: float(v) for f, v in zip(self.ids, self.values)}

    def is_degenerate(self, fid: str) -> bool:
        return fid in self.degenerate


def extract(g: Gesture, req: FeatureRequest | None = None) -> FeatureVector:
    """Compute the requested features of one gesture.

    Whole sets are evaluated and then filtered, so a subset request returns
    exactly the entries of the full request. Features whose ``min_samples``
    exceeds the sample count, or whose denominator vanishes, are 0 and
    listed in ``degenerate``.
    """
    req = req or FeatureRequest()
    ids = req.resolve()
    ctx = Context(g, req.params)
    merged = Values()
    for name in SYNTACTIC_SETS:
        if any(f.startswith(name + ".") for f in ids):
            part = _COMPUTE[name](ctx)
            merged.values.update(part.values)
            merged.degenerate |= part.degenerate
    values = np.empty(len(ids))
    degenerate = set()
    for j, fid in enumerate(ids):
        if descriptor(fid).min_samples > ctx.n or fid in merged.degenerate:
            values[j] = 0.0
            degenerate.add(fid)
        else:
            values[j] = merged.values[fid]
    return FeatureVector(tuple(ids), values, frozenset(degenerate))


def thread_count(threads: int | None = None) -> int:
    if threads is None:
        threads = int(os.environ.get("INKFEAT_THREADS", "1") or 1)
    return max(1, threads)


def extract_batch(gestures, req: FeatureRequest | None = None, threads: int | None = None) -> list[FeatureVector]:
    """``extract`` over many gestures; results follow input order."""
    gestures = list(gestures)
    req = req or FeatureRequest()
    req.resolve()  # fail early on unknown ids
    n = thread_count(threads)
    if n == 1 or len(gestures) < 2:
        return [extract(g, req) for g in gestures]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(lambda g: extract(g, req), gestures))


# ---------------------------------------------------------------------------
# invariance audit


def random_gesture(rng: np.random.Generator, max_strokes: int = 3) -> Gesture:
    """Smooth random multi-stroke gesture of roughly unit-10 size."""
    strokes = []
    t0 = 0.0
    for _ in range(int(rng.integers(1, max_strokes + 1))):
        n = int(rng.integers(20, 61))
        s = np.linspace(0.0, 1.0, n)
        c = rng.uniform(-5, 5, 2)
        xy = np.tile(c, (n, 1))
        for h in range(1, 4):
            amp = rng.normal(0, 4.0 / h, (2, 2))
            xy[:, 0] += amp[0, 0] * np.sin(h * np.pi * s) + amp[0, 1] * np.cos(h * np.pi * s)
            xy[:, 1] += amp[1, 0] * np.sin(h * np.pi * s) + amp[1, 1] * np.cos(h * np.pi * s)
        t = t0 + np.cumsum(rng.uniform(3.0, 12.0, n))
        p = rng.uniform(0.2, 0.9, n)
        strokes.append(np.column_stack([xy, p, t]))
        t0 = t[-1] + rng.uniform(50.0, 200.0)
    return validate(strokes)


@dataclass
class AuditReport:
    gestures: int
    checked: dict[str, int]
    violations: list[tuple[str, str, int, float, float]]

    @property
    def ok(self) -> bool:
        return not self.violations

    def lines(self) -> list[str]:
        return [f"{fid} {kind} gesture={i} before={a!r} after={b!r}" for fid, kind, i, a, b in self.violations]


def _close(a: float, b: float, rel: float) -> bool:
    return abs(a - b) <= rel * max(1.0, abs(a))


def invariance_flags_audit(n: int = 100, seed: int = 0, ids=None) -> AuditReport:
    """Check the invariance flags on ``n`` random gestures.

    Each gesture is translated (1e-9 relative tolerance), uniformly scaled by
    ``s`` in [0.1, 10] (1e-6) and rotated (1e-6). Only features flagged for a
    transform are checked against it; features degenerate on the original
    gesture are skipped.
    """
    rng = np.random.default_rng(seed)
    req = FeatureRequest(ids=tuple(ids)) if ids else FeatureRequest()
    descs = [descriptor(f) for f in req.resolve()]
    checks = {
        "translation": (1e-9, [d.id for d in descs if d.translation_invariant]),
        "scale": (1e-6, [d.id for d in descs if d.scale_invariant]),
        "rotation": (1e-6, [d.id for d in descs if d.rotation_invariant]),
    }
    checked = {k: 0 for k in checks}
    violations = []
    for i in range(n):
        g = random_gesture(rng)
        base = extract(g, req)
        offset = rng.uniform(-100, 100, 2)
        s = float(rng.uniform(0.1, 10.0))
        phi = float(rng.uniform(0, 2 * math.pi))
        rot = np.array([[math.cos(phi), -math.sin(phi)], [math.sin(phi), math.cos(phi)]])
        moved = {
            "translation": g.transformed(np.eye(2), offset),
            "scale": g.transformed(s * np.eye(2), (0.0, 0.0)),
            "rotation": g.transformed(rot, (0.0, 0.0)),
        }
        for kind, (rel, fids) in checks.items():
            other = extract(moved[kind], req)
            for fid in fids:
                if fid in base.degenerate:
                    continue
                checked[kind] += 1
                a, b = base[fid], other[fid]
                if not _close(a, b, rel):
                    violations.append((fid, kind, i, a, b))
    return AuditReport(n, checked, violations)
