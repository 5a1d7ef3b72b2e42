"""Feature registry: identity, set, category and invariance flags.

Categories follow the seven syntactic classes (angle, space, centroidal,
temporal, pressure, trajectory, meta) plus ``semantic``. Flags record which
similarity transforms leave a feature unchanged; the invariance audit
checks them empirically.
"""

from __future__ import annotations

from dataclasses import dataclass

SETS = ("sonntag", "rubine", "willems", "hbf49", "semantic")
SYNTACTIC_SETS = SETS[:4]
CATEGORIES = ("angle", "space", "centroidal", "temporal", "pressure", "trajectory", "meta", "semantic")


@dataclass(frozen=True)
class FeatureDescriptor:
    id: str
    set: str
    name: str
    category: str
    translation_invariant: bool
    scale_invariant: bool
    rotation_invariant: bool
    min_samples: int = 1

    @property
    def flags(self) -> str:
        return "".join(c if on else "-" for c, on in zip("TSR", (self.translation_invariant, self.scale_invariant, self.rotation_invariant)))


# (suffix, name, category, flags, min_samples); flags is a subset of "TSR"
_SONNTAG = [
    ("f1", "Number of strokes", "meta", "TSR", 1),
    ("f2", "Length", "space", "TR", 1),
    ("f3", "Convex hull area", "space", "TR", 1),
    ("f4", "Convex hull perimeter length", "space", "TR", 1),
    ("f5", "Compactness", "space", "TSR", 1),
    ("f6", "Eccentricity", "space", "TSR", 2),
    ("f7", "Principal axes ratio", "space", "TSR", 2),
    ("f8", "Circular variance", "angle", "TSR", 1),
    ("f9", "Rectangularity", "angle", "TSR", 2),
    ("f10", "Closure", "trajectory", "TSR", 2),
    ("f11", "Curvature", "angle", "TSR", 3),
    ("f12", "Perpendicularity", "angle", "TSR", 3),
    ("f13", "Signed perpendicularity", "angle", "TSR", 3),
    ("f14.sin", "Angles after resampling (sum of sines)", "angle", "TSR", 2),
    ("f14.cos", "Angles after resampling (sum of cosines)", "angle", "TSR", 2),
]

_RUBINE = [
    ("f1", "Cosine of initial angle", "angle", "TS", 3),
    ("f2", "Sine of initial angle", "angle", "TS", 3),
    ("f3", "Length of bounding box diagonal", "space", "T", 1),
    ("f4", "Angle of bounding box diagonal", "angle", "TS", 1),
    ("f5", "Distance between first and last point", "space", "TR", 1),
    ("f6", "Cosine of first to last point vector", "angle", "TS", 2),
    ("f7", "Sine of first to last point vector", "angle", "TS", 2),
    ("f8", "Total gesture length", "space", "TR", 1),
    ("f9", "Total angle traversed", "angle", "TSR", 3),
    ("f10", "Sum of absolute angles", "angle", "TSR", 3),
    ("f11", "Sum of squared angles", "angle", "TSR", 3),
    ("f12", "Maximum speed (squared)", "temporal", "TR", 2),
    ("f13", "Duration", "temporal", "TSR", 1),
]

_WILLEMS = [
    ("f1", "Length", "space", "TR", 1),
    ("f2", "Convex hull area", "space", "TR", 1),
    ("f3", "Compactness", "space", "TSR", 1),
    ("f4", "Eccentricity (co-ordinate axes)", "space", "TS", 1),
    ("f5", "Ratio of co-ordinate axes", "space", "TS", 1),
    ("f6", "Closure", "trajectory", "TSR", 2),
    ("f7", "Circular variance", "angle", "TSR", 1),
    ("f8", "Curvature", "angle", "TSR", 3),
    ("f9", "Average curvature", "angle", "TSR", 3),
    ("f10", "SD of curvature", "angle", "TSR", 3),
    ("f11", "Pen up/down ratio", "temporal", "TSR", 1),
    ("f12", "Average direction", "trajectory", "TS", 2),
    ("f13", "Perpendicularity", "angle", "TSR", 3),
    ("f14", "Average perpendicularity", "angle", "TSR", 3),
    ("f15", "SD of perpendicularity", "angle", "TSR", 3),
    ("f16", "Centroid offset", "centroidal", "TR", 2),
    ("f17", "Length of first principal axis", "space", "TR", 2),
    ("f18", "Principal axis orientation (sin)", "angle", "TS", 2),
    ("f19", "Principal axis orientation (cos)", "angle", "TS", 2),
    ("f20", "Rectangularity", "angle", "TSR", 2),
    ("f21", "Maximum angular difference", "angle", "TSR", 5),
    ("f22", "Average pressure", "pressure", "TSR", 1),
    ("f23", "SD of pressure", "pressure", "TSR", 1),
    ("f24", "Duration", "temporal", "TSR", 1),
    ("f25", "Average velocity", "temporal", "TR", 3),
    ("f26", "SD of velocity", "temporal", "TR", 3),
    ("f27", "Maximum velocity", "temporal", "TR", 3),
    ("f28", "Average acceleration", "temporal", "TR", 5),
    ("f29", "SD of acceleration", "temporal", "TR", 5),
    ("f30", "Maximum acceleration", "temporal", "TR", 5),
    ("f31", "Minimum acceleration", "temporal", "TR", 5),
    ("f32", "Cup count", "trajectory", "TS", 3),
    ("f33", "First cup offset", "trajectory", "TS", 3),
    ("f34", "Last cup offset", "trajectory", "TS", 3),
    ("f35", "Initial horizontal offset", "space", "TS", 1),
    ("f36", "Final horizontal offset", "space", "TS", 1),
    ("f37", "Initial vertical offset", "space", "TS", 1),
    ("f38", "Final vertical offset", "space", "TS", 1),
    ("f39", "Number of straight lines", "meta", "TSR", 2),
    ("f40", "Average length of straight lines", "space", "TR", 2),
    ("f41", "SD of straight line length", "meta", "TR", 2),
    ("f42", "Straight line ratio", "meta", "TSR", 2),
    ("f43", "Largest straight line ratio", "meta", "TSR", 2),
    ("f44", "Number of pen down events", "trajectory", "TSR", 1),
]
_WILLEMS += [(f"f{44 + o}", f"Sample ratio octant {o}", "space", "TS", 2) for o in range(1, 9)]
_WILLEMS += [
    ("f53", "Number of connected components", "meta", "TS", 1),
    ("f54", "Number of crossings", "meta", "TSR", 1),
    ("f55", "Cosine of initial angle", "angle", "TS", 3),
    ("f56", "Sine of initial angle", "angle", "TS", 3),
    ("f57", "Length of bounding box diagonal", "space", "T", 1),
    ("f58", "Angle of bounding box diagonal", "angle", "TS", 1),
    ("f59", "Length between first and last point", "space", "TR", 1),
    ("f60", "Cosine of first to last point vector", "angle", "TS", 2),
    ("f61", "Sine of first to last point vector", "angle", "TS", 2),
    ("f62", "Absolute curvature", "angle", "TSR", 3),
    ("f63", "Squared curvature", "angle", "TSR", 3),
    ("f64", "Macro perpendicularity", "angle", "TSR", 5),
    ("f65", "Average macro perpendicularity", "angle", "TSR", 5),
    ("f66", "SD of macro perpendicularity", "angle", "TSR", 5),
    ("f67", "Ratio of principal axes", "space", "TSR", 2),
    ("f68", "Average centroidal radius", "centroidal", "TR", 1),
    ("f69", "SD of centroidal radius", "centroidal", "TR", 1),
]
for _s in range(1, 9):
    _WILLEMS += [
        (f"f{68 + 2 * _s}", f"Sin chain code {_s}", "trajectory", "TS", 2),
        (f"f{69 + 2 * _s}", f"Cos chain code {_s}", "trajectory", "TS", 2),
    ]
_WILLEMS += [
    ("f86", "Average stroke length", "space", "TR", 1),
    ("f87", "SD of stroke length", "space", "TR", 1),
    ("f88", "Average stroke direction", "trajectory", "TS", 2),
    ("f89", "SD of stroke direction", "trajectory", "TS", 2),
]

_HBF49 = [
    ("f1", "First point x", "space", "TS", 1),
    ("f2", "First point y", "space", "TS", 1),
    ("f3", "Last point x", "space", "TS", 1),
    ("f4", "Last point y", "space", "TS", 1),
    ("f5", "First to last point vector length", "space", "TR", 1),
    ("f6", "First to last point vector, x component", "angle", "TS", 2),
    ("f7", "First to last point vector, y component", "angle", "TS", 2),
    ("f8", "Closure", "trajectory", "TSR", 2),
    ("f9", "Initial vector, x component", "angle", "TS", 3),
    ("f10", "Initial vector, y component", "angle", "TS", 3),
    ("f11", "Inflexion x", "trajectory", "TS", 2),
    ("f12", "Inflexion y", "trajectory", "TS", 2),
    ("f13", "Proportion of downstroke trajectory", "trajectory", "TS", 2),
    ("f14", "Number of strokes", "meta", "TSR", 1),
    ("f15", "Angle of bounding box diagonal", "angle", "TS", 1),
    ("f16", "Trajectory length", "space", "TR", 1),
    ("f17", "Ratio between half-perimeter and trajectory", "trajectory", "TS", 2),
    ("f18", "Deviation", "centroidal", "TR", 1),
    ("f19", "Average direction", "angle", "TS", 2),
    ("f20", "Curvature", "angle", "TSR", 3),
    ("f21", "Perpendicularity", "angle", "TSR", 3),
    ("f22", "k-perpendicularity", "angle", "TSR", 5),
    ("f23", "Maximum k-angle", "angle", "TSR", 5),
    ("f24", "Dominant direction 0/180 deg", "angle", "TS", 2),
    ("f25", "Dominant direction 45/225 deg", "angle", "TS", 2),
    ("f26", "Dominant direction 90/270 deg", "angle", "TS", 2),
    ("f27", "Dominant direction 135/315 deg", "angle", "TS", 2),
    ("f28", "Relative angle histogram bin 1", "angle", "TSR", 5),
    ("f29", "Relative angle histogram bin 2", "angle", "TSR", 5),
    ("f30", "Relative angle histogram bin 3", "angle", "TSR", 5),
    ("f31", "Relative angle histogram bin 4", "angle", "TSR", 5),
]
_HBF49 += [
    (f"f{32 + 3 * r + c}", f"2D histogram cell {r + 1}{c + 1}", "space", "TS", 1)
    for r in range(3)
    for c in range(3)
]
_HBF49 += [(f"f{40 + j}", f"Hu moment {j}", "centroidal", "TR", 1) for j in range(1, 8)]
_HBF49 += [
    ("f48", "Normalised convex hull area", "space", "TS", 1),
    ("f49", "Convex hull compactness", "space", "TSR", 1),
]

_SEMANTIC = [
    ("f1", "Clock centre offset", "semantic", "TSR", 1),
    ("f2", "Hour hand length", "semantic", "TR", 2),
    ("f3", "Minute hand length", "semantic", "TR", 2),
    ("f4", "Hour/minute hand length ratio", "semantic", "TSR", 2),
    ("f5", "Angle between hands", "semantic", "TSR", 2),
    ("f6", "Hour hand orientation", "semantic", "TS", 2),
    ("f7", "Minute hand orientation", "semantic", "TS", 2),
    ("f8", "Clock face gap", "semantic", "TSR", 3),
]
_SEMANTIC += [(f"f9.d{d}", f"Displacement of digit {d}", "semantic", "TS", 1) for d in range(1, 13)]


def _build():
    out = []
    for set_name, rows in (
        ("sonntag", _SONNTAG),
        ("rubine", _RUBINE),
        ("willems", _WILLEMS),
        ("hbf49", _HBF49),
        ("semantic", _SEMANTIC),
    ):
        for suffix, name, category, flags, min_samples in rows:
            assert category in CATEGORIES, category
            out.append(
                FeatureDescriptor(
                    id=f"{set_name}.{suffix}",
                    set=set_name,
                    name=name,
                    category=category,
                    translation_invariant="T" in flags,
                    scale_invariant="S" in flags,
                    rotation_invariant="R" in flags,
                    min_samples=min_samples,
                )
            )
    return tuple(out)


_CATALOG = _build()
_BY_ID = {d.id: d for d in _CATALOG}
_POSITION = {d.id: i for i, d in enumerate(_CATALOG)}


def catalog() -> tuple[FeatureDescriptor, ...]:
    """All descriptors in canonical order: sonntag, rubine, willems, hbf49, semantic."""
    return _CATALOG


def descriptor(fid: str) -> FeatureDescriptor:
    from ..errors import UnknownFeatureId

    try:
        return _BY_ID[fid]
    except KeyError:
        raise UnknownFeatureId(f"unknown feature id {fid!r}") from None


def ids_for_set(set_name: str) -> list[str]:
    return [d.id for d in _CATALOG if d.set == set_name]


def catalog_position(fid: str) -> int:
    return _POSITION[fid]
