"""Validated, immutable digital-ink data model.

A :class:`Gesture` is an ordered tuple of :class:`Stroke` objects, each
holding ``n >= 1`` samples ``(x, y, p, t)``. Coordinates are abstract
length units with y growing downward (screen convention), pressure is
normalised to ``[0, 1]`` and timestamps are milliseconds, strictly
increasing within a stroke. Stroke time ranges must not overlap.

Gestures are never mutated after validation: sample arrays are copies of
the input and are flagged read-only, so they can be shared freely.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np

from .errors import EmptyGesture, NonFiniteValue, NonMonotonicTime, PressureOutOfRange

__all__ = [
    "Sample",
    "Stroke",
    "Gesture",
    "FlatPointSequence",
    "validate",
    "flatten",
]


class Sample(NamedTuple):
    x: float
    y: float
    p: float
    t: float


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


class Stroke:
    """Samples captured between one pen-down and the following pen-up."""

    __slots__ = ("_data",)

    def __init__(self, data: np.ndarray):
        # trusted constructor; use validate() for raw input
        self._data = data

    @property
    def data(self) -> np.ndarray:
        """Read-only ``(n, 4)`` float array with columns x, y, p, t."""
        return self._data

    @property
    def xy(self) -> np.ndarray:
        return self._data[:, :2]

    @property
    def p(self) -> np.ndarray:
        return self._data[:, 2]

    @property
    def t(self) -> np.ndarray:
        return self._data[:, 3]

    @property
    def samples(self) -> tuple[Sample, ...]:
        return tuple(Sample(*map(float, row)) for row in self._data)

    def __len__(self) -> int:
        return self._data.shape[0]

    def __iter__(self) -> Iterator[Sample]:
        return iter(self.samples)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Stroke):
            return NotImplemented
        return np.array_equal(self._data, other._data)

    def __hash__(self):
        return hash(self._data.tobytes())

    def __repr__(self) -> str:
        return f"Stroke(n={len(self)})"


class Gesture:
    """One drawn unit made of ``m >= 1`` strokes."""

    __slots__ = ("_strokes",)

    def __init__(self, strokes: Sequence[Stroke]):
        self._strokes = tuple(strokes)

    @property
    def strokes(self) -> tuple[Stroke, ...]:
        return self._strokes

    @property
    def n(self) -> int:
        """Total number of samples."""
        return sum(len(s) for s in self._strokes)

    @property
    def m(self) -> int:
        """Number of strokes."""
        return len(self._strokes)

    def to_lists(self) -> list[list[list[float]]]:
        return [s.data.tolist() for s in self._strokes]

    def transformed(self, matrix=((1.0, 0.0), (0.0, 1.0)), offset=(0.0, 0.0)) -> "Gesture":
        """Return a copy with ``xy -> matrix @ xy + offset`` applied to every sample.

        Pressure and timestamps are untouched. Used by the invariance
        harness and the synthetic generators.
        """
        mat = np.asarray(matrix, dtype=float)
        off = np.asarray(offset, dtype=float)
        strokes = []
        for s in self._strokes:
            d = s.data.copy()
            d[:, :2] = s.xy @ mat.T + off
            strokes.append(Stroke(_frozen(d)))
        return Gesture(strokes)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Gesture):
            return NotImplemented
        return self._strokes == other._strokes

    def __hash__(self):
        return hash(self._strokes)

    def __repr__(self) -> str:
        return f"Gesture(m={self.m}, n={self.n})"


@dataclass(frozen=True, eq=False)
class FlatPointSequence:
    """All samples of a gesture concatenated in stroke order.

    ``starts[k]`` is the flat index of the first sample of stroke ``k``;
    ``starts`` has ``m + 1`` entries, the last one being ``n``.
    """

    xy: np.ndarray
    p: np.ndarray
    t: np.ndarray
    starts: tuple[int, ...]

    def __len__(self) -> int:
        return self.xy.shape[0]

    @property
    def x(self) -> np.ndarray:
        return self.xy[:, 0]

    @property
    def y(self) -> np.ndarray:
        return self.xy[:, 1]

    def stroke_slices(self) -> list[slice]:
        return [slice(a, b) for a, b in zip(self.starts[:-1], self.starts[1:])]

    def samples(self) -> list[Sample]:
        return [
            Sample(float(x), float(y), float(p), float(t))
            for (x, y), p, t in zip(self.xy, self.p, self.t)
        ]


def _as_rows(stroke) -> np.ndarray:
    if isinstance(stroke, Stroke):
        return stroke.data.copy()
    rows = [tuple(s) for s in stroke]
    if not rows:
        raise EmptyGesture("stroke without samples")
    try:
        arr = np.array(rows, dtype=float)
    except (TypeError, ValueError) as exc:
        raise NonFiniteValue(f"non-numeric sample value: {exc}") from None
    if arr.ndim != 2 or arr.shape[1] != 4:
        raise NonFiniteValue("each sample must be a 4-tuple (x, y, p, t)")
    return arr


def validate(raw: Iterable) -> Gesture:
    """Build a :class:`Gesture` from raw ``(x, y, p, t)`` tuples grouped into strokes.

    Raises
    ------
    EmptyGesture
        No strokes, or a stroke without samples.
    NonFiniteValue
        Any NaN/inf coordinate, pressure or timestamp, or a negative timestamp.
    PressureOutOfRange
        Pressure outside ``[0, 1]``.
    NonMonotonicTime
        ``t_i >= t_{i+1}`` inside a stroke, or overlapping stroke time ranges.
    """
    if isinstance(raw, Gesture):
        raw = raw.strokes
    strokes = []
    prev_end = None
    for k, stroke in enumerate(raw):
        arr = _as_rows(stroke)
        if not np.all(np.isfinite(arr)):
            raise NonFiniteValue(f"stroke {k}: non-finite value")
        if np.any(arr[:, 3] < 0):
            raise NonFiniteValue(f"stroke {k}: negative timestamp")
        p = arr[:, 2]
        if np.any((p < 0.0) | (p > 1.0)):
            raise PressureOutOfRange(f"stroke {k}: pressure outside [0, 1]")
        t = arr[:, 3]
        if np.any(np.diff(t) <= 0):
            i = int(np.argmax(np.diff(t) <= 0))
            raise NonMonotonicTime(f"stroke {k}: t[{i}]={t[i]!r} >= t[{i + 1}]={t[i + 1]!r}")
        if prev_end is not None and not t[0] > prev_end:
            raise NonMonotonicTime(f"stroke {k} starts at {t[0]!r}, before previous stroke ended ({prev_end!r})")
        prev_end = t[-1]
        strokes.append(Stroke(_frozen(arr)))
    if not strokes:
        raise EmptyGesture("gesture without strokes")
    return Gesture(strokes)


def flatten(g: Gesture) -> FlatPointSequence:
    data = np.concatenate([s.data for s in g.strokes], axis=0)
    starts = [0]
    for s in g.strokes:
        starts.append(starts[-1] + len(s))
    xy = _frozen(np.ascontiguousarray(data[:, :2]))
    p = _frozen(np.ascontiguousarray(data[:, 2]))
    t = _frozen(np.ascontiguousarray(data[:, 3]))
    return FlatPointSequence(xy=xy, p=p, t=t, starts=tuple(starts))
