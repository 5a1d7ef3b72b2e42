"""Rubine's 13 gesture features, evaluated on the flattened sample sequence."""

from __future__ import annotations

import math

import numpy as np

from .. import geometry as geo
from ..errors import InsufficientSamples
from .context import Context, Values


def rubine_speed_profile(g) -> np.ndarray:
    """Squared speeds ``(dx^2 + dy^2) / dt^2`` of consecutive sample pairs."""
    fs = geo._flat(g)
    if len(fs) < 2:
        raise InsufficientSamples("speed profile needs at least two samples")
    d = np.diff(fs.xy, axis=0)
    dt = np.diff(fs.t)
    return (d[:, 0] ** 2 + d[:, 1] ** 2) / dt ** 2


def compute(ctx: Context) -> Values:
    out = Values()
    xy = ctx.xy
    if ctx.n >= 3:
        w = xy[2] - xy[0]
        norm = math.hypot(w[0], w[1])
        out.ratio("rubine.f1", w[0], norm)
        out.ratio("rubine.f2", w[1], norm)
    else:
        out.flag("rubine.f1")
        out.flag("rubine.f2")

    bb = ctx.bbox
    out.put("rubine.f3", bb.diagonal)
    if bb.width == 0 and bb.height == 0:
        out.flag("rubine.f4")
    else:
        out.put("rubine.f4", math.atan2(bb.height, bb.width))

    v = ctx.first_last
    f5 = math.hypot(v[0], v[1])
    out.put("rubine.f5", f5)
    out.ratio("rubine.f6", v[0], f5)
    out.ratio("rubine.f7", v[1], f5)
    out.put("rubine.f8", ctx.length)

    theta = geo.signed_turn_angles(xy)
    out.put("rubine.f9", theta.sum())
    out.put("rubine.f10", np.abs(theta).sum())
    out.put("rubine.f11", np.sum(theta ** 2))

    if ctx.n >= 2:
        out.put("rubine.f12", rubine_speed_profile(ctx.flat).max())
    else:
        out.flag("rubine.f12")
    out.put("rubine.f13", ctx.flat.t[-1] - ctx.flat.t[0])
    return out


def rubine_all(g, params=None):
    """All rubine features as a :class:`FeatureVector`, degeneracy policy applied."""
    from . import FeatureRequest, extract

    return extract(g, FeatureRequest(sets=("rubine",), params=params or {}))
