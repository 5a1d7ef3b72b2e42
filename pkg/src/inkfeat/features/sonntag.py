"""Feature set ``sonntag``: 14 features (15 values, the resampled angles give two)."""

from __future__ import annotations

import numpy as np

from .. import geometry as geo
from ..errors import DegenerateGeometry
from .context import Context, Values

RESAMPLE_SEGMENTS = 6


def sw_resampled_angles(g) -> tuple[float, float]:
    """Sums of sines and cosines of the 5 turning angles after resampling to 6 pieces.

    Raises :class:`DegenerateGeometry` for a zero-length path.
    """
    pts = geo.resample_equidistant(geo.as_points(g), RESAMPLE_SEGMENTS)
    alpha = geo.signed_turn_angles(pts)
    return float(np.sin(alpha).sum()), float(np.cos(alpha).sum())


def compute(ctx: Context) -> Values:
    out = Values()
    hull = ctx.hull
    out.put("sonntag.f1", ctx.m)
    out.put("sonntag.f2", ctx.length)
    out.put("sonntag.f3", hull.area)
    out.put("sonntag.f4", hull.perimeter)
    out.ratio("sonntag.f5", hull.perimeter ** 2, hull.area)

    # major/minor axis lengths from PCA extents
    pca = ctx.pca
    if pca is None:
        for f in ("f6", "f7", "f9"):
            out.flag("sonntag." + f)
    else:
        a, b = max(pca.alpha, pca.beta), min(pca.alpha, pca.beta)
        # extents equal up to rounding would otherwise leave sqrt(eps) behind
        gap = 0.0 if a - b <= 4 * np.finfo(float).eps * a else (a - b) * (a + b)
        out.put("sonntag.f6", np.sqrt(gap) / a)
        out.put("sonntag.f7", b / a)
        out.ratio("sonntag.f9", hull.area, a * b)

    r = ctx.radii
    mu_r = float(r.mean())
    out.ratio("sonntag.f8", np.sum((r - mu_r) ** 2), ctx.n * mu_r ** 2)
    out.ratio("sonntag.f10", np.hypot(*ctx.first_last), hull.perimeter)

    phi = ctx.theta
    out.put("sonntag.f11", phi.sum())
    out.put("sonntag.f12", np.sum(np.sin(phi) ** 2))
    out.put("sonntag.f13", np.sum(np.sin(phi) ** 3))

    try:
        s, c = sw_resampled_angles(ctx.xy)
        out.put("sonntag.f14.sin", s)
        out.put("sonntag.f14.cos", c)
    except DegenerateGeometry:
        out.flag("sonntag.f14.sin")
        out.flag("sonntag.f14.cos")
    return out


def sw_all(g, params=None):
    """All sonntag features as a :class:`FeatureVector`, degeneracy policy applied."""
    from . import FeatureRequest, extract

    return extract(g, FeatureRequest(sets=("sonntag",), params=params or {}))
