"""HBF49 set: 49 features for symbol recognition."""

from __future__ import annotations

import math

import numpy as np

from .. import geometry as geo
from .context import Context, Values

BIN_CENTERS = (np.arange(4) + 0.5) * np.pi / 4


def _fid(i: int) -> str:
    return f"hbf49.f{i}"


def position_block(ctx: Context, out: Values) -> None:
    """f1-f10: normalised end points, first-to-last vector, closure, initial vector."""
    bb = ctx.bbox
    cx, cy = bb.center
    side = max(bb.width, bb.height)
    x0, y0 = ctx.xy[0]
    xn, yn = ctx.xy[-1]
    if side == 0:
        for i in (1, 2, 3, 4):
            out.flag(_fid(i))
    else:
        out.put(_fid(1), (x0 - cx) / side + 0.5)
        out.put(_fid(2), (y0 - cy) / side + 0.5)
        out.put(_fid(3), (xn - cx) / side + 0.5)
        out.put(_fid(4), (yn - cy) / side + 0.5)
    v = ctx.first_last
    f5 = math.hypot(v[0], v[1])
    out.put(_fid(5), f5)
    out.ratio(_fid(6), v[0], f5)
    out.ratio(_fid(7), v[1], f5)
    out.ratio(_fid(8), f5, ctx.length)
    if ctx.n >= 3:
        w = ctx.xy[2] - ctx.xy[0]
        nw = math.hypot(w[0], w[1])
        out.ratio(_fid(9), w[0], nw)
        out.ratio(_fid(10), w[1], nw)
    else:
        out.flag(_fid(9))
        out.flag(_fid(10))


def inflexion_downstroke(ctx: Context, out: Values) -> None:
    """f11-f13: offset of the mid-path point from the chord midpoint, downstroke share."""
    bb = ctx.bbox
    mid = geo.point_at_length(ctx.xy, 0.5 * ctx.length)
    chord_mid = 0.5 * (ctx.xy[0] + ctx.xy[-1])
    out.ratio(_fid(11), mid[0] - chord_mid[0], bb.width)
    out.ratio(_fid(12), mid[1] - chord_mid[1], bb.height)
    down = float(ctx.seg_len[ctx.seg[:, 1] > 0].sum())
    if ctx.params["hbf49.f13"] == "literal":
        out.put(_fid(13), down)
    else:
        out.ratio(_fid(13), down, ctx.length)


def global_block(ctx: Context, out: Values) -> None:
    """f14-f19: stroke count, diagonal angle, length, half-perimeter ratio, deviation, direction."""
    bb = ctx.bbox
    out.put(_fid(14), ctx.m)
    if bb.width == 0 and bb.height == 0:
        out.flag(_fid(15))
    else:
        out.put(_fid(15), math.atan2(bb.height, bb.width))
    out.put(_fid(16), ctx.length)
    out.ratio(_fid(17), bb.width + bb.height, ctx.length)
    out.put(_fid(18), ctx.radii.mean())
    if ctx.n >= 2:
        out.put(_fid(19), geo.direction_angles(ctx.xy).mean())
    else:
        out.flag(_fid(19))


def angular_block(ctx: Context, out: Values) -> None:
    """f20-f23: curvature, perpendicularity, k-perpendicularity, maximum k-angle."""
    theta = ctx.theta
    out.put(_fid(20), theta.sum())
    out.put(_fid(21), np.sum(np.sin(theta) ** 2))
    theta_k = ctx.theta_k
    out.put(_fid(22), np.sum(np.sin(theta_k) ** 2))
    if theta_k.size:
        out.put(_fid(23), theta_k.max())
    else:
        out.flag(_fid(23))


def local_angles(ctx: Context) -> np.ndarray:
    """Smoothed angles ``gamma * theta_i + (1 - gamma) * theta_i^k`` for ``i = k .. n-1-k``."""
    k = ctx.k
    n = ctx.n
    if n < 2 * k + 1:
        return np.zeros(0)
    gamma = float(ctx.params["gamma"])
    theta = ctx.theta[k - 1:n - 1 - k]
    return gamma * theta + (1.0 - gamma) * ctx.theta_k


def angle_histogram(psi: np.ndarray) -> np.ndarray:
    """Four bins over ``[0, pi]``; each angle splits between its two nearest bin
    centres with weights inversely proportional to its distance from them."""
    h = np.zeros(4)
    pos = psi / (np.pi / 4) - 0.5  # bin-centre coordinates
    lo = np.clip(np.floor(pos).astype(int), 0, 3)
    frac = np.clip(pos - lo, 0.0, 1.0)
    below = pos <= 0
    above = pos >= 3
    lo = np.where(above, 3, lo)
    frac = np.where(below | above, 0.0, frac)
    np.add.at(h, lo, 1.0 - frac)
    hi = np.minimum(lo + 1, 3)
    np.add.at(h, hi, np.where(below | above, 0.0, frac))
    return h


def direction_histograms(ctx: Context, out: Values) -> None:
    """f24-f27 dominant directions and f28-f31 local angle histogram, both over n_a segments."""
    seg = ctx.in_stroke_segments
    n_a = seg.shape[0]
    if n_a == 0:
        for i in range(24, 32):
            out.flag(_fid(i))
        return
    octant = geo.octants(seg[:, 0], seg[:, 1])
    h = np.bincount(octant, minlength=8)
    for j in range(4):
        out.put(_fid(24 + j), (h[j] + h[j + 4]) / n_a)
    hist = angle_histogram(local_angles(ctx))
    for j in range(4):
        out.put(_fid(28 + j), hist[j] / n_a)


def zoning_memberships(xy: np.ndarray, bb: geo.BoundingBox) -> np.ndarray:
    """Fuzzy 3x3 memberships, shape ``(n, 3, 3)`` indexed ``[sample, row, col]``.

    Bilinear weights toward the nearest cell centres; samples outside the
    span of the outer centres are clamped so each row sums to 1.
    """

    def axis_weights(v, lo, size):
        u = np.clip((v - lo) / size * 3.0 - 0.5, 0.0, 2.0)
        i0 = np.minimum(np.floor(u).astype(int), 1)
        f = u - i0
        w = np.zeros((v.shape[0], 3))
        rows = np.arange(v.shape[0])
        w[rows, i0] = 1.0 - f
        w[rows, i0 + 1] += f
        return w

    wx = axis_weights(xy[:, 0], bb.xmin, bb.width)
    wy = axis_weights(xy[:, 1], bb.ymin, bb.height)
    return wy[:, :, None] * wx[:, None, :]


def zoning_block(ctx: Context, out: Values) -> None:
    """f32-f40: mean fuzzy membership per cell, row-major from the top-left."""
    bb = ctx.bbox
    ids = [_fid(32 + i) for i in range(9)]
    if bb.width == 0 or bb.height == 0:
        for f in ids:
            out.flag(f)
        return
    mu = zoning_memberships(ctx.xy, bb).mean(axis=0).ravel()
    for f, v in zip(ids, mu):
        out.put(f, v)


def normalized_moments(xy: np.ndarray) -> np.ndarray:
    """``nu[p, q] = m_pq / m_00 ** (1 + (p + q) / 2)`` with central point moments, p, q <= 3."""
    d = xy - xy.mean(axis=0)
    n = xy.shape[0]
    nu = np.zeros((4, 4))
    for p in range(4):
        for q in range(4):
            if p + q > 3:
                continue
            m = float(np.sum(d[:, 0] ** p * d[:, 1] ** q))
            nu[p, q] = m / n ** (1 + (p + q) / 2)
    return nu


def hu_invariants(nu: np.ndarray) -> list[float]:
    n20, n02, n11 = nu[2, 0], nu[0, 2], nu[1, 1]
    n30, n03, n21, n12 = nu[3, 0], nu[0, 3], nu[2, 1], nu[1, 2]
    a = n30 + n12
    b = n21 + n03
    h1 = n20 + n02
    h2 = (n20 - n02) ** 2 + 4 * n11 ** 2
    h3 = (n30 - 3 * n12) ** 2 + (3 * n21 - n03) ** 2
    h4 = a ** 2 + b ** 2
    h5 = (n30 - 3 * n12) * a * (a ** 2 - 3 * b ** 2) + (3 * n21 - n03) * b * (3 * a ** 2 - b ** 2)
    h6 = (n20 - n02) * (a ** 2 - b ** 2) + 4 * n11 * a * b
    h7 = (3 * n21 - n03) * a * (a ** 2 - 3 * b ** 2) - (n30 - 3 * n12) * b * (3 * a ** 2 - b ** 2)
    return [h1, h2, h3, h4, h5, h6, h7]


def hu_block(ctx: Context, out: Values) -> None:
    """f41-f47: the seven Hu invariants of the sample point set."""
    for j, v in enumerate(hu_invariants(normalized_moments(ctx.xy))):
        out.put(_fid(41 + j), v)


def hull_block(ctx: Context, out: Values) -> None:
    """f48 hull area over box area, f49 squared trajectory length over hull area."""
    area = ctx.hull.area
    out.ratio(_fid(48), area, ctx.bbox.width * ctx.bbox.height)
    out.ratio(_fid(49), ctx.length ** 2, area)


BLOCKS = (
    position_block,
    inflexion_downstroke,
    global_block,
    angular_block,
    direction_histograms,
    zoning_block,
    hu_block,
    hull_block,
)


def compute(ctx: Context) -> Values:
    out = Values()
    for block in BLOCKS:
        block(ctx, out)
    return out


def _run(block, g, params=None) -> Values:
    out = Values()
    block(Context(g, params), out)
    return out


def hbf_all(g, params=None):
    """All hbf49 features as a :class:`FeatureVector`, degeneracy policy applied."""
    from . import FeatureRequest, extract

    return extract(g, FeatureRequest(sets=("hbf49",), params=params or {}))


def hbf_position_block(g, params=None) -> Values:
    return _run(position_block, g, params)


def hbf_inflexion_downstroke(g, params=None) -> Values:
    return _run(inflexion_downstroke, g, params)


def hbf_global_block(g, params=None) -> Values:
    return _run(global_block, g, params)


def hbf_angular_block(g, params=None) -> Values:
    return _run(angular_block, g, params)


def hbf_direction_histograms(g, params=None) -> Values:
    return _run(direction_histograms, g, params)


def hbf_zoning_block(g, params=None) -> Values:
    return _run(zoning_block, g, params)


def hbf_hu_block(g, params=None) -> Values:
    return _run(hu_block, g, params)


def hbf_hull_block(g, params=None) -> Values:
    return _run(hull_block, g, params)
