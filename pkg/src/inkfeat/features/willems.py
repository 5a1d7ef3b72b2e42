"""Willems/Niels set: 89 features, organised in blocks that share sub-results."""

from __future__ import annotations

import math

import numpy as np

from .. import geometry as geo
from .context import Context, Values, mean_sd

CHAIN_CENTERS = (np.arange(1, 9) - 0.5) * np.pi / 4


def _fid(i: int) -> str:
    return f"willems.f{i}"


def geometry_block(ctx: Context, out: Values) -> None:
    """f1-f7 and f55-f61: length, hull, axes, closure, first/last vectors."""
    hull = ctx.hull
    out.put(_fid(1), ctx.length)
    out.put(_fid(2), hull.area)
    out.ratio(_fid(3), hull.perimeter ** 2, hull.area)

    a, b = ctx.bbox.width, ctx.bbox.height
    a_, b_ = (a, b) if a > b else (b, a)
    if a_ == 0:
        out.flag(_fid(4))
        out.flag(_fid(5))
    else:
        out.put(_fid(4), math.sqrt(1.0 - (b_ / a_) ** 2))
        out.put(_fid(5), b_ / a_)

    v = ctx.first_last
    norm_v = math.hypot(v[0], v[1])
    out.ratio(_fid(6), norm_v, ctx.length)
    centroidal_block(ctx, out)

    if ctx.n >= 3:
        w = ctx.xy[2] - ctx.xy[0]
        norm_w = math.hypot(w[0], w[1])
        out.ratio(_fid(55), w[0], norm_w)
        out.ratio(_fid(56), w[1], norm_w)
    else:
        out.flag(_fid(55))
        out.flag(_fid(56))
    out.put(_fid(57), math.hypot(a, b))
    if a == 0 and b == 0:
        out.flag(_fid(58))
    else:
        out.put(_fid(58), math.atan2(b, a))
    out.put(_fid(59), norm_v)
    out.ratio(_fid(60), v[0], norm_v)
    out.ratio(_fid(61), v[1], norm_v)


def centroidal_block(ctx: Context, out: Values) -> None:
    """f7, f68, f69: centroidal radius statistics and circular variance."""
    r = ctx.radii
    f68, f69 = mean_sd(r)
    out.put(_fid(68), f68)
    out.put(_fid(69), f69)
    out.ratio(_fid(7), np.sum((r - f68) ** 2), ctx.n * f68 ** 2)


def curvature_block(ctx: Context, out: Values) -> None:
    """f8-f10, f13-f15, f21, f62-f66."""
    psi = ctx.theta
    if psi.size:
        out.put(_fid(8), psi.sum())
        f9, f10 = mean_sd(psi)
        out.put(_fid(9), f9)
        out.put(_fid(10), f10)
        s2 = np.sin(psi) ** 2
        out.put(_fid(13), s2.sum())
        f14, f15 = mean_sd(s2)
        out.put(_fid(14), f14)
        out.put(_fid(15), f15)
        out.put(_fid(62), np.abs(psi).sum())
        out.put(_fid(63), np.sum(psi ** 2))
    else:
        for i in (8, 9, 10, 13, 14, 15, 62, 63):
            out.flag(_fid(i))

    psi_k = ctx.theta_k
    if psi_k.size:
        out.put(_fid(21), psi_k.max())
        s2k = np.sin(psi_k) ** 2
        out.put(_fid(64), s2k.sum())
        f65, f66 = mean_sd(s2k)
        out.put(_fid(65), f65)
        out.put(_fid(66), f66)
    else:
        for i in (21, 64, 65, 66):
            out.flag(_fid(i))


def principal_block(ctx: Context, out: Values) -> None:
    """f16-f20 and f67 from the principal axes."""
    pca = ctx.pca
    if pca is None:
        for i in (16, 17, 18, 19, 20, 67):
            out.flag(_fid(i))
        return
    p2 = np.array(pca.p2)
    out.put(_fid(16), abs(float(p2 @ (ctx.centroid - np.array(pca.center)))))
    out.put(_fid(17), pca.alpha)
    out.put(_fid(18), pca.p1[1])
    out.put(_fid(19), pca.p1[0])
    out.ratio(_fid(20), ctx.hull.area, pca.alpha * pca.beta)
    out.ratio(_fid(67), pca.beta, pca.alpha)


def temporal_block(ctx: Context, out: Values) -> None:
    """f11 and f24-f31: pen up/down ratio, duration, speed and acceleration."""
    t = ctx.flat.t
    write = sum(float(s.t[-1] - s.t[0]) for s in ctx.gesture.strokes)
    total = float(t[-1] - t[0])
    out.ratio(_fid(11), total - write, write)
    out.put(_fid(24), total)

    v = geo.speeds(ctx.flat)
    if v.size:
        f25, f26 = mean_sd(v)
        out.put(_fid(25), f25)
        out.put(_fid(26), f26)
        out.put(_fid(27), v.max())
    else:
        for i in (25, 26, 27):
            out.flag(_fid(i))

    acc = np.abs(geo.scalar_accelerations(ctx.flat))
    if acc.size:
        f28, f29 = mean_sd(acc)
        out.put(_fid(28), f28)
        out.put(_fid(29), f29)
        out.put(_fid(30), acc.max())
        out.put(_fid(31), acc.min())
    else:
        for i in (28, 29, 30, 31):
            out.flag(_fid(i))


def pressure_block(ctx: Context, out: Values) -> None:
    """f22, f23: mean and population SD of pressure."""
    f22, f23 = mean_sd(ctx.flat.p)
    out.put(_fid(22), f22)
    out.put(_fid(23), f23)


def events_block(ctx: Context, out: Values) -> None:
    """f32-f38 and f44: cups, start/end offsets, pen-down count."""
    cups = ctx.cups
    out.put(_fid(32), cups.count)
    out.put(_fid(33), cups.first_offset)
    out.put(_fid(34), cups.last_offset)
    bb = ctx.bbox
    x0, y0 = ctx.xy[0]
    xn, yn = ctx.xy[-1]
    out.ratio(_fid(35), x0 - bb.xmin, bb.width)
    out.ratio(_fid(36), xn - bb.xmin, bb.width)
    out.ratio(_fid(37), y0 - bb.ymin, bb.height)
    out.ratio(_fid(38), yn - bb.ymin, bb.height)
    out.put(_fid(44), ctx.m)


def lines_block(ctx: Context, out: Values) -> None:
    """f39-f43 from the straight-line detector."""
    lines = ctx.straight_lines
    lengths = lines.lengths
    out.put(_fid(39), len(lines))
    if lengths.size:
        f40, f41 = mean_sd(lengths)
        out.put(_fid(40), f40)
        out.put(_fid(41), f41)
    else:
        out.flag(_fid(40))
        out.flag(_fid(41))
    out.ratio(_fid(42), lengths.sum(), ctx.length)
    out.ratio(_fid(43), lengths.max() if lengths.size else 0.0, ctx.length)


def structure_block(ctx: Context, out: Values) -> None:
    """f45-f52 octant ratios, f53 connected components, f54 crossings."""
    cx, cy = ctx.bbox.center
    dx = ctx.xy[:, 0] - cx
    dy = ctx.xy[:, 1] - cy
    on_center = (dx == 0) & (dy == 0)
    octant = geo.octants(dx[~on_center], dy[~on_center])
    counts = np.bincount(octant, minlength=8)
    for o in range(8):
        out.ratio(_fid(45 + o), counts[o], ctx.n - 1)
    out.put(_fid(53), geo.connected_components(ctx.gesture, ctx.params["eps"]))
    out.put(_fid(54), geo.count_crossings(ctx.flat))


def chaincode_block(ctx: Context, out: Values) -> None:
    """f70-f85: per direction class, sine and cosine of the class centre angle.

    In the default ``weighted`` mode each pair is scaled by the fraction of
    pen-down segments whose direction falls in the class; ``literal`` mode
    emits the bare bin-centre sines and cosines.
    """
    ids = [(_fid(68 + 2 * s), _fid(69 + 2 * s)) for s in range(1, 9)]
    if ctx.params["willems.chaincode"] == "literal":
        for (fs, fc), c in zip(ids, CHAIN_CENTERS):
            out.put(fs, math.sin(c))
            out.put(fc, math.cos(c))
        return
    seg = ctx.in_stroke_segments
    seg = seg[np.any(seg != 0, axis=1)]
    if seg.shape[0] == 0:
        for fs, fc in ids:
            out.flag(fs)
            out.flag(fc)
        return
    cls = geo.octants(seg[:, 0], seg[:, 1])
    w = np.bincount(cls, minlength=8) / seg.shape[0]
    for (fs, fc), c, ws in zip(ids, CHAIN_CENTERS, w):
        out.put(fs, ws * math.sin(c))
        out.put(fc, ws * math.cos(c))


def stroke_stats_block(ctx: Context, out: Values) -> None:
    """f12 and f86-f89: average direction and per-stroke length/direction statistics."""
    if ctx.n >= 2:
        out.put(_fid(12), geo.direction_angles(ctx.xy).mean())
    else:
        out.flag(_fid(12))
    lengths, dirs = [], []
    single = False
    for s in ctx.gesture.strokes:
        lengths.append(float(geo.segment_lengths(s.xy).sum()))
        if len(s) < 2:
            single = True
            dirs.append(0.0)
        else:
            dirs.append(float(geo.direction_angles(s.xy).mean()))
    f86, f87 = mean_sd(np.array(lengths))
    out.put(_fid(86), f86)
    out.put(_fid(87), f87)
    if single:
        out.flag(_fid(88))
        out.flag(_fid(89))
    else:
        f88, f89 = mean_sd(np.array(dirs))
        out.put(_fid(88), f88)
        out.put(_fid(89), f89)


BLOCKS = (
    geometry_block,
    curvature_block,
    principal_block,
    temporal_block,
    pressure_block,
    events_block,
    lines_block,
    structure_block,
    chaincode_block,
    stroke_stats_block,
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


def wn_geometry_block(g, params=None) -> Values:
    return _run(geometry_block, g, params)


def wn_curvature_block(g, params=None) -> Values:
    return _run(curvature_block, g, params)


def wn_principal_block(g, params=None) -> Values:
    return _run(principal_block, g, params)


def wn_temporal_block(g, params=None) -> Values:
    return _run(temporal_block, g, params)


def wn_pressure_block(g, params=None) -> Values:
    return _run(pressure_block, g, params)


def wn_events_block(g, params=None) -> Values:
    return _run(events_block, g, params)


def wn_lines_block(g, params=None) -> Values:
    return _run(lines_block, g, params)


def wn_structure_block(g, params=None) -> Values:
    return _run(structure_block, g, params)


def wn_centroidal_block(g, params=None) -> Values:
    return _run(centroidal_block, g, params)


def wn_chaincode_block(g, params=None) -> Values:
    return _run(chaincode_block, g, params)


def wn_stroke_stats_block(g, params=None) -> Values:
    return _run(stroke_stats_block, g, params)


def wn_all(g, params=None):
    """All willems features as a :class:`FeatureVector`, degeneracy policy applied."""
    from . import FeatureRequest, extract

    return extract(g, FeatureRequest(sets=("willems",), params=params or {}))
