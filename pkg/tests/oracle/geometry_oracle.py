"""Brute-force geometry used as a reference by the tests.

Everything runs on exact rationals; nothing here is fast.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations


def _exact(v):
    return int(v) if float(v).is_integer() else Fraction(v)


def orient(a, b, c) -> int:
    # float estimate accepted only far outside a deliberately loose error bound
    lhs = (b[0] - a[0]) * (c[1] - a[1])
    rhs = (b[1] - a[1]) * (c[0] - a[0])
    if abs(lhs - rhs) > 1e-9 * (abs(lhs) + abs(rhs)):
        return 1 if lhs > rhs else -1
    ax, ay, bx, by, cx, cy = map(_exact, (a[0], a[1], b[0], b[1], c[0], c[1]))
    d = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    return (d > 0) - (d < 0)


def between(a, b, c) -> bool:
    """``c`` lies on the closed segment ``ab`` (given collinearity)."""
    return min(a[0], b[0]) <= c[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= c[1] <= max(a[1], b[1])


def hull_vertices(points) -> set:
    """O(n^3): ``p -> q`` is a hull edge iff every other point is strictly left
    of it or on the closed segment; the edge end points are the vertices."""
    pts = sorted(set(map(tuple, points)))
    if len(pts) <= 2:
        return set(pts)
    out = set()
    for p in pts:
        for q in pts:
            if p == q:
                continue
            ok = True
            for r in pts:
                if r in (p, q):
                    continue
                o = orient(p, q, r)
                if o < 0 or (o == 0 and not between(p, q, r)):
                    ok = False
                    break
            if ok:
                out.add(p)
                out.add(q)
    return out


def polygon_area(vertices) -> Fraction:
    """Area of the convex polygon through ``vertices`` (any order)."""
    v = sorted(set(vertices))
    if len(v) < 3:
        return Fraction(0)
    c = v[0]
    rest = sorted(v[1:], key=lambda p: _angle_key(c, p))
    ring = [c] + rest
    s = Fraction(0)
    for a, b in zip(ring, ring[1:] + ring[:1]):
        s += Fraction(a[0]) * Fraction(b[1]) - Fraction(b[0]) * Fraction(a[1])
    return abs(s) / 2


def _angle_key(c, p):
    import math

    return math.atan2(p[1] - c[1], p[0] - c[0])


def segments_intersect(a, b, c, d) -> bool:
    o1, o2, o3, o4 = orient(a, b, c), orient(a, b, d), orient(c, d, a), orient(c, d, b)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    return (
        (o1 == 0 and between(a, b, c))
        or (o2 == 0 and between(a, b, d))
        or (o3 == 0 and between(c, d, a))
        or (o4 == 0 and between(c, d, b))
    )


def crossings(strokes) -> int:
    """All segment pairs, skipping pairs that share a vertex along a stroke."""
    segs = []
    for sid, pts in enumerate(strokes):
        pts = [tuple(p) for p in pts]
        dedup = [pts[0]] + [q for prev, q in zip(pts, pts[1:]) if q != prev]
        k = len(dedup) - 1
        closed = k >= 3 and dedup[0] == dedup[-1]
        for i in range(k):
            segs.append((sid, i, k, closed, dedup[i], dedup[i + 1]))
    count = 0
    for s, t in combinations(segs, 2):
        if s[0] == t[0]:
            gap = abs(s[1] - t[1])
            if gap == 1 or (s[3] and gap == s[2] - 1):
                continue
        count += segments_intersect(s[4], s[5], t[4], t[5])
    return count
