"""Exact convex polygon arithmetic over the rationals.

Polygons are tuples of (Fraction, Fraction) vertices in strictly convex
counterclockwise position.  Intersections and differences are computed by
half-plane clipping; degenerate (zero-area) results count as empty, so
boundary contacts are measure-zero and ignored, which is the disjointness
convention used throughout the measure-theoretic checks.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .slopes import DomainError, MappingClass

Point = tuple[Fraction, Fraction]
Polygon = tuple[Point, ...]


def _cross(o: Point, a: Point, b: Point) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def make_polygon(vertices: Iterable[Sequence]) -> Polygon:
    """Validate and normalize a strictly convex polygon to ccw order."""
    pts = tuple((Fraction(v[0]), Fraction(v[1])) for v in vertices)
    if len(pts) < 3:
        raise DomainError("polygon needs at least 3 vertices")
    if len(set(pts)) != len(pts):
        raise DomainError("repeated vertex")
    if area2(pts) < 0:
        pts = tuple(reversed(pts))
    n = len(pts)
    for i in range(n):
        turn = _cross(pts[i], pts[(i + 1) % n], pts[(i + 2) % n])
        if turn <= 0:
            raise DomainError("polygon is not strictly convex ccw")
    return pts


def area2(poly: Sequence[Point]) -> Fraction:
    """Twice the signed area (shoelace)."""
    total = Fraction(0)
    n = len(poly)
    for i in range(n):
        x1, y1 = poly[i]
        x2, y2 = poly[(i + 1) % n]
        total += x1 * y2 - x2 * y1
    return total


def area(poly: Sequence[Point]) -> Fraction:
    return abs(area2(poly)) / 2


def contains_point(poly: Polygon, pt: Sequence) -> bool:
    """Closed containment."""
    p = (Fraction(pt[0]), Fraction(pt[1]))
    n = len(poly)
    for i in range(n):
        if _cross(poly[i], poly[(i + 1) % n], p) < 0:
            return False
    return True


def clip_halfplane(
    poly: Optional[Sequence[Point]], a: Fraction, b: Fraction, c: Fraction
) -> Optional[Polygon]:
    """Intersection with {(x, y) : a x + b y + c >= 0}; None when the
    result has zero area."""
    if poly is None:
        return None
    out: list[Point] = []
    n = len(poly)
    vals = [a * p[0] + b * p[1] + c for p in poly]
    for i in range(n):
        p, q = poly[i], poly[(i + 1) % n]
        vp, vq = vals[i], vals[(i + 1) % n]
        if vp >= 0:
            out.append(p)
        if (vp > 0 > vq) or (vp < 0 < vq):
            t = vp / (vp - vq)
            out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    return _dedupe(out)


def _dedupe(points: list[Point]) -> Optional[Polygon]:
    cleaned: list[Point] = []
    for p in points:
        if not cleaned or p != cleaned[-1]:
            cleaned.append(p)
    if len(cleaned) > 1 and cleaned[0] == cleaned[-1]:
        cleaned.pop()
    # Drop collinear chain points so strict convexity survives clipping.
    if len(cleaned) >= 3:
        kept: list[Point] = []
        m = len(cleaned)
        for i in range(m):
            prev = cleaned[(i - 1) % m]
            cur = cleaned[i]
            nxt = cleaned[(i + 1) % m]
            if _cross(prev, cur, nxt) != 0:
                kept.append(cur)
        cleaned = kept
    if len(cleaned) < 3 or abs(area2(cleaned)) == 0:
        return None
    return tuple(cleaned)


def _edges(poly: Polygon) -> Iterable[tuple[Fraction, Fraction, Fraction]]:
    """Half-plane (a, b, c) per ccw edge, inside = a x + b y + c >= 0."""
    n = len(poly)
    for i in range(n):
        (x1, y1), (x2, y2) = poly[i], poly[(i + 1) % n]
        yield (y1 - y2, x2 - x1, x1 * y2 - x2 * y1)


def intersect_convex(p: Polygon, q: Polygon) -> Optional[Polygon]:
    """p intersect q, or None when the overlap has zero area."""
    if bbox_disjoint(p, q):
        return None
    out: Optional[Sequence[Point]] = p
    for a, b, c in _edges(q):
        out = clip_halfplane(out, a, b, c)
        if out is None:
            return None
    return tuple(out)


def subtract_convex(p: Polygon, q: Polygon) -> list[Polygon]:
    """p minus q as disjoint convex pieces (up to shared boundaries)."""
    if bbox_disjoint(p, q):
        return [p]
    pieces: list[Polygon] = []
    remaining: Optional[Sequence[Point]] = p
    for a, b, c in _edges(q):
        if remaining is None:
            break
        outside = clip_halfplane(remaining, -a, -b, -c)
        if outside is not None:
            pieces.append(outside)
        remaining = clip_halfplane(remaining, a, b, c)
    return pieces


def transform(m, poly: Polygon) -> Polygon:
    """Image under a linear map given as a MappingClass or an (a, b, c, d)
    tuple; det 1 preserves orientation and area.  Note the two signed lifts
    of a projective class move planar sets differently."""
    if isinstance(m, MappingClass):
        a, b, c, d = m.a, m.b, m.c, m.d
    else:
        a, b, c, d = m
    return tuple((a * x + b * y, c * x + d * y) for x, y in poly)


def bbox(poly: Polygon) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    xs = [p[0] for p in poly]
    ys = [p[1] for p in poly]
    return (min(xs), min(ys), max(xs), max(ys))


def bbox_disjoint(p: Polygon, q: Polygon) -> bool:
    pb, qb = bbox(p), bbox(q)
    return pb[2] <= qb[0] or qb[2] <= pb[0] or pb[3] <= qb[1] or qb[3] <= pb[1]


def overlap_area(p: Polygon, q: Polygon) -> Fraction:
    inter = intersect_convex(p, q)
    return area(inter) if inter is not None else Fraction(0)


def convex_hull(points: Iterable[Sequence]) -> Optional[Polygon]:
    """Strict convex hull (monotone chain); None if degenerate."""
    pts = sorted({(Fraction(p[0]), Fraction(p[1])) for p in points})
    if len(pts) < 3:
        return None
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3 or area2(hull) == 0:
        return None
    return tuple(hull)
