"""Exact arithmetic on the projective line RP^1 (the circle of directions).

Points are canonical primitive pairs (p, q), reused from the slope model;
(1, 0) is the point at infinity.  The circle is parametrized by the angle
theta = atan2(q, p) in [0, pi), and the fixed circular orientation is
increasing theta with wrap-around at pi.  In the affine coordinate
x = p/q this orientation runs from +infinity down through 0 to -infinity
and wraps through the point at infinity.

All order predicates are exact sign computations on integers; floats
appear only in reported arc lengths.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .slopes import DomainError, MappingClass, Slope, canonicalize_slope

ProjPoint = Slope


def proj_point(x) -> ProjPoint:
    """Point of RP^1 from a rational affine coordinate (Fraction or int)."""
    frac = Fraction(x)
    return canonicalize_slope(frac.numerator, frac.denominator)


def cross(u: ProjPoint, v: ProjPoint) -> int:
    """Positive iff theta(u) < theta(v), zero iff u == v."""
    return u.p * v.q - u.q * v.p


def theta(u: ProjPoint) -> float:
    """Angle coordinate in [0, pi); float, for reporting only."""
    return math.atan2(u.q, u.p)


def apply_point(m: MappingClass, u: ProjPoint) -> ProjPoint:
    return canonicalize_slope(m.a * u.p + m.b * u.q, m.c * u.p + m.d * u.q)


def _offset_rank(base: ProjPoint, x: ProjPoint) -> int:
    """0, 1 or 2 grading the ccw offset (theta(x) - theta(base)) mod pi."""
    c = cross(base, x)
    if c == 0:
        return 0
    return 1 if c > 0 else 2


def ccw_before(base: ProjPoint, x: ProjPoint, y: ProjPoint) -> bool:
    """True iff x is strictly closer than y when walking ccw from base."""
    rx, ry = _offset_rank(base, x), _offset_rank(base, y)
    if rx != ry:
        return rx < ry
    return cross(x, y) > 0


@dataclass(frozen=True)
class ProjInterval:
    """Closed arc from lo to hi in the ccw orientation, with lo != hi."""

    lo: ProjPoint
    hi: ProjPoint

    def __post_init__(self) -> None:
        if self.lo == self.hi:
            raise DomainError("degenerate arc: lo == hi")

    def contains(self, x: ProjPoint, strict: bool = False) -> bool:
        if x == self.lo or x == self.hi:
            return not strict
        return ccw_before(self.lo, x, self.hi)

    def contains_arc(self, other: "ProjInterval", strict: bool = False) -> bool:
        """True iff `other` is a subarc (strict: endpoints in the interior)."""
        if not (self.contains(other.lo, strict) and self.contains(other.hi, strict)):
            return False
        # Both endpoints lie in the arc; other must not wrap past hi.
        if other.lo == other.hi:
            return True
        return not ccw_before(self.lo, other.hi, other.lo)

    def complement(self) -> "ProjInterval":
        """Closure of the complementary arc."""
        return ProjInterval(self.hi, self.lo)

    def image(self, m: MappingClass) -> "ProjInterval":
        """Image arc; PSL(2, Z) preserves the circular orientation."""
        return ProjInterval(apply_point(m, self.lo), apply_point(m, self.hi))

    def length(self) -> float:
        """Normalized angular length in (0, 1)."""
        span = (theta(self.hi) - theta(self.lo)) % math.pi
        return span / math.pi

    def to_json(self) -> dict:
        return {"lo": point_str(self.lo), "hi": point_str(self.hi)}

    def __str__(self) -> str:
        return f"[{point_str(self.lo)} -> {point_str(self.hi)}]"


def point_str(u: ProjPoint) -> str:
    return f"{u.p}/{u.q}"


def parse_point(text: str) -> ProjPoint:
    num, _, den = text.partition("/")
    return canonicalize_slope(int(num), int(den if den else "1"))


def arcs_disjoint(i1: ProjInterval, i2: ProjInterval) -> bool:
    """Exact disjointness of two closed arcs."""
    return not (
        i1.contains(i2.lo)
        or i1.contains(i2.hi)
        or i2.contains(i1.lo)
        or i2.contains(i1.hi)
    )


def interval_between(x_left, x_right) -> ProjInterval:
    """Arc of affine coordinates [x_left, x_right], not through infinity."""
    left, right = Fraction(x_left), Fraction(x_right)
    if not left < right:
        raise DomainError("need x_left < x_right")
    return ProjInterval(proj_point(right), proj_point(left))


def interval_through_inf(x_right, x_left) -> ProjInterval:
    """Arc [x_right, +inf] wrapped with [-inf, x_left]; needs x_left < x_right."""
    left, right = Fraction(x_left), Fraction(x_right)
    if not left < right:
        raise DomainError("need x_left < x_right")
    return ProjInterval(proj_point(left), proj_point(right))
