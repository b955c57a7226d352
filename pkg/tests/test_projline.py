from fractions import Fraction

import pytest

from mfgap.projline import (
    ProjInterval,
    apply_point,
    arcs_disjoint,
    ccw_before,
    interval_between,
    interval_through_inf,
    parse_point,
    point_str,
    proj_point,
    theta,
)
from mfgap.slopes import DomainError, MappingClass


def test_point_serialization():
    p = proj_point(Fraction(-21, 20))
    assert point_str(p) == "-21/20"
    assert parse_point("-21/20") == p
    assert point_str(parse_point("7")) == "7/1"


def test_theta_order_matches_cross_predicate():
    xs = [Fraction(5), Fraction(1), Fraction(0), Fraction(-1), Fraction(-7)]
    pts = [proj_point(x) for x in xs] + [parse_point("1/0")]
    for p in pts:
        for q in pts:
            for r in pts:
                if len({p, q, r}) < 3:
                    continue
                want = ((theta(q) - theta(p)) % 3.141592653589793) < (
                    (theta(r) - theta(p)) % 3.141592653589793
                )
                assert ccw_before(p, q, r) == want


def test_interval_between_membership():
    arc = interval_between(Fraction(1), Fraction(2))
    assert arc.contains(proj_point(Fraction(3, 2)))
    assert arc.contains(proj_point(1)) and arc.contains(proj_point(2))
    assert not arc.contains(proj_point(Fraction(5, 2)))
    assert not arc.contains(parse_point("1/0"))


def test_interval_through_inf_membership():
    arc = interval_through_inf(Fraction(15), Fraction(-21, 20))
    assert arc.contains(parse_point("1/0"))
    assert arc.contains(proj_point(20))
    assert arc.contains(proj_point(-2))
    assert not arc.contains(proj_point(0))
    assert not arc.contains(proj_point(14))


def test_degenerate_arc_rejected():
    with pytest.raises(DomainError):
        ProjInterval(proj_point(1), proj_point(1))


def test_complement_swaps_endpoints():
    arc = interval_between(Fraction(0), Fraction(1))
    comp = arc.complement()
    assert comp.contains(parse_point("1/0"))
    assert not comp.contains(proj_point(Fraction(1, 2)))
    # boundary points belong to both closed arcs
    assert comp.contains(proj_point(0)) and comp.contains(proj_point(1))


def test_contains_arc_strict():
    outer = interval_between(Fraction(0), Fraction(4))
    inner = interval_between(Fraction(1), Fraction(2))
    assert outer.contains_arc(inner, strict=True)
    assert not inner.contains_arc(outer)
    touching = interval_between(Fraction(0), Fraction(2))
    assert outer.contains_arc(touching)
    assert not outer.contains_arc(touching, strict=True)


def test_contains_arc_rejects_wrapping_escape():
    outer = interval_between(Fraction(0), Fraction(4))
    # both endpoints inside but the ccw arc from 3 to 1 leaves through inf
    escaping = ProjInterval(proj_point(1), proj_point(3))
    assert outer.contains(escaping.lo) and outer.contains(escaping.hi)
    assert not outer.contains_arc(escaping)


def test_arcs_disjoint():
    a = interval_between(Fraction(0), Fraction(1))
    b = interval_between(Fraction(2), Fraction(3))
    c = interval_between(Fraction(1, 2), Fraction(5, 2))
    inf_arc = interval_through_inf(Fraction(10), Fraction(-10))
    assert arcs_disjoint(a, b)
    assert not arcs_disjoint(a, c)
    assert not arcs_disjoint(b, c)
    assert arcs_disjoint(a, inf_arc)
    assert not arcs_disjoint(inf_arc, interval_between(Fraction(11), Fraction(12)))


def test_image_preserves_orientation_and_membership():
    m = MappingClass(3, 1, 2, 1)
    arc = interval_between(Fraction(-1, 2), Fraction(1, 2))
    image = arc.image(m)
    for x in (Fraction(-1, 4), Fraction(0), Fraction(1, 3)):
        assert image.contains(apply_point(m, proj_point(x)))
    outside = apply_point(m, proj_point(10))
    assert not image.contains(outside)


def test_length_normalized():
    full = interval_between(Fraction(-1000000), Fraction(1000000))
    assert 0.99 < full.length() < 1.0
    half = ProjInterval(proj_point(0), parse_point("1/0"))
    assert abs(half.length() - 0.5) < 1e-12
