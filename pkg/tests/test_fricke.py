import math

import numpy as np
import pytest

from mfgap.fricke import (
    MODULAR_POINT,
    ORDER3_ROTATION,
    SEED_SLOPES,
    TracePoint,
    cor43_check,
    cor43_csv_rows,
    curve_count,
    enumerate_tail,
    farey_parents,
    l2_tail_report,
    length,
    length_of_trace,
    near_degenerate_family,
    pullback_point,
    sample_trace_points,
    slope_table,
    trace_of_slope,
    weight_of_trace,
)
from mfgap.gap import FinSuppVector, displacement_restricted
from mfgap.schottky import DEFAULT_PAIR
from mfgap.slopes import DomainError, MappingClass, S_ROTATE, act_slope, canonicalize_slope

PHIS = [
    DEFAULT_PAIR.gen_a,
    DEFAULT_PAIR.gen_a.inverse(),
    DEFAULT_PAIR.gen_b,
    DEFAULT_PAIR.gen_b.inverse(),
]


def sl(p, q):
    return canonicalize_slope(p, q)


# ---------------------------------------------------------------------------
# traces and lengths
# ---------------------------------------------------------------------------


def test_seed_traces():
    assert trace_of_slope(MODULAR_POINT, sl(1, 1)) == 3.0
    assert trace_of_slope(MODULAR_POINT, sl(0, 1)) == 3.0
    assert trace_of_slope(MODULAR_POINT, sl(1, 0)) == 3.0


def test_vieta_steps():
    # parents of 2/1 are 1/1 and 1/0, opposite vertex 0/1
    assert trace_of_slope(MODULAR_POINT, sl(2, 1)) == 6.0
    # parents of 3/1 are 2/1 and 1/0, opposite vertex 1/1
    assert trace_of_slope(MODULAR_POINT, sl(3, 1)) == 15.0
    assert trace_of_slope(MODULAR_POINT, sl(-1, 1)) == 6.0


def test_farey_parents_structure():
    rng = np.random.default_rng(5)
    for _ in range(300):
        p, q = int(rng.integers(-60, 61)), int(rng.integers(0, 61))
        if (p, q) == (0, 0):
            continue
        s = sl(p, q)
        if s in SEED_SLOPES:
            continue
        r1, r2, third = farey_parents(s)
        # mediant property: some signed representatives of the parents sum
        # to a representative of s, and the third vertex is their difference
        candidates = set()
        for s1 in (1, -1):
            for s2 in (1, -1):
                v = (s1 * r1.p + s2 * r2.p, s1 * r1.q + s2 * r2.q)
                if v != (0, 0):
                    candidates.add(sl(*v))
        assert s in candidates
        assert third in candidates
        # unimodular neighbor relations
        assert abs(r1.p * r2.q - r1.q * r2.p) == 1
        assert abs(r1.p * s.q - r1.q * s.p) == 1
        assert abs(r2.p * s.q - r2.q * s.p) == 1


def test_length_closed_forms():
    assert abs(length_of_trace(3.0) - 1.9248473002384139) < 1e-15
    assert abs(length_of_trace(6.0) - 3.525494348078172) < 1e-15


def test_length_boundary_rejected():
    with pytest.raises(DomainError):
        length_of_trace(2.0)


def test_weight_matches_exp_length():
    for t in (2.5, 3.0, 7.0, 100.0):
        assert abs(weight_of_trace(t) - math.exp(-2 * length_of_trace(t))) < 1e-15


def test_trace_point_validation():
    with pytest.raises(DomainError):
        TracePoint(2.0, 3.0, 3.0)
    with pytest.raises(DomainError):
        TracePoint(3.0, 3.0, 4.0)  # Fricke relation fails


def test_order3_symmetry_of_traces():
    # slopes related by the order-3 rotation share traces at the most
    # symmetric point
    rng = np.random.default_rng(2)
    memo = {}
    for _ in range(60):
        p, q = int(rng.integers(-15, 16)), int(rng.integers(0, 16))
        if (p, q) == (0, 0):
            continue
        s = sl(p, q)
        rot = act_slope(ORDER3_ROTATION, s)
        t1 = trace_of_slope(MODULAR_POINT, s, memo)
        t2 = trace_of_slope(MODULAR_POINT, rot, memo)
        assert abs(t1 - t2) < 1e-9 * max(1.0, abs(t1))


# ---------------------------------------------------------------------------
# pullback
# ---------------------------------------------------------------------------


def test_pullback_identity():
    pt = pullback_point(MappingClass(1, 0, 0, 1), MODULAR_POINT)
    assert pt.seeds() == (3.0, 3.0, 3.0)


def test_pullback_order3_fixes_modular_point():
    pt = pullback_point(ORDER3_ROTATION, MODULAR_POINT)
    assert pt.seeds() == (3.0, 3.0, 3.0)


def test_pullback_rotation_gives_fricke_triple():
    # the quarter rotation does not fix the hexagonal point; it sends it to
    # the Fricke-valid triple (3, 3, 6)
    pt = pullback_point(S_ROTATE, MODULAR_POINT)
    assert pt.seeds() == (3.0, 3.0, 6.0)
    assert abs(pt.fricke_residual()) < 1e-12


def test_pullback_defining_identity():
    rng = np.random.default_rng(9)
    points = [MODULAR_POINT] + sample_trace_points(3, seed=21)
    for pt in points:
        for phi in PHIS:
            pb = pullback_point(phi, pt)
            inv = phi.inverse()
            for _ in range(20):
                p, q = int(rng.integers(-12, 13)), int(rng.integers(0, 13))
                if (p, q) == (0, 0):
                    continue
                s = sl(p, q)
                lhs = length(pb, s)
                rhs = length(pt, act_slope(inv, s))
                assert abs(lhs - rhs) < 1e-9 * max(1.0, rhs)


def test_pullback_preserves_fricke_residual():
    for pt in sample_trace_points(5, seed=33):
        for phi in PHIS:
            pb = pullback_point(phi, pt)
            assert abs(pb.fricke_residual()) <= 1e-9


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------


def test_enumeration_counts_unpruned():
    enum = enumerate_tail(MODULAR_POINT, 9, prune_tol=0.0, collect=True)
    for d, row in enumerate(enum.rows, start=1):
        expected = 3 if d == 1 else 3 * 2 ** (d - 2)
        assert row.count == expected
    slopes = [s for level in enum.slopes_by_depth for s, _ in level]
    assert len(slopes) == len(set(slopes))


def test_enumeration_matches_trace_recursion():
    enum = enumerate_tail(MODULAR_POINT, 8, prune_tol=0.0, collect=True)
    memo = {}
    for level in enum.slopes_by_depth:
        for s, t in level:
            direct = trace_of_slope(MODULAR_POINT, s, memo)
            assert abs(direct - t) <= 1e-9 * max(1.0, abs(t))


def test_pruning_is_certified():
    for pt in [MODULAR_POINT] + sample_trace_points(3, seed=8):
        full = enumerate_tail(pt, 12, prune_tol=0.0)
        pruned = enumerate_tail(pt, 12, prune_tol=1e-10)
        diff = full.rows[-1].partial_sum - pruned.rows[-1].partial_sum
        assert 0 <= diff <= pruned.pruned_bound + 1e-15


def test_tail_bound_depth_40():
    for pt in [MODULAR_POINT] + sample_trace_points(5, seed=8) + near_degenerate_family():
        enum = enumerate_tail(pt, 40, prune_tol=1e-12)
        assert enum.tail_bound < 1e-8


def test_increments_positive_then_decreasing_unpruned():
    enum = enumerate_tail(MODULAR_POINT, 12, prune_tol=0.0)
    incs = [r.increment for r in enum.rows]
    assert all(x > 0 for x in incs)
    assert all(incs[i + 1] < incs[i] for i in range(2, len(incs) - 1))


def test_l2_tail_depth_one_value():
    rep = l2_tail_report(MODULAR_POINT, 1)
    # oracle: three seed curves of trace 3, weight (1.5 + sqrt(1.25))^-4 each
    expected = 3 * (1.5 + math.sqrt(1.25)) ** -4
    assert abs(rep["rows"][0]["increment"] - expected) < 1e-15
    assert abs(expected - 0.06385870875662455) < 1e-15


def test_l2_norm_translation_invariance():
    # the full sum is the same at a point and its pullback, up to tails
    for phi in PHIS[:2]:
        pb = pullback_point(phi, MODULAR_POINT)
        e1 = enumerate_tail(MODULAR_POINT, 40, prune_tol=1e-12)
        e2 = enumerate_tail(pb, 40, prune_tol=1e-12)
        gap = abs(e1.rows[-1].partial_sum - e2.rows[-1].partial_sum)
        assert gap <= e1.tail_bound + e2.tail_bound + 1e-12


# ---------------------------------------------------------------------------
# curve counts
# ---------------------------------------------------------------------------


def test_curve_count_small():
    assert curve_count(MODULAR_POINT, 1.0) == 0
    assert curve_count(MODULAR_POINT, 2.0) == 3


def test_curve_count_box_oracle():
    # independent oracle: count traces below the cutoff over a large slope
    # box, after checking the box rim is already far above the cutoff
    cap_length = 6.0
    t_cap = 2.0 * math.cosh(cap_length / 2.0)
    memo = {}
    count = 0
    rim_min = math.inf
    for p in range(-80, 81):
        for q in range(0, 81):
            if (p, q) == (0, 0) or math.gcd(abs(p), q) != 1:
                continue
            s = sl(p, q)
            if s.as_pair() != (p, q):
                continue
            t = trace_of_slope(MODULAR_POINT, s, memo)
            if t <= t_cap:
                count += 1
            if max(abs(p), q) >= 60:
                rim_min = min(rim_min, t)
    assert rim_min > 4 * t_cap  # cutoff curves cannot escape the box
    assert curve_count(MODULAR_POINT, cap_length) == count


def test_curve_count_quadratic_growth():
    c12 = curve_count(MODULAR_POINT, 12.0)
    c24 = curve_count(MODULAR_POINT, 24.0)
    assert 3.2 <= c24 / c12 <= 4.8


def test_curve_count_validation():
    with pytest.raises(DomainError):
        curve_count(MODULAR_POINT, 0.0)


# ---------------------------------------------------------------------------
# the length-sum inequality
# ---------------------------------------------------------------------------


def test_cor43_modular_point():
    rep = cor43_check(MODULAR_POINT, PHIS, depth=10)
    assert rep["passed"]
    assert rep["ratio"] > rep["bound"]
    assert rep["allowance"] < 1e-6


def test_cor43_rejects_non_pseudo_anosov():
    with pytest.raises(DomainError):
        cor43_check(MODULAR_POINT, [MappingClass(1, 1, 0, 1)], depth=8)


def test_cor43_term_vanishes_iff_delta_zero():
    # the summand at a slope is zero exactly when the two lengths agree
    pt = MODULAR_POINT
    phi = PHIS[0]
    pb = pullback_point(phi, pt)
    rows0 = slope_table(pt, 8)
    rows1 = slope_table(pb, 8)
    zeros = nonzeros = 0
    for (s, t0), (_, t1) in zip(rows0, rows1):
        term = (math.exp(-length_of_trace(t1)) - math.exp(-length_of_trace(t0))) ** 2
        if abs(t0 - t1) < 1e-12 * max(1.0, abs(t0)):
            assert term < 1e-25
            zeros += 1
        else:
            assert term > 0
            nonzeros += 1
    assert nonzeros > 0


def test_cor43_cross_validates_against_displacement():
    pt = MODULAR_POINT
    depth = 8
    rep = cor43_check(pt, PHIS, depth)
    table = slope_table(pt, depth)
    subset = [s for s, _ in table]
    memo = {}
    for phi, phi_rep in zip(PHIS, rep["per_phi"]):
        amplitudes = {s: math.exp(-length_of_trace(t)) for s, t in table}
        inv = phi.inverse()
        for s in subset:
            pre = act_slope(inv, s)
            if pre not in amplitudes:
                amplitudes[pre] = math.exp(
                    -length_of_trace(trace_of_slope(pt, pre, memo))
                )
        vec = FinSuppVector(amplitudes)
        lhs = displacement_restricted(phi, vec, subset)
        assert abs(lhs - phi_rep["lhs"]) <= 1e-9 * max(1.0, phi_rep["lhs"])


def test_cor43_near_degenerate_family():
    for pt in near_degenerate_family():
        rep = cor43_check(pt, PHIS, depth=10)
        assert rep["passed"]


def test_cor43_csv_rows_align():
    rows = cor43_csv_rows(MODULAR_POINT, PHIS[0], 6)
    assert len(rows) == 3 + 3 * (2 ** 5 - 1)
    for name, l0, l1, delta in rows:
        assert abs((l0 - l1) - delta) < 1e-12


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------


def test_length_table_matches_direct_lengths():
    from mfgap.fricke import length_table

    table = length_table(MODULAR_POINT, 6)
    assert len(table) == 3 + 3 * (2 ** 4 + 2 ** 3 + 2 ** 2 + 2 + 1)
    for s, l in list(table.items())[:20]:
        assert abs(l - length(MODULAR_POINT, s)) < 1e-12


def test_sampled_points_valid():
    pts = sample_trace_points(25, seed=3)
    assert len(pts) == 25
    for pt in pts:
        assert min(pt.seeds()) > 2
        assert abs(pt.fricke_residual()) <= 1e-9


def test_sampling_deterministic():
    a = [p.seeds() for p in sample_trace_points(10, seed=5)]
    b = [p.seeds() for p in sample_trace_points(10, seed=5)]
    assert a == b


def test_near_degenerate_family_valid():
    pts = near_degenerate_family()
    assert min(p.x for p in pts) == 2.05
    for pt in pts:
        assert abs(pt.fricke_residual()) <= 1e-9
