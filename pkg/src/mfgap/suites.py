"""Verification suites behind the service endpoints and CLI subcommands.

Each suite takes plain keyword arguments, runs deterministically from its
seed, and returns a JSON-ready report dict with a `passed` flag plus the
echoed configuration.  CSV side-tables are returned as text under a `csv`
key where a suite has a plottable table.
"""

from __future__ import annotations

import math
from fractions import Fraction

from . import fricke, parity
from .foliation import (
    StepFunction,
    build_h_related_cover,
    chain_inequality_report,
    continuous_gap_check,
    default_cover_bases,
    depth_one_gaps,
    full_range_sectors,
    limit_cone_mass,
    sample_regions,
    sample_step_functions,
    sector_cell,
    verify_cover,
)
from .gap import (
    ETA_CONTINUOUS,
    ETA_DISCRETE,
    KESTEN_NORM,
    FinSuppVector,
    certify_gap,
    displacement_restricted,
    free_group_gap_constant,
    punctured_orbit_gap,
    random_walk_spectral_radius,
)
from .projline import arcs_disjoint
from .reporting import csv_text, spawn_seeds
from .schottky import (
    DEFAULT_PAIR,
    SchottkyPair,
    cover_levels,
    fixed_points,
    freeness_scan,
    purely_hyperbolic_scan,
    verify_ping_pong,
)
from .slopes import (
    DomainError,
    MappingClass,
    OrbitBall,
    Slope,
    act_slope,
    canonicalize_slope,
)


def _pair_from_json(pair_json: dict | None) -> SchottkyPair:
    if pair_json is None:
        return DEFAULT_PAIR
    from .projline import ProjInterval, parse_point

    def arc(d):
        return ProjInterval(parse_point(d["lo"]), parse_point(d["hi"]))

    return SchottkyPair(
        gen_a=MappingClass.from_json(pair_json["gen_a"]),
        gen_b=MappingClass.from_json(pair_json["gen_b"]),
        ia_plus=arc(pair_json["ia_plus"]),
        ia_minus=arc(pair_json["ia_minus"]),
        ib_plus=arc(pair_json["ib_plus"]),
        ib_minus=arc(pair_json["ib_minus"]),
    )


def _default_phis(pair: SchottkyPair) -> list[MappingClass]:
    a, b = pair.generators()
    return [a, a.inverse(), b, b.inverse()]


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------


def suite_orbit(base: str = "0/1", radius: int = 6, pair: dict | None = None) -> dict:
    sp = _pair_from_json(pair)
    base_slope = Slope.parse(base)
    ball = OrbitBall(base_slope, sp.generators(), radius)
    canonical_ok = all(
        canonicalize_slope(s.p, s.q) == s for s in ball.points
    )
    sorted_ok = all(
        ball.points[i] < ball.points[i + 1] for i in range(len(ball.points) - 1)
    )
    report = {
        "suite": "orbit",
        "config": {"base": base, "radius": radius, "pair": sp.to_json()},
        "size": len(ball),
        "first": [str(s) for s in ball.points[:8]],
        "last": [str(s) for s in ball.points[-8:]],
        "all_canonical": canonical_ok,
        "sorted_deduplicated": sorted_ok,
        "contains_base": base_slope in ball,
        "passed": bool(canonical_ok and sorted_ok and base_slope in ball),
    }
    return report


def suite_schottky_verify(pair: dict | None = None, scan_len: int = 12) -> dict:
    sp = _pair_from_json(pair)
    cert = verify_ping_pong(sp)
    result = {
        "suite": "schottky-verify",
        "config": {"pair": sp.to_json(), "scan_len": scan_len},
        "certificate": cert.to_json(),
    }
    if not cert.ok:
        result["passed"] = False
        return result
    scan = purely_hyperbolic_scan(sp, scan_len)
    free_hits = freeness_scan(sp, scan_len)
    fps = {}
    for name, g in (("gen_a", sp.gen_a), ("gen_b", sp.gen_b)):
        att, rep = fixed_points(g)
        fps[name] = {
            "attracting": str(att),
            "attracting_float": float(att),
            "repelling": str(rep),
            "repelling_float": float(rep),
        }
    result.update(
        {
            "scan": scan.to_json(),
            "identity_words": free_hits,
            "fixed_points": fps,
            "passed": bool(
                cert.ok
                and scan.min_abs_trace > 2
                and not scan.violations
                and scan.words_fixing_a_slope == 0
                and free_hits == 0
            ),
        }
    )
    return result


def suite_limit_set(depth: int = 10, pair: dict | None = None) -> dict:
    sp = _pair_from_json(pair)
    levels = cover_levels(sp, depth)
    lengths = [lv.total_length for lv in levels]
    decreasing = all(lengths[i + 1] < lengths[i] for i in range(len(lengths) - 1))
    # Exact nesting: every depth-2 interval inside its parent letter arc.
    nesting_ok = True
    parent = {w: iv for w, iv in levels[0].intervals}
    if depth >= 2:
        for w, iv in levels[1].intervals:
            if not parent[w[0]].contains_arc(iv):
                nesting_ok = False
    report = {
        "suite": "limit-set",
        "config": {"depth": depth, "pair": sp.to_json()},
        "levels": [lv.to_json() for lv in levels],
        "strictly_decreasing": decreasing,
        "depth2_nesting_exact": nesting_ok,
        "final_over_first": lengths[-1] / lengths[0],
        "decay_below_half": bool(lengths[-1] / lengths[0] < 0.5),
        "passed": bool(decreasing and nesting_ok and lengths[-1] / lengths[0] < 0.5),
    }
    return report


def suite_gap_test(
    orbit_base: str = "0/1",
    samples: int = 1000,
    seed: int = 42,
    radius: int = 8,
    support_cap: int = 64,
    pair: dict | None = None,
    punctured: bool = False,
) -> dict:
    sp = _pair_from_json(pair)
    base = Slope.parse(orbit_base)
    if punctured:
        rep = punctured_orbit_gap(
            base, sp, samples, seed, radius=radius, support_cap=support_cap
        )
    else:
        ball = OrbitBall(base, sp.generators(), radius)
        rep = certify_gap(
            ball, sp, samples, seed, support_cap=support_cap
        )
    passed = (
        rep.violations == 0
        and rep.min_observed_ratio >= ETA_DISCRETE - 1e-12
        and rep.adversarial["final_ratio"] >= ETA_DISCRETE - 1e-12
    )
    report = {
        "suite": "gap-test",
        "config": {
            "orbit_base": orbit_base,
            "samples": samples,
            "seed": seed,
            "radius": radius,
            "support_cap": support_cap,
            "punctured": punctured,
            "pair": sp.to_json(),
        },
        "gap_report": rep.to_json(),
        "passed": bool(passed),
    }
    report["csv"] = csv_text(
        ["sample", "ratio"], [(i, r) for i, r in enumerate(rep.ratios)]
    )
    return report


def suite_spectral_radius(radius: int = 12) -> dict:
    values = [random_walk_spectral_radius(r) for r in range(1, radius + 1)]
    monotone = all(values[i + 1] >= values[i] - 1e-12 for i in range(len(values) - 1))
    bounded = all(v <= KESTEN_NORM + 1e-9 for v in values)
    in_window = 0.84 <= values[-1] <= KESTEN_NORM + 1e-9 if radius >= 12 else True
    report = {
        "suite": "spectral-radius",
        "config": {"radius": radius},
        "values": values,
        "kesten_limit": KESTEN_NORM,
        "monotone": monotone,
        "bounded_by_kesten": bounded,
        "final_in_window": bool(in_window),
        "constant": free_group_gap_constant(),
        "passed": bool(monotone and bounded and in_window),
    }
    return report


def suite_l2_tail(
    n_points: int = 20,
    seed: int = 11,
    max_depth: int = 40,
    tol: float = 1e-8,
) -> dict:
    points = [fricke.MODULAR_POINT] + fricke.sample_trace_points(n_points, seed)
    rows = []
    all_pass = True
    for pt in points:
        rep = fricke.l2_tail_report(pt, max_depth)
        cauchy = rep["tail_bound"] <= tol
        increments = [r["increment"] for r in rep["rows"]]
        positive_then_decreasing = _eventually_decreasing(increments)
        all_pass = all_pass and cauchy and positive_then_decreasing
        rows.append(
            {
                "point": rep["point"],
                "norm_squared_truncated": rep["norm_squared_truncated"],
                "tail_bound": rep["tail_bound"],
                "cauchy_within_tol": bool(cauchy),
                "increments_eventually_decreasing": bool(positive_then_decreasing),
                "enumerated": sum(r["count"] for r in rep["rows"]),
            }
        )
    report = {
        "suite": "l2-tail",
        "config": {
            "n_points": n_points,
            "seed": seed,
            "max_depth": max_depth,
            "tol": tol,
        },
        "points": rows,
        "passed": bool(all_pass),
    }
    return report


def _eventually_decreasing(increments: list[float]) -> bool:
    """Positive while nonzero, and decreasing from some depth onward (zero
    tails from pruning count as decreased)."""
    nonzero = [x for x in increments if x > 0]
    if any(x < 0 for x in increments):
        return False
    tail = nonzero[2:]
    if len(tail) < 2:
        return True
    drop_at = 0
    for i in range(1, len(tail)):
        if tail[i] >= tail[i - 1]:
            drop_at = i
    return drop_at <= len(tail) // 2


def suite_cor43(
    n_points: int = 100,
    seed: int = 17,
    depth: int = 12,
    include_near_degenerate: bool = True,
    cross_validate: int = 3,
    pair: dict | None = None,
    explicit_points: list[list[float]] | None = None,
    phis_json: list | None = None,
) -> dict:
    sp = _pair_from_json(pair)
    if phis_json:
        phis = [MappingClass.from_json(rows) for rows in phis_json]
    else:
        phis = _default_phis(sp)
    if explicit_points:
        points = [
            fricke.TracePoint(x, y, z, tol=1e-6) for x, y, z in explicit_points
        ]
    else:
        points = [fricke.MODULAR_POINT] + fricke.sample_trace_points(n_points, seed)
        if include_near_degenerate:
            points.extend(fricke.near_degenerate_family())
    rows = []
    all_pass = True
    worst_ratio = math.inf
    for pt in points:
        rep = fricke.cor43_check(pt, phis, depth)
        worst_ratio = min(worst_ratio, rep["ratio"])
        all_pass = all_pass and rep["passed"]
        rows.append(
            {
                "point": rep["point"],
                "ratio": rep["ratio"],
                "allowance": rep["allowance"],
                "rhs": rep["rhs"],
                "passed": rep["passed"],
            }
        )
    xval = [
        _cor43_cross_validate(points[i], phis, depth)
        for i in range(min(cross_validate, len(points)))
    ]
    xval_ok = all(v["agree"] for v in xval)
    csv_rows = fricke.cor43_csv_rows(fricke.MODULAR_POINT, phis[0], min(depth, 8))
    report = {
        "suite": "cor43",
        "config": {
            "n_points": n_points,
            "seed": seed,
            "depth": depth,
            "include_near_degenerate": include_near_degenerate,
            "explicit_points": explicit_points or [],
            "bound": fricke.GAP_BOUND_CONTINUOUS,
            "phis": [m.to_json() for m in phis],
            "pair": sp.to_json(),
        },
        "points": rows,
        "worst_ratio": worst_ratio,
        "cross_validation": xval,
        "cross_validation_ok": bool(xval_ok),
        "passed": bool(all_pass and xval_ok),
        "csv": csv_text(
            ["slope", "length", "length_pulled", "delta"], csv_rows
        ),
    }
    return report


def _cor43_cross_validate(
    pt: fricke.TracePoint, phis: list[MappingClass], depth: int, tol: float = 1e-9
) -> dict:
    """Check the length-sum form of the displacement against the orbit-map
    form from the gap engine, on the same truncation."""
    rep = fricke.cor43_check(pt, phis, depth)
    table = fricke.slope_table(pt, depth)
    subset = [s for s, _ in table]
    memo: dict = {}
    worst = 0.0
    for phi, phi_rep in zip(phis, rep["per_phi"]):
        inv = phi.inverse()
        amplitudes = {}
        for s, t in table:
            amplitudes[s] = math.exp(-fricke.length_of_trace(t))
        for s in subset:
            pre = act_slope(inv, s)
            if pre not in amplitudes:
                amplitudes[pre] = math.exp(
                    -fricke.length_of_trace(fricke.trace_of_slope(pt, pre, memo))
                )
        vec = FinSuppVector(amplitudes)
        lhs_disp = displacement_restricted(phi, vec, subset)
        worst = max(worst, abs(lhs_disp - phi_rep["lhs"]) / max(1.0, phi_rep["lhs"]))
    return {"point": pt.to_json(), "max_relative_gap": worst, "agree": bool(worst <= tol)}


def suite_cover_build(
    n_regions: int = 50,
    seed: int = 23,
    max_len: int = 3,
    cone_depth: int = 3,
    pair: dict | None = None,
) -> dict:
    sp = _pair_from_json(pair)
    bases = default_cover_bases(sp)
    regions = sample_regions(sp, n_regions, seed)
    cone = cover_levels(sp, cone_depth)[-1]
    rows = []
    sample_covers = []
    all_pass = True
    for i, region in enumerate(regions):
        avoid = all(
            arcs_disjoint(cell.direction_arc(), arc)
            for cell in region
            for _, arc in cone.intervals
        )
        cover = build_h_related_cover(region, bases, sp, max_len)
        ver = verify_cover(cover, region)
        ok = bool(avoid and ver["disjoint"] and ver["area_identity"])
        all_pass = all_pass and ok
        rows.append(
            {
                "polygons": len(region),
                "pieces": ver["pieces"],
                "rounds": ver["rounds"],
                "avoids_cone": bool(avoid),
                "disjoint": ver["disjoint"],
                "area_identity": ver["area_identity"],
                "area": ver["area_region"],
            }
        )
        if i < 3:
            sample_covers.append(
                {
                    "region": [c.to_json() for c in region],
                    "cover": cover.to_json(),
                }
            )
    report = {
        "suite": "cover-build",
        "config": {
            "n_regions": n_regions,
            "seed": seed,
            "max_len": max_len,
            "cone_depth": cone_depth,
            "pair": sp.to_json(),
        },
        "regions": rows,
        "sample_covers": sample_covers,
        "passed": bool(all_pass),
    }
    return report


def suite_cont_gap(
    samples: int = 200,
    seed: int = 29,
    chain_checks: int = 3,
    annulus: tuple[float, float] = (1.0, 2.0),
    cone_depths: int = 10,
    pair: dict | None = None,
) -> dict:
    sp = _pair_from_json(pair)
    fs = sample_step_functions(sp, samples, seed)
    violations = 0
    worst = math.inf
    ratios = []
    for f in fs:
        rep = continuous_gap_check(f, sp)
        ratios.append(rep["ratio"])
        worst = min(worst, rep["ratio"])
        if not rep["passed"]:
            violations += 1
    # Chain inequality on deterministic single-base functions.
    chain_rows = []
    gaps = depth_one_gaps(sp)
    for i in range(chain_checks):
        gap_arc = gaps[i % len(gaps)]
        sub = sector_cell(
            gap_arc, Fraction(1, 2 + i), Fraction(3 + i, 2), shrink=Fraction(1, 10)
        )
        base = full_range_sectors(sp)[i % len(gaps)]
        from .foliation import act_cell
        from .slopes import signed_word_matrix

        gens = list(sp.generators())
        words = [(), (1,), (2,), (-1,), (1, 2), (2, -1)]
        pieces = [
            (act_cell(signed_word_matrix(w, gens), sub), Fraction(k + 1, 3))
            for k, w in enumerate(words)
        ]
        f = StepFunction(pieces)
        chain = chain_inequality_report(f, base, sp, max_len=3)
        chain_rows.append(
            {
                "translates_checked": chain["translates_checked"],
                "ok": chain["ok"],
            }
        )
    chain_ok = all(r["ok"] for r in chain_rows)
    # Limit-cone mass decay over the annulus.
    masses = [
        limit_cone_mass(sp, (Fraction(annulus[0]), Fraction(annulus[1])), d)
        for d in range(1, cone_depths + 1)
    ]
    mass_decreasing = all(masses[i + 1] < masses[i] for i in range(len(masses) - 1))
    mass_halved = masses[-1] / masses[0] < 0.5
    report = {
        "suite": "cont-gap",
        "config": {
            "samples": samples,
            "seed": seed,
            "chain_checks": chain_checks,
            "annulus": [annulus[0], annulus[1]],
            "cone_depths": cone_depths,
            "eta": ETA_CONTINUOUS,
            "pair": sp.to_json(),
        },
        "violations": violations,
        "worst_ratio": worst,
        "chain": chain_rows,
        "chain_ok": bool(chain_ok),
        "cone_masses": masses,
        "cone_mass_decreasing": bool(mass_decreasing),
        "cone_mass_halved": bool(mass_halved),
        "passed": bool(
            violations == 0 and chain_ok and mass_decreasing and mass_halved
        ),
        "csv": csv_text(["sample", "ratio"], list(enumerate(ratios))),
    }
    return report


def suite_decompose(radius: int = 6, samples: int = 500, seed: int = 31) -> dict:
    from .slopes import S_ROTATE, T_TWIST

    gens = [T_TWIST, S_ROTATE]
    rep = parity.decomposition_report(gens, radius, samples, seed)
    boundary_rejected = False
    ball = parity.coset_ball(gens, radius)
    inner = set(parity.coset_ball(gens, radius - 1))
    shell = [k for k in ball if k not in inner]
    if shell:
        try:
            parity.reject_boundary_vector(
                parity.ParityVector({shell[0]: Fraction(1)}), gens, radius
            )
        except DomainError:
            boundary_rejected = True
    report = {
        "suite": "decompose",
        "config": {"radius": radius, "samples": samples, "seed": seed},
        "report": rep,
        "boundary_vector_rejected": boundary_rejected,
        "passed": bool(rep["passed"] and boundary_rejected),
    }
    return report


SUITES = {
    "orbit": suite_orbit,
    "schottky-verify": suite_schottky_verify,
    "limit-set": suite_limit_set,
    "gap-test": suite_gap_test,
    "spectral-radius": suite_spectral_radius,
    "l2-tail": suite_l2_tail,
    "cor43": suite_cor43,
    "cover-build": suite_cover_build,
    "cont-gap": suite_cont_gap,
    "decompose": suite_decompose,
}


def suite_all(seed: int = 42, scale: str = "full") -> dict:
    """Run every suite with deterministic per-suite seeds split from one
    master seed.  `scale` trades sample counts for runtime ("smoke" for
    quick checks, "full" for the acceptance sizes)."""
    if scale not in ("full", "smoke"):
        raise DomainError("scale must be 'full' or 'smoke'")
    seeds = spawn_seeds(seed, 8)
    full = scale == "full"
    runs = {
        "orbit": suite_orbit(radius=6 if full else 4),
        "schottky-verify": suite_schottky_verify(scan_len=12 if full else 6),
        "limit-set": suite_limit_set(depth=10 if full else 5),
        "gap-test": suite_gap_test(
            samples=1000 if full else 50, seed=seeds[0], radius=8 if full else 5
        ),
        "spectral-radius": suite_spectral_radius(radius=12 if full else 6),
        "l2-tail": suite_l2_tail(
            n_points=20 if full else 4, seed=seeds[1], max_depth=40 if full else 20
        ),
        "cor43": suite_cor43(
            n_points=100 if full else 6, seed=seeds[2], depth=12 if full else 8
        ),
        "cover-build": suite_cover_build(
            n_regions=50 if full else 6, seed=seeds[3]
        ),
        "cont-gap": suite_cont_gap(
            samples=200 if full else 20, seed=seeds[4]
        ),
        "decompose": suite_decompose(
            radius=6 if full else 4, samples=500 if full else 50, seed=seeds[5]
        ),
    }
    for sub in runs.values():
        sub.pop("csv", None)
    report = {
        "suite": "all",
        "config": {"seed": seed, "scale": scale, "suite_seeds": seeds[:6]},
        "suites": runs,
        "passed": bool(all(r["passed"] for r in runs.values())),
    }
    return report
