"""Geodesic length functions on the Teichmueller space of the once-punctured
torus, in trace coordinates.

A point is a triple (x, y, z) of traces of the slope-0/1, 1/0 and 1/1
curves satisfying the cusped-torus relation x^2 + y^2 + z^2 = x*y*z with
x, y, z > 2.  Traces of all other slopes follow from the Vieta recursion
t(r (+) r') = t(r) t(r') - t(r (-) r') along the Farey tessellation, and
the geodesic length of a slope with trace t is 2*arccosh(t/2).

The Farey tessellation is walked as a tree of triangles.  Enumerations
carry certified tail bounds: once a branch is trace-monotone, every vertex
k levels deeper has trace >= t1 * g^k with g = (min edge trace) - 1, while
the number of vertices doubles per level, so the branch mass under
t -> e^(-2 length(t)) <= (t-1)^(-4) is dominated by a geometric series
whenever g^4 > 2.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .slopes import (
    PSEUDO_ANOSOV,
    DomainError,
    MappingClass,
    Slope,
    act_slope,
    canonicalize_slope,
    classify,
)

SEED_SLOPES = (
    canonicalize_slope(0, 1),
    canonicalize_slope(1, 0),
    canonicalize_slope(1, 1),
)

ORDER3_ROTATION = MappingClass(0, -1, 1, -1)  # cyclically permutes 0/1 -> 1/1 -> 1/0

FRICKE_TOL = 1e-9
_EXPANSION_CAP = 20_000_000


@dataclass(frozen=True)
class TracePoint:
    """Point of Teichmueller space as the trace triple of the seed slopes."""

    x: float
    y: float
    z: float
    tol: float = FRICKE_TOL

    def __post_init__(self) -> None:
        if not (self.x > 2 and self.y > 2 and self.z > 2):
            raise DomainError(f"traces must exceed 2: {(self.x, self.y, self.z)}")
        if abs(self.fricke_residual()) > self.tol:
            raise DomainError(
                f"Fricke relation violated: residual {self.fricke_residual():.3e}"
            )

    def fricke_residual(self) -> float:
        """Relative residual of x^2 + y^2 + z^2 - xyz (floats cannot hold
        the absolute residual once traces are large)."""
        raw = (
            self.x * self.x + self.y * self.y + self.z * self.z
            - self.x * self.y * self.z
        )
        return raw / max(1.0, abs(self.x * self.y * self.z))

    def seeds(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)

    def to_json(self) -> dict:
        return {"x": self.x, "y": self.y, "z": self.z}


MODULAR_POINT = TracePoint(3.0, 3.0, 3.0)


def length_of_trace(t: float) -> float:
    """Geodesic length 2*arccosh(t/2) of a curve with trace t."""
    if t < 2 + 1e-12:
        raise DomainError(f"trace {t} is not hyperbolic; invalid trace point")
    return 2.0 * math.acosh(t / 2.0)


def weight_of_trace(t: float) -> float:
    """e^(-2 length) = (t/2 + sqrt(t^2/4 - 1))^(-4)."""
    if t > 1e75:
        return 0.0  # below double-precision underflow
    half = t / 2.0
    return (half + math.sqrt(half * half - 1.0)) ** -4


def farey_parents(s: Slope) -> tuple[Slope, Slope, Slope]:
    """The two Farey parents of a non-seed slope and the opposite vertex.

    Parents r, r' satisfy s = r (+) r' (mediant) and the returned third
    slope is r (-) r', so t(s) = t(r) t(r') - t(third).
    """
    p, q = s.p, s.q
    if s in SEED_SLOPES:
        raise DomainError(f"seed slope {s} has no parents")
    if q == 1:
        if p >= 2:
            return (
                canonicalize_slope(p - 1, 1),
                canonicalize_slope(1, 0),
                canonicalize_slope(p - 2, 1),
            )
        # p <= -1: mediant of (p+1, 1) and the (-1, 0) representative.
        return (
            canonicalize_slope(p + 1, 1),
            canonicalize_slope(1, 0),
            canonicalize_slope(p + 2, 1),
        )
    v = pow(p, -1, q)
    u = (p * v - 1) // q
    return (
        canonicalize_slope(u, v),
        canonicalize_slope(p - u, q - v),
        canonicalize_slope(2 * u - p, 2 * v - q),
    )


def trace_of_slope(pt: TracePoint, s: Slope, _memo: Optional[dict] = None) -> float:
    """Trace of the slope-s curve at pt, by the Vieta recursion."""
    memo = _memo if _memo is not None else {}
    if not memo:
        memo.update(zip(SEED_SLOPES, pt.seeds()))
    if s in memo:
        return memo[s]
    stack = [s]
    while stack:
        top = stack[-1]
        if top in memo:
            stack.pop()
            continue
        r1, r2, third = farey_parents(top)
        missing = [r for r in (r1, r2, third) if r not in memo]
        if missing:
            stack.extend(missing)
        else:
            memo[top] = _next_trace(memo[r1], memo[r2], memo[third])
            stack.pop()
    return memo[s]


def length(pt: TracePoint, s: Slope) -> float:
    """Geodesic length of the slope-s curve at pt."""
    return length_of_trace(trace_of_slope(pt, s))


def pullback_point(phi: MappingClass, pt: TracePoint, tol: float = 1e-6) -> TracePoint:
    """The point phi . pt, via length(phi.pt, s) = length(pt, phi^-1 s).

    Its seed traces are the pt-traces of the phi^-1 images of the seed
    slopes; the result must satisfy the Fricke relation or the trace
    recursion is internally inconsistent.
    """
    inv = phi.inverse()
    memo: dict = {}
    seeds = tuple(trace_of_slope(pt, act_slope(inv, s), memo) for s in SEED_SLOPES)
    try:
        return TracePoint(*seeds, tol=tol)
    except DomainError as exc:
        raise DomainError(f"pullback by {phi} failed consistency: {exc}") from exc


# ---------------------------------------------------------------------------
# Farey tree enumeration with certified tail bounds
# ---------------------------------------------------------------------------


@dataclass
class _Edge:
    """Forward edge of the triangle tree: crossing (u, v) away from the
    vertex with trace t_back creates the vertex u + v."""

    u: tuple[int, int]
    v: tuple[int, int]
    tu: float
    tv: float
    tb: float
    depth: int  # depth of the vertex this edge creates


def _initial_edges(pt: TracePoint) -> list[_Edge]:
    x, y, z = pt.seeds()
    return [
        _Edge((0, 1), (-1, 0), x, y, z, 2),
        _Edge((0, 1), (1, 1), x, z, y, 2),
        _Edge((1, 0), (1, 1), y, z, x, 2),
    ]


_TRACE_SENTINEL = 1e300  # stands in for traces beyond float range
_CRUDE_MIN = 1.0 + 2.0**0.25 + 1e-9  # min edge trace for the doubling bound


def _pow4inv(x: float) -> float:
    """Sound upper bound for x^(-4), dodging float overflow."""
    if x > 1e75:
        return 1e-300
    return x**-4


def _next_trace(tu: float, tv: float, tb: float) -> float:
    """Vieta step, evaluated as (tu^2 + tv^2)/tb.

    The subtractive form tu*tv - tb cancels catastrophically when the new
    curve is short; the division form is algebraically identical on the
    cusped relation x^2 + y^2 + z^2 = xyz (the two flips c, c' of any
    triangle satisfy c + c' = ab and c c' = a^2 + b^2) and never cancels.
    A sentinel stands in once floats would overflow.
    """
    if tu > 1e150 or tv > 1e150:
        return _TRACE_SENTINEL
    return (tu * tu + tv * tv) / tb


@dataclass
class DepthRow:
    depth: int
    count: int
    increment: float
    partial_sum: float


@dataclass
class TailEnumeration:
    rows: list[DepthRow]
    slopes_by_depth: list[list[tuple[Slope, float]]]
    pruned_bound: float
    frontier_bound: float

    @property
    def tail_bound(self) -> float:
        """Certified bound on the mass missing from the deepest partial sum."""
        return self.pruned_bound + self.frontier_bound


def enumerate_tail(
    pt: TracePoint,
    max_depth: int,
    prune_tol: float = 0.0,
    collect: bool = False,
) -> TailEnumeration:
    """Per-depth e^(-2 length) increments over the Farey tree.

    Depth 1 holds the three seeds; depth d holds the 3 * 2^(d-2) new
    mediants (minus any pruned away).  With prune_tol > 0, branches are
    dropped once their certified mass bound fits in the remaining budget;
    the total spent budget is reported.  At the depth cap the remaining
    frontier is bounded the same way, so pruned_bound + frontier_bound is
    a certified bound on everything missing from the deepest partial sum.
    """
    if max_depth < 1:
        raise DomainError("max_depth must be >= 1")
    seed_rows = [(s, t) for s, t in zip(SEED_SLOPES, pt.seeds())]
    inc1 = sum(weight_of_trace(t) for _, t in seed_rows)
    rows = [DepthRow(1, 3, inc1, inc1)]
    slopes_by_depth = [[(s, t) for s, t in seed_rows]] if collect else [[]]
    pruned = 0.0
    frontier = 0.0
    level = _initial_edges(pt) if max_depth >= 2 else []
    if max_depth == 1:
        for e in _initial_edges(pt):
            b = _edge_bound(e)
            frontier = math.inf if b is None else frontier + b
            if frontier == math.inf:
                break
    expansions = 0
    for depth in range(2, max_depth + 1):
        nxt: list[_Edge] = []
        increment = 0.0
        count = 0
        collected: list[tuple[Slope, float]] = []
        for e in level:
            expansions += 1
            if expansions > _EXPANSION_CAP:
                raise DomainError("enumeration budget exhausted; raise prune_tol")
            t1 = _next_trace(e.tu, e.tv, e.tb)
            if t1 <= 2.0:
                raise DomainError(
                    f"non-hyperbolic trace {t1} reached; invalid trace point"
                )
            if prune_tol > 0.0:
                b = _edge_bound(e, t1)
                if b is not None and pruned + b <= prune_tol:
                    pruned += b
                    continue
            w = (e.u[0] + e.v[0], e.u[1] + e.v[1])
            increment += weight_of_trace(t1)
            count += 1
            if collect:
                collected.append((canonicalize_slope(*w), t1))
            if depth < max_depth:
                nxt.append(_Edge(e.u, w, e.tu, t1, e.tv, depth + 1))
                nxt.append(_Edge(w, e.v, t1, e.tv, e.tu, depth + 1))
            else:
                for child in (
                    _Edge(e.u, w, e.tu, t1, e.tv, depth + 1),
                    _Edge(w, e.v, t1, e.tv, e.tu, depth + 1),
                ):
                    b = _edge_bound(child)
                    frontier = math.inf if b is None else frontier + b
        rows.append(DepthRow(depth, count, increment, rows[-1].partial_sum + increment))
        slopes_by_depth.append(collected)
        level = nxt
    return TailEnumeration(rows, slopes_by_depth, pruned, frontier)


def _edge_bound(e: _Edge, t1: Optional[float] = None) -> Optional[float]:
    """Certified mass bound for the subtree across a forward edge, or None
    if the monotone-growth hypotheses do not hold yet.

    With edge traces alpha <= beta and next vertex t1 >= beta, every vertex
    in the subtree stays >= the subtree minimum and newest traces grow by
    at least (alpha - 1) per level.  When (alpha - 1)^4 > 2 the doubling of
    vertices per level is beaten outright.  Otherwise, if only one short
    curve is involved (alpha <= threshold < beta), the subtree is a fan
    around it: one fan vertex per level growing by (alpha - 1) > 1, each
    shedding a side subtree whose minimum edge is >= beta, and the two
    geometric series converge separately.
    """
    if t1 is None:
        t1 = _next_trace(e.tu, e.tv, e.tb)
    beta = max(e.tu, e.tv)
    alpha = min(e.tu, e.tv)
    if t1 < beta:
        return None
    head = _pow4inv(t1 - 1.0)
    ga = min(alpha - 1.0, 16.0)
    if ga**4 > 2.0000001:
        return head / (1.0 - 2.0 / ga**4)
    gb = min(beta - 1.0, 16.0)
    if alpha > 2.0 + 1e-9 and gb**4 > 2.0000001:
        side_factor = 1.0 / (1.0 - 2.0 / gb**4)
        return head * (1.0 + side_factor / gb**4) / (1.0 - 1.0 / ga**4)
    return None


def l2_tail_report(
    pt: TracePoint, max_depth: int, prune_tol: float = 1e-12
) -> dict:
    """Partial sums of sum(e^(-2 length)) by Farey depth, with the
    certified bound on the mass beyond the deepest depth."""
    if max_depth < 1:
        raise DomainError("max_depth must be >= 1")
    enum = enumerate_tail(pt, max_depth, prune_tol=prune_tol)
    rows = [
        {
            "depth": r.depth,
            "count": r.count,
            "increment": r.increment,
            "partial_sum": r.partial_sum,
        }
        for r in enum.rows
    ]
    return {
        "point": pt.to_json(),
        "max_depth": max_depth,
        "rows": rows,
        "norm_squared_truncated": enum.rows[-1].partial_sum,
        "pruned_bound": enum.pruned_bound,
        "frontier_bound": enum.frontier_bound,
        "tail_bound": enum.tail_bound,
    }


def curve_count(pt: TracePoint, max_length: float) -> int:
    """Number of slopes whose geodesic is no longer than max_length.

    Exhaustive: a branch is abandoned only when its next trace exceeds the
    cutoff and dominates both its edge traces, which forces every deeper
    trace higher still.
    """
    if max_length <= 0:
        raise DomainError("max_length must be positive")
    t_cap = 2.0 * math.cosh(max_length / 2.0)
    count = sum(1 for t in pt.seeds() if t <= t_cap)
    queue = deque(_initial_edges(pt))
    expansions = 0
    while queue:
        e = queue.popleft()
        expansions += 1
        if expansions > _EXPANSION_CAP:
            raise DomainError("curve_count budget exhausted")
        t1 = _next_trace(e.tu, e.tv, e.tb)
        if t1 <= 2.0:
            raise DomainError(f"non-hyperbolic trace {t1}; invalid trace point")
        if t1 > t_cap and t1 >= max(e.tu, e.tv):
            continue
        if t1 <= t_cap:
            count += 1
        w = (e.u[0] + e.v[0], e.u[1] + e.v[1])
        queue.append(_Edge(e.u, w, e.tu, t1, e.tv, e.depth + 1))
        queue.append(_Edge(w, e.v, t1, e.tv, e.tu, e.depth + 1))
    return count


# ---------------------------------------------------------------------------
# Length-sum inequality check
# ---------------------------------------------------------------------------

GAP_BOUND_CONTINUOUS = (2.0 - math.sqrt(3.0)) / 8.0


def slope_table(pt: TracePoint, depth: int) -> list[tuple[Slope, float]]:
    """All slopes of Farey depth <= depth with their traces, in tree order.

    The slope set and order depend only on depth, never on the point, so
    tables at different points align row by row.
    """
    enum = enumerate_tail(pt, depth, prune_tol=0.0, collect=True)
    rows: list[tuple[Slope, float]] = []
    for level in enum.slopes_by_depth:
        rows.extend(level)
    return rows


def length_table(pt: TracePoint, depth: int) -> dict[Slope, float]:
    """Truncated length spectrum: geodesic length per slope up to depth."""
    return {s: length_of_trace(t) for s, t in slope_table(pt, depth)}


def cor43_check(
    pt: TracePoint,
    phis: Sequence[MappingClass],
    depth: int,
    bound: float = GAP_BOUND_CONTINUOUS,
) -> dict:
    """Truncated check of the length-sum inequality

        max_i sum_a e^(-2 l(a)) (e^(l(a) - l_i(a)) - 1)^2 >= bound * sum_a e^(-2 l(a))

    over slopes of Farey depth <= depth, where l is the length at pt and
    l_i the length at phi_i . pt.  The right-hand tail is estimated by
    geometric extrapolation of the last three depth increments, the
    left-hand tail by (e^max|Delta| + 1)^2 times that (capped by the
    elementary (x - y)^2 <= 2(x^2 + y^2) estimate, which stays finite when
    deltas are large), and the verdict allows the truncation that much
    slack.

    The default bound (2 - sqrt(3))/8 is the constant this package can
    certify through its word-space reduction; whether a larger uniform
    constant holds is not asserted, only that this one is never violated.
    """
    if depth < 3:
        raise DomainError("depth must be >= 3 for tail extrapolation")
    if not phis:
        raise DomainError("need at least one mapping class")
    for phi in phis:
        if classify(phi) != PSEUDO_ANOSOV:
            raise DomainError(f"{phi} is not pseudo-Anosov")
    base_enum = enumerate_tail(pt, depth, prune_tol=0.0, collect=True)
    base_rows: list[tuple[Slope, float]] = []
    last_depth_start = 0
    for level in base_enum.slopes_by_depth[:-1]:
        base_rows.extend(level)
    last_depth_start = len(base_rows)
    base_rows.extend(base_enum.slopes_by_depth[-1])
    base_lengths = np.array([length_of_trace(t) for _, t in base_rows])
    base_weights = np.exp(-2.0 * base_lengths)
    rhs = float(base_weights.sum())

    results = []
    for phi in phis:
        pb = pullback_point(phi, pt)
        pb_enum = enumerate_tail(pb, depth, prune_tol=0.0, collect=True)
        pb_rows: list[tuple[Slope, float]] = []
        for level in pb_enum.slopes_by_depth:
            pb_rows.extend(level)
        if [s for s, _ in pb_rows] != [s for s, _ in base_rows]:
            raise DomainError("slope tables misaligned between points")
        # (e^(-l_phi) - e^(-l))^2 summed directly; the delta form overflows
        # once deep traces saturate double precision.
        pb_lengths = np.array([length_of_trace(t) for _, t in pb_rows])
        pb_amps = np.exp(-pb_lengths)
        base_amps = np.exp(-base_lengths)
        lhs = float(((pb_amps - base_amps) ** 2).sum())
        finite = np.minimum(base_lengths, pb_lengths)[last_depth_start:] < 600.0
        tail_deltas = (base_lengths - pb_lengths)[last_depth_start:][finite]
        max_abs_delta = float(np.abs(tail_deltas).max()) if tail_deltas.size else 0.0
        results.append(
            {
                "phi": phi.to_json(),
                "lhs": lhs,
                "max_abs_delta_last_depth": max_abs_delta,
                "pullback_tail_increment": pb_enum.rows[-1].increment,
                "pullback_tail_ratio": _geo_ratio(pb_enum.rows),
                "pullback_point": pb.to_json(),
            }
        )

    geo = _geo_ratio(base_enum.rows)
    rhs_tail = base_enum.rows[-1].increment * geo / (1.0 - geo)
    # Two upper estimates for the LHS tail: the delta-amplification form,
    # and the elementary (x - y)^2 <= 2(x^2 + y^2) form which stays finite
    # when max|delta| is large.
    overall_max_delta = max(r["max_abs_delta_last_depth"] for r in results)
    if overall_max_delta < 300.0:
        lhs_tail_delta = (math.exp(overall_max_delta) + 1.0) ** 2 * rhs_tail
    else:
        lhs_tail_delta = math.inf
    pb_tails = [
        r["pullback_tail_increment"]
        * r["pullback_tail_ratio"]
        / (1.0 - r["pullback_tail_ratio"])
        for r in results
    ]
    lhs_tail_sum = 2.0 * (rhs_tail + max(pb_tails))
    lhs_tail = min(lhs_tail_delta, lhs_tail_sum)

    best = max(results, key=lambda r: r["lhs"])
    ratio = best["lhs"] / rhs
    allowance = (bound * rhs_tail + lhs_tail) / rhs
    return {
        "point": pt.to_json(),
        "depth": depth,
        "n_slopes": len(base_rows),
        "rhs": rhs,
        "per_phi": results,
        "max_lhs": best["lhs"],
        "ratio": ratio,
        "bound": bound,
        "rhs_tail_estimate": rhs_tail,
        "lhs_tail_estimate": lhs_tail,
        "allowance": allowance,
        "passed": bool(ratio >= bound - allowance),
    }


def _geo_ratio(rows: Sequence[DepthRow]) -> float:
    """Geometric tail ratio extrapolated from the last three increments."""
    increments = [r.increment for r in rows[-3:]]
    ratios = [
        increments[i + 1] / increments[i]
        for i in range(len(increments) - 1)
        if increments[i] > 0
    ]
    return min(max(ratios, default=0.0), 0.97)


def cor43_csv_rows(
    pt: TracePoint, phi: MappingClass, depth: int
) -> list[tuple[str, float, float, float]]:
    """(slope, length at pt, length at phi.pt, difference) for plotting."""
    pb = pullback_point(phi, pt)
    base = slope_table(pt, depth)
    pulled = slope_table(pb, depth)
    out = []
    for (s, t0), (_, t1) in zip(base, pulled):
        l0 = length_of_trace(t0)
        l1 = length_of_trace(t1)
        out.append((str(s), l0, l1, l0 - l1))
    return out


# ---------------------------------------------------------------------------
# Sampling
# ---------------------------------------------------------------------------


def sample_trace_points(
    n: int,
    seed: int,
    lo: float = 2.3,
    hi: float = 6.0,
) -> list[TracePoint]:
    """Deterministic sample of points: draw (x, y) uniformly, solve the
    Fricke quadratic for z and keep the larger root; redraw while the
    discriminant is negative."""
    rng = np.random.default_rng(seed)
    points: list[TracePoint] = []
    while len(points) < n:
        x = float(rng.uniform(lo, hi))
        y = float(rng.uniform(lo, hi))
        disc = x * x * y * y - 4.0 * (x * x + y * y)
        if disc <= 0:
            continue
        z = (x * y + math.sqrt(disc)) / 2.0
        points.append(TracePoint(x, y, z, tol=1e-6))
    return points


def near_degenerate_family(
    x_values: Sequence[float] = (2.05, 2.1, 2.2, 2.4), y: float = 12.0
) -> list[TracePoint]:
    """Points with one trace pushed toward the degenerate value 2."""
    points = []
    for x in x_values:
        disc = x * x * y * y - 4.0 * (x * x + y * y)
        if disc <= 0:
            raise DomainError(f"no real solution for x={x}, y={y}")
        z = (x * y + math.sqrt(disc)) / 2.0
        points.append(TracePoint(x, y, z, tol=1e-6))
    return points
