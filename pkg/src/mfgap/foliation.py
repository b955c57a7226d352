"""The continuous side: the invariant planar measure on the foliation model
R^2 - {0}, wandering cells, greedy disjoint covers, and the reduction of
step-function displacements to the word space of a certified pair.

Cells are strictly convex rational polygons avoiding the origin; the
invariant measure is Lebesgue area, exactly computed.  A cell is wandering
for the subgroup when no short word maps it back across itself; covers
built from wandering cells decompose a compact region into pieces lying in
single word-translates, one base cell per round, exactly as a greedy
deletion procedure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import polygons as pg
from .gap import (
    ETA_CONTINUOUS,
    FinSuppVector,
)
from .projline import ProjInterval, cross, theta
from .schottky import SchottkyPair, cover_levels, require_certified
from .slopes import (
    DomainError,
    MappingClass,
    SignedMatrix,
    Word,
    canonicalize_slope,
    mul_word,
    reduced_words,
    signed_word_matrix,
    word_str,
)

Amplitude = Fraction


@dataclass(frozen=True)
class Cell:
    """Strictly convex rational polygon with positive area, origin excluded."""

    vertices: pg.Polygon

    @staticmethod
    def make(vertices) -> "Cell":
        poly = pg.make_polygon(vertices)
        if pg.contains_point(poly, (0, 0)):
            raise DomainError("cell must not contain the origin")
        return Cell(poly)

    def area(self) -> Fraction:
        return pg.area(self.vertices)

    def direction_arc(self) -> ProjInterval:
        """Smallest closed arc of RP^1 containing every direction in the cell.

        A convex cell avoiding the origin spans an arc of width below pi,
        the complement of the widest circular gap between vertex
        directions.  The gap is located with float angles, then the
        containment of every direction is re-verified exactly.
        """
        dirs = []
        for x, y in self.vertices:
            d = canonicalize_slope(x.numerator * y.denominator,
                                   y.numerator * x.denominator)
            if d not in dirs:
                dirs.append(d)
        if len(dirs) == 1:
            raise DomainError("degenerate direction arc")
        by_angle = sorted(dirs, key=theta)
        widest = -1.0
        lo = hi = None
        n = len(by_angle)
        for i in range(n):
            a = by_angle[i]
            b = by_angle[(i + 1) % n]
            gap = (theta(b) - theta(a)) % math.pi
            if gap > widest:
                widest = gap
                lo, hi = b, a
        arc = ProjInterval(lo, hi)
        for d in dirs:
            if not arc.contains(d):
                raise DomainError("direction arc selection failed")
        return arc

    def to_json(self) -> list[list[str]]:
        return [
            [f"{v[0].numerator}/{v[0].denominator}", f"{v[1].numerator}/{v[1].denominator}"]
            for v in self.vertices
        ]

    @staticmethod
    def from_json(rows) -> "Cell":
        return Cell.make([(Fraction(a), Fraction(b)) for a, b in rows])


def thurston_measure(c: Cell) -> Fraction:
    """Exact invariant (Lebesgue) area of the cell."""
    return c.area()


def act_cell(m, c: Cell) -> Cell:
    """Image cell under a MappingClass or signed (a, b, c, d) matrix; a
    det-1 integer map preserves area and orientation."""
    return Cell(pg.transform(m, c.vertices))


def _signed_letters(pair: SchottkyPair) -> list[tuple[int, str, SignedMatrix]]:
    """Signed lifts of a, a^-1, b, b^-1 (the plane action needs the sign)."""
    gens = list(pair.generators())
    return [
        (1, "a", signed_word_matrix((1,), gens)),
        (-1, "A", signed_word_matrix((-1,), gens)),
        (2, "b", signed_word_matrix((2,), gens)),
        (-2, "B", signed_word_matrix((-2,), gens)),
    ]


def _nonempty_words(max_len: int) -> list[Word]:
    return list(reduced_words(2, max_len)) if max_len >= 1 else []


def wandering_check(
    c: Cell, pair: SchottkyPair, max_len: int
) -> tuple[bool, Optional[str]]:
    """True iff no nonempty reduced word of length <= max_len maps the cell
    to overlap itself (positive-area overlap, exact)."""
    require_certified(pair)
    gens = list(pair.generators())
    for word in _nonempty_words(max_len):
        img = pg.transform(signed_word_matrix(word, gens), c.vertices)
        if pg.overlap_area(img, c.vertices) > 0:
            return False, word_str(word)
    return True, None


@dataclass
class CoverPiece:
    word: str
    cell: Cell


@dataclass
class HRelatedCover:
    """Rounds of disjoint pieces; round k pieces each lie inside one
    word-translate of the round's base cell."""

    rounds: list[list[CoverPiece]]
    base_cells: list[Cell]
    max_len: int
    pair_gens: tuple[MappingClass, MappingClass]

    def all_pieces(self) -> list[CoverPiece]:
        return [p for rnd in self.rounds for p in rnd]

    def total_area(self) -> Fraction:
        return sum((p.cell.area() for p in self.all_pieces()), Fraction(0))

    def to_json(self) -> dict:
        return {
            "max_len": self.max_len,
            "rounds": [
                [{"word": p.word, "cell": p.cell.to_json()} for p in rnd]
                for rnd in self.rounds
            ],
        }


class UncoveredRegionError(DomainError):
    def __init__(self, leftovers: list[pg.Polygon]):
        self.leftovers = leftovers
        super().__init__(
            f"cover incomplete: {len(leftovers)} leftover pieces of total area"
            f" {float(sum(pg.area(p) for p in leftovers)):.6g}"
        )


def build_h_related_cover(
    region: Sequence[Cell],
    bases: Sequence[Cell],
    pair: SchottkyPair,
    max_len: int,
    check_wandering_len: int = 0,
) -> HRelatedCover:
    """Greedy disjoint cover of the region by word-translates of the bases.

    Round k walks every translate w . U_k with |w| <= max_len; each
    translate meeting the remaining region contributes its intersection as
    pieces and the translate is deleted from the remainder.  Rounds
    proceed through the bases in the given order until nothing remains;
    leftovers raise with the uncovered polygons attached.
    """
    require_certified(pair)
    if check_wandering_len:
        for i, base in enumerate(bases):
            ok, witness = wandering_check(base, pair, check_wandering_len)
            if not ok:
                raise DomainError(f"base {i} is not wandering: word {witness}")
    gens = list(pair.generators())
    words: list[tuple[str, SignedMatrix]] = [("e", signed_word_matrix((), gens))]
    for word in _nonempty_words(max_len):
        words.append((word_str(word), signed_word_matrix(word, gens)))
    remainder: list[pg.Polygon] = [c.vertices for c in region]
    rounds: list[list[CoverPiece]] = []
    for base in bases:
        if not remainder:
            break
        this_round: list[CoverPiece] = []
        for name, m in words:
            if not remainder:
                break
            translate = pg.transform(m, base.vertices)
            hits = [pg.intersect_convex(translate, piece) for piece in remainder]
            if not any(h is not None for h in hits):
                continue
            for h in hits:
                if h is not None:
                    this_round.append(CoverPiece(word=name, cell=Cell(h)))
            new_remainder: list[pg.Polygon] = []
            for piece in remainder:
                new_remainder.extend(pg.subtract_convex(piece, translate))
            remainder = new_remainder
        rounds.append(this_round)
    if remainder:
        raise UncoveredRegionError(remainder)
    return HRelatedCover(
        rounds=rounds,
        base_cells=list(bases),
        max_len=max_len,
        pair_gens=pair.generators(),
    )


def verify_cover(cover: HRelatedCover, region: Sequence[Cell]) -> dict:
    """Exact disjointness, per-round translate membership and coverage
    checks for a built cover."""
    pieces = cover.all_pieces()
    overlaps = 0
    for i in range(len(pieces)):
        for j in range(i + 1, len(pieces)):
            if pg.overlap_area(pieces[i].cell.vertices, pieces[j].cell.vertices) > 0:
                overlaps += 1
    from .slopes import str_word

    gens = list(cover.pair_gens)
    stray = 0
    for k, rnd in enumerate(cover.rounds):
        base = cover.base_cells[k]
        for piece in rnd:
            w = str_word(piece.word)
            translate = pg.transform(signed_word_matrix(w, gens), base.vertices)
            if pg.overlap_area(piece.cell.vertices, translate) != piece.cell.area():
                stray += 1
    region_area = sum((c.area() for c in region), Fraction(0))
    piece_area = cover.total_area()
    return {
        "pieces": len(pieces),
        "rounds": len(cover.rounds),
        "pairwise_overlaps": overlaps,
        "pieces_outside_their_translate": stray,
        "area_region": str(region_area),
        "area_pieces": str(piece_area),
        "area_identity": piece_area == region_area,
        "disjoint": overlaps == 0 and stray == 0,
    }


# ---------------------------------------------------------------------------
# Step functions and the continuous displacement
# ---------------------------------------------------------------------------


@dataclass
class StepFunction:
    """Finite linear combination of indicator functions of disjoint cells."""

    pieces: list[tuple[Cell, Amplitude]]

    def __post_init__(self) -> None:
        if not self.pieces:
            raise DomainError("zero step function not allowed")
        for i in range(len(self.pieces)):
            for j in range(i + 1, len(self.pieces)):
                if (
                    pg.overlap_area(
                        self.pieces[i][0].vertices, self.pieces[j][0].vertices
                    )
                    > 0
                ):
                    raise DomainError(f"pieces {i} and {j} overlap")

    def norm2(self) -> Fraction:
        return sum(
            (amp * amp * cell.area() for cell, amp in self.pieces), Fraction(0)
        )


def step_inner_translate(g: MappingClass, f: StepFunction, h: StepFunction) -> Fraction:
    """<pi(g) f, h> = sum_{ij} f_i h_j area(g C_i ^ D_j), exact."""
    total = Fraction(0)
    for cell, amp in f.pieces:
        img = pg.transform(g, cell.vertices)
        for dcell, damp in h.pieces:
            ov = pg.overlap_area(img, dcell.vertices)
            if ov:
                total += amp * damp * ov
    return total


def step_displacement(g: MappingClass, f: StepFunction) -> Fraction:
    """||pi(g) f - f||^2 in L^2 of the plane, exact:
    2||f||^2 - 2 <pi(g) f, f> by unitarity of the area-preserving action."""
    return 2 * f.norm2() - 2 * step_inner_translate(g, f, f)


def cell_amplitudes(
    f: StepFunction,
    base: Cell,
    pair: SchottkyPair,
    max_len: int,
) -> tuple[FinSuppVector, dict[Word, Fraction]]:
    """The word-space shadow of f over translates of one base cell.

    Every piece must lie inside exactly one word-translate w . base with
    |w| <= max_len; the vector assigns the word w the square root of the
    f-mass inside that translate.  Pieces straddling translates raise.
    Returns both the float vector and the exact per-word masses.
    """
    require_certified(pair)
    gens = list(pair.generators())
    words = [((), signed_word_matrix((), gens))]
    words += [(w, signed_word_matrix(w, gens)) for w in _nonempty_words(max_len)]
    masses: dict[Word, Fraction] = {}
    for cell, amp in f.pieces:
        cell_area = cell.area()
        host: Optional[Word] = None
        for w, m in words:
            translate = pg.transform(m, base.vertices)
            ov = pg.overlap_area(translate, cell.vertices)
            if ov == 0:
                continue
            if ov == cell_area:
                host = w
                break
            raise DomainError(
                f"piece of area {cell_area} straddles translate {word_str(w)}"
                f" (overlap {ov}); refine pieces first"
            )
        if host is None:
            raise DomainError("piece lies outside every translate in budget")
        masses[host] = masses.get(host, Fraction(0)) + amp * amp * cell_area
    vec = FinSuppVector({w: math.sqrt(m) for w, m in masses.items() if m != 0})
    return vec, masses


def word_displacement_sq(letter: int, masses: dict[Word, Fraction]) -> float:
    """||pi(g) A_f - A_f||^2 on the word space, g the given letter."""
    keys = set(masses) | {mul_word(letter, w) for w in masses}
    total = 0.0
    for w in keys:
        back = mul_word(-letter, w)
        a = math.sqrt(masses.get(back, Fraction(0)))
        b = math.sqrt(masses.get(w, Fraction(0)))
        total += (a - b) ** 2
    return total


def chain_inequality_report(
    f: StepFunction,
    base: Cell,
    pair: SchottkyPair,
    max_len: int,
) -> dict:
    """Exact piecewise check of the displacement reduction to word space.

    For each letter g and each in-budget translate w . base:
        I_w = int_{wU} |pi(g) f - f|^2 >= (sqrt(A_w) - sqrt(B_w))^2,
    with A_w the pi(g)f-mass and B_w the f-mass of the translate.  The
    comparison (sqrt(A) - sqrt(B))^2 <= I is decided exactly as
    A + B - I <= 0 or (A + B - I)^2 <= 4 A B over the rationals.
    """
    require_certified(pair)
    vec, masses = cell_amplitudes(f, base, pair, max_len)
    gens = list(pair.generators())
    words = [((), signed_word_matrix((), gens))] + [
        (w, signed_word_matrix(w, gens)) for w in _nonempty_words(max_len)
    ]
    checked = 0
    failures = []
    slack_ok = True
    for letter, _, g in _signed_letters(pair):
        exact_total = step_displacement(g, f)
        word_total = word_displacement_sq(letter, masses)
        if float(exact_total) < word_total - 1e-9 * max(1.0, word_total):
            slack_ok = False
            failures.append(f"aggregate failure at letter {letter}")
        for w, m in words:
            translate = pg.transform(m, base.vertices)
            # B_w: f-mass inside the translate; A_w: pi(g)f-mass, i.e. the
            # f-mass of the g^-1-translate.
            b_mass = masses.get(w, Fraction(0))
            a_mass = masses.get(mul_word(-letter, w), Fraction(0))
            i_w = _restricted_displacement(g, f, translate)
            checked += 1
            gap = a_mass + b_mass - i_w
            if gap > 0 and gap * gap > 4 * a_mass * b_mass:
                failures.append(
                    f"piecewise failure at letter {letter}, word {word_str(w)}"
                )
    return {
        "translates_checked": checked,
        "piecewise_failures": failures,
        "aggregate_ok": slack_ok,
        "ok": slack_ok and not failures,
    }


def _restricted_displacement(
    g: MappingClass, f: StepFunction, window: pg.Polygon
) -> Fraction:
    """int over the window of |pi(g) f - f|^2, exact."""
    total = Fraction(0)
    # |pi(g)f|^2 and |f|^2 terms inside the window.
    for cell, amp in f.pieces:
        img = pg.transform(g, cell.vertices)
        ov = pg.overlap_area(img, window)
        if ov:
            total += amp * amp * ov
        ov2 = pg.overlap_area(cell.vertices, window)
        if ov2:
            total += amp * amp * ov2
    # cross terms -2 f(g^-1 x) f(x) restricted to the window.
    for cell, amp in f.pieces:
        img = pg.transform(g, cell.vertices)
        for dcell, damp in f.pieces:
            inter = pg.intersect_convex(img, dcell.vertices)
            if inter is None:
                continue
            ov = pg.overlap_area(inter, window)
            if ov:
                total -= 2 * amp * damp * ov
    return total


def continuous_gap_check(
    f: StepFunction,
    pair: SchottkyPair,
    eta: float = ETA_CONTINUOUS,
    base: Optional[Cell] = None,
    max_len: int = 0,
) -> dict:
    """max over K' of the exact displacement ratio, checked against eta.

    When the supporting base cell is supplied (f living on its word
    translates), the piecewise reduction inequality to the word space is
    verified as well and included in the result.
    """
    require_certified(pair)
    norm2 = f.norm2()
    disps = {}
    for _, name, g in _signed_letters(pair):
        disps[name] = step_displacement(g, f)
    best = max(disps.values())
    ratio = float(best / norm2)
    result = {
        "norm2": str(norm2),
        "displacements": {k: str(v) for k, v in disps.items()},
        "ratio": ratio,
        "eta": eta,
        "passed": bool(ratio >= eta - 1e-12),
    }
    if base is not None:
        chain = chain_inequality_report(f, base, pair, max_len)
        result["chain"] = chain
        result["passed"] = bool(result["passed"] and chain["ok"])
    return result


def limit_cone_mass(
    pair: SchottkyPair,
    annulus: tuple[Fraction, Fraction],
    depth: int,
) -> float:
    """Lebesgue mass of the annulus portion of the cone over the depth-d
    limit-set cover: (r_out^2 - r_in^2) * total angular measure."""
    r_in, r_out = Fraction(annulus[0]), Fraction(annulus[1])
    if not (0 < r_in < r_out):
        raise DomainError("need 0 < r_in < r_out")
    cover = cover_levels(pair, depth)[-1]
    return float(r_out * r_out - r_in * r_in) * math.pi * cover.total_length


# ---------------------------------------------------------------------------
# Geometry generators: gap sectors and seeded random regions
# ---------------------------------------------------------------------------


def depth_one_gaps(pair: SchottkyPair) -> list[ProjInterval]:
    """The four arcs of RP^1 between consecutive ping-pong intervals."""
    ivs = [pair.ia_plus, pair.ia_minus, pair.ib_plus, pair.ib_minus]
    order = sorted(range(4), key=lambda i: theta(ivs[i].lo))
    gaps = []
    for k in range(4):
        cur = ivs[order[k]]
        nxt = ivs[order[(k + 1) % 4]]
        gaps.append(ProjInterval(cur.hi, nxt.lo))
    return gaps


def sector_cell(
    arc: ProjInterval, r_in: Fraction, r_out: Fraction, shrink: Fraction = Fraction(1, 100)
) -> Cell:
    """Convex quadrilateral inside the cone over the (slightly shrunken)
    arc, radially between r_in and r_out."""
    lo = (Fraction(arc.lo.p), Fraction(arc.lo.q))
    hi = (Fraction(arc.hi.p), Fraction(arc.hi.q))
    if cross(arc.lo, arc.hi) < 0:
        # The arc wraps past theta = pi; flip the hi representative so the
        # planar segment between the two vectors sweeps the correct side.
        hi = (-hi[0], -hi[1])
    # Shrink the endpoint directions toward each other to stay strictly
    # inside the open arc.
    lo_dir = (lo[0] + shrink * (hi[0] - lo[0]), lo[1] + shrink * (hi[1] - lo[1]))
    hi_dir = (hi[0] + shrink * (lo[0] - hi[0]), hi[1] + shrink * (lo[1] - hi[1]))

    def _unitish(v):
        scale = Fraction(1) / max(abs(v[0]), abs(v[1]))
        return (v[0] * scale, v[1] * scale)

    lo_dir = _unitish(lo_dir)
    hi_dir = _unitish(hi_dir)
    return Cell.make(
        [
            (r_in * lo_dir[0], r_in * lo_dir[1]),
            (r_out * lo_dir[0], r_out * lo_dir[1]),
            (r_out * hi_dir[0], r_out * hi_dir[1]),
            (r_in * hi_dir[0], r_in * hi_dir[1]),
        ]
    )


def default_cover_bases(
    pair: SchottkyPair,
    r_in: Fraction = Fraction(1, 100),
    r_out: Fraction = Fraction(100),
    r_split: tuple[Fraction, Fraction] = (Fraction(3), Fraction(5)),
) -> list[Cell]:
    """Wandering sector cells over the four depth-1 gaps, two overlapping
    radial bands per gap.

    Any word translate of a gap sector has directions inside the cover
    interval of the word's first letter, hence disjoint from the gap; all
    translates of all sectors over one gap share its cone only at the same
    word, so the greedy rounds stay disjoint while the band overlap forces
    genuine cutting between rounds.
    """
    bases: list[Cell] = []
    for gap in depth_one_gaps(pair):
        bases.append(sector_cell(gap, r_in, r_split[1]))
        bases.append(sector_cell(gap, r_split[0], r_out))
    return bases


def full_range_sectors(
    pair: SchottkyPair,
    r_in: Fraction = Fraction(1, 100),
    r_out: Fraction = Fraction(100),
) -> list[Cell]:
    """One full-radial-range sector per depth-1 gap (hosts for sampling)."""
    return [sector_cell(gap, r_in, r_out) for gap in depth_one_gaps(pair)]


def sample_step_functions(
    pair: SchottkyPair,
    n_samples: int,
    seed: int,
    word_len: int = 2,
) -> list[StepFunction]:
    """Seeded step functions supported on word-translates of the gap
    sectors: a third scatter random amplitudes over unrelated translates,
    a third push one random polygon around an orbit patch so translates
    genuinely exchange mass under the generators, and a third put random
    amplitudes on the pieces of a freshly built greedy cover."""
    import numpy as np

    gens = list(pair.generators())
    sectors = full_range_sectors(pair)
    bases = default_cover_bases(pair)
    words = [()] + _nonempty_words(word_len)
    rng = np.random.default_rng(seed)
    out: list[StepFunction] = []
    while len(out) < n_samples:
        mode = int(rng.integers(0, 3))
        pieces: list[tuple[Cell, Fraction]] = []
        if mode == 2:
            region = sample_regions(pair, 1, int(rng.integers(0, 2**31)))[0]
            cover = build_h_related_cover(region, bases, pair, max_len=word_len + 1)
            for piece in cover.all_pieces():
                amp = Fraction(int(rng.integers(-40, 40)), 8)
                if amp:
                    pieces.append((piece.cell, amp))
            if pieces:
                out.append(StepFunction(pieces))
            continue
        if mode == 0:
            n_pieces = int(rng.integers(2, 9))
            chosen = rng.choice(len(words), size=n_pieces, replace=False)
            sector = sectors[int(rng.integers(0, len(sectors)))]
            for wi in chosen:
                m = signed_word_matrix(words[int(wi)], gens)
                host = act_cell(m, sector)
                pts = [_random_point_in(host, rng) for _ in range(5)]
                hull = pg.convex_hull(pts)
                if hull is None:
                    continue
                amp = Fraction(int(rng.integers(-40, 40)), 8)
                if amp:
                    pieces.append((Cell(hull), amp))
        else:
            sector = sectors[int(rng.integers(0, len(sectors)))]
            pts = [_random_point_in(sector, rng) for _ in range(5)]
            hull = pg.convex_hull(pts)
            if hull is None:
                continue
            patch = Cell(hull)
            n_words = int(rng.integers(2, min(9, len(words) + 1)))
            chosen = rng.choice(len(words), size=n_words, replace=False)
            for wi in chosen:
                amp = Fraction(int(rng.integers(-40, 40)), 8)
                if amp:
                    m = signed_word_matrix(words[int(wi)], gens)
                    pieces.append((act_cell(m, patch), amp))
        if pieces:
            out.append(StepFunction(pieces))
    return out


def _random_point_in(cell: Cell, rng) -> tuple[Fraction, Fraction]:
    """Rational point strictly inside a cell: positive random rational
    convex combination of the vertices."""
    weights = [Fraction(int(w), 1) for w in rng.integers(1, 64, len(cell.vertices))]
    total = sum(weights)
    x = sum(w * v[0] for w, v in zip(weights, cell.vertices)) / total
    y = sum(w * v[1] for w, v in zip(weights, cell.vertices)) / total
    return (x, y)


def sample_regions(
    pair: SchottkyPair,
    n_regions: int,
    seed: int,
    word_len: int = 2,
    polys_per_region: tuple[int, int] = (1, 3),
    points_per_poly: tuple[int, int] = (3, 7),
) -> list[list[Cell]]:
    """Seeded random compact regions avoiding the depth word_len + 1 limit
    cone: each polygon is a convex hull of rational points inside one
    translate w . sector (|w| <= word_len) of a full gap sector, so its
    directions stay inside the deep gaps of the limit-set cover."""
    import numpy as np

    gens = list(pair.generators())
    bands: list[tuple[Cell, Cell]] = []
    gaps = depth_one_gaps(pair)
    lows = [sector_cell(g, Fraction(1, 100), Fraction(5)) for g in gaps]
    highs = [sector_cell(g, Fraction(3), Fraction(100)) for g in gaps]
    for lo_cell, hi_cell in zip(lows, highs):
        bands.append((lo_cell, hi_cell))
        for w in _nonempty_words(word_len):
            m = signed_word_matrix(w, gens)
            bands.append((act_cell(m, lo_cell), act_cell(m, hi_cell)))
    rng = np.random.default_rng(seed)
    regions: list[list[Cell]] = []
    for _ in range(n_regions):
        cells: list[Cell] = []
        n_polys = int(rng.integers(polys_per_region[0], polys_per_region[1] + 1))
        attempts = 0
        while len(cells) < n_polys:
            attempts += 1
            if attempts > 1000:
                raise DomainError("region sampling stalled; loosen parameters")
            lo_host, hi_host = bands[int(rng.integers(0, len(bands)))]
            mode = int(rng.integers(0, 3))  # low band, high band, or straddling
            n_pts = int(rng.integers(points_per_poly[0], points_per_poly[1] + 1))
            pts = []
            for k in range(n_pts):
                if mode == 2:
                    host = lo_host if k % 2 == 0 else hi_host
                else:
                    host = lo_host if mode == 0 else hi_host
                pts.append(_random_point_in(host, rng))
            hull = pg.convex_hull(pts)
            if hull is None:
                continue
            candidate = Cell(hull)
            if any(
                pg.overlap_area(candidate.vertices, c.vertices) > 0 for c in cells
            ):
                continue
            cells.append(candidate)
        regions.append(cells)
    return regions
