"""Exact integer model of simple closed curves on the rank-one surfaces.

Isotopy classes of essential simple closed curves are primitive integer
directions (p, q) up to sign, and the mapping class group acts through
PSL(2, Z) by integer linear maps.  Everything in this module is exact:
arbitrary-precision integers only, no floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence


class DomainError(ValueError):
    """Raised when an operation is applied outside its domain."""


@dataclass(frozen=True, order=True)
class Slope:
    """Primitive direction (p, q) with q > 0, or (1, 0) for the vertical.

    Order/lexicographic comparisons sort on (q, p) so that reports are
    reproducible.
    """

    q: int
    p: int

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"

    def as_pair(self) -> tuple[int, int]:
        return (self.p, self.q)

    @staticmethod
    def parse(text: str) -> "Slope":
        num, _, den = text.partition("/")
        return canonicalize_slope(int(num), int(den if den else "1"))


def canonicalize_slope(p: int, q: int) -> Slope:
    """Unique canonical primitive representative of the class of (p, q).

    Sign convention: q > 0, with the tie q == 0 resolved to (1, 0).
    """
    if p == 0 and q == 0:
        raise DomainError("zero vector has no projective class")
    g = math.gcd(p, q)
    p, q = p // g, q // g
    if q < 0 or (q == 0 and p < 0):
        p, q = -p, -q
    return Slope(q=q, p=p)


SLOPE_INF = Slope(q=0, p=1)


@dataclass(frozen=True)
class MappingClass:
    """Element of PSL(2, Z): integer matrix [[a, b], [c, d]], det 1.

    The projective sign is normalized so the first nonzero entry of
    (a, b, c, d) is positive; -I and I coincide.
    """

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        if self.a * self.d - self.b * self.c != 1:
            raise DomainError(
                f"determinant must be 1, got {self.a * self.d - self.b * self.c}"
            )
        for entry in (self.a, self.b, self.c, self.d):
            if entry != 0:
                if entry < 0:
                    object.__setattr__(self, "a", -self.a)
                    object.__setattr__(self, "b", -self.b)
                    object.__setattr__(self, "c", -self.c)
                    object.__setattr__(self, "d", -self.d)
                break

    def __mul__(self, other: "MappingClass") -> "MappingClass":
        return MappingClass(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "MappingClass":
        return MappingClass(self.d, -self.b, -self.c, self.a)

    def trace_abs(self) -> int:
        """|trace|, the projective invariant."""
        return abs(self.a + self.d)

    def is_identity(self) -> bool:
        return self.a == 1 and self.b == 0 and self.c == 0 and self.d == 1

    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def to_json(self) -> list[list[str]]:
        return [[str(self.a), str(self.b)], [str(self.c), str(self.d)]]

    @staticmethod
    def from_json(rows: Sequence[Sequence[str]]) -> "MappingClass":
        return MappingClass(
            int(rows[0][0]), int(rows[0][1]), int(rows[1][0]), int(rows[1][1])
        )

    def __str__(self) -> str:
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


IDENTITY = MappingClass(1, 0, 0, 1)
T_TWIST = MappingClass(1, 1, 0, 1)
S_ROTATE = MappingClass(0, -1, 1, 0)

FINITE_ORDER = "finite_order"
REDUCIBLE = "reducible"
PSEUDO_ANOSOV = "pseudo_anosov"


def act_slope(m: MappingClass, s: Slope) -> Slope:
    """Left action m.(p, q) followed by canonicalization."""
    return canonicalize_slope(m.a * s.p + m.b * s.q, m.c * s.p + m.d * s.q)


def classify(m: MappingClass) -> str:
    """Nielsen-Thurston type from |trace|: <2 elliptic, =2 parabolic, >2 hyperbolic."""
    t = m.trace_abs()
    if t < 2:
        return FINITE_ORDER
    if t == 2:
        return REDUCIBLE
    return PSEUDO_ANOSOV


@dataclass(frozen=True)
class WeightedSlope:
    """Multicurve with a single component: positive weight times a slope."""

    weight_num: int
    weight_den: int
    slope: Slope

    def __post_init__(self) -> None:
        if self.weight_num <= 0 or self.weight_den <= 0:
            raise DomainError("weight must be positive")


def act_weighted(m: MappingClass, ws: WeightedSlope) -> WeightedSlope:
    return WeightedSlope(ws.weight_num, ws.weight_den, act_slope(m, ws.slope))


@dataclass(frozen=True)
class FoliationPoint:
    """Nonzero point of the plane model of the measured foliation space.

    Coordinates are transverse measures; the projective class is a Slope.
    Note that u and v may be any exact rationals or floats, and the two
    signed lifts of a projective matrix move the point differently.
    """

    u: object
    v: object

    def __post_init__(self) -> None:
        if self.u == 0 and self.v == 0:
            raise DomainError("the zero foliation is excluded")

    def direction(self) -> Slope:
        from fractions import Fraction

        uf, vf = Fraction(self.u), Fraction(self.v)
        return canonicalize_slope(
            uf.numerator * vf.denominator, vf.numerator * uf.denominator
        )


def act_point(m, pt: FoliationPoint) -> FoliationPoint:
    """Linear action on the plane by a MappingClass or signed matrix."""
    if isinstance(m, MappingClass):
        a, b, c, d = m.a, m.b, m.c, m.d
    else:
        a, b, c, d = m
    return FoliationPoint(a * pt.u + b * pt.v, c * pt.u + d * pt.v)


# ---------------------------------------------------------------------------
# Free-group words over a generating set
# ---------------------------------------------------------------------------
# A word is a tuple of nonzero ints: letter k > 0 means gens[k-1], letter
# -k means its inverse.  Words are always reduced (no letter followed by
# its negative).

Word = tuple[int, ...]


def word_matrix(word: Word, gens: Sequence[MappingClass]) -> MappingClass:
    m = IDENTITY
    for letter in word:
        g = gens[letter - 1] if letter > 0 else gens[-letter - 1].inverse()
        m = m * g
    return m


SignedMatrix = tuple[int, int, int, int]


def signed_word_matrix(word: Word, gens: Sequence[MappingClass]) -> SignedMatrix:
    """Word as an honest SL(2, Z) matrix, no projective sign normalization.

    The plane action distinguishes M from -M, so compositions acting on
    planar cells must fix signed lifts of the generators: letter k uses the
    stored representative, letter -k its exact matrix inverse.  A free
    group of mapping classes lifts isomorphically (a word equal to -I
    would be trivial projectively, hence trivial, hence I).
    """
    a, b, c, d = 1, 0, 0, 1
    for letter in word:
        g = gens[abs(letter) - 1]
        if letter > 0:
            e, f, gg, h = g.a, g.b, g.c, g.d
        else:
            e, f, gg, h = g.d, -g.b, -g.c, g.a
        a, b, c, d = a * e + b * gg, a * f + b * h, c * e + d * gg, c * f + d * h
    return (a, b, c, d)


def word_str(word: Word, names: str = "ab") -> str:
    out = []
    for letter in word:
        name = names[abs(letter) - 1]
        out.append(name if letter > 0 else name.upper())
    return "".join(out) if out else "e"


def str_word(text: str, names: str = "ab") -> Word:
    if text == "e":
        return ()
    letters = []
    for ch in text:
        idx = names.index(ch.lower()) + 1
        letters.append(idx if ch.islower() else -idx)
    return tuple(letters)


def reduced_words(n_gens: int, max_len: int, min_len: int = 1) -> Iterator[Word]:
    """All reduced words of length min_len..max_len, in length-then-lex order."""
    letters = [k for k in range(1, n_gens + 1)] + [-k for k in range(1, n_gens + 1)]
    frontier: list[Word] = [()]
    for length in range(1, max_len + 1):
        nxt = []
        for w in frontier:
            for letter in letters:
                if w and w[-1] == -letter:
                    continue
                nxt.append(w + (letter,))
        frontier = nxt
        if length >= min_len:
            yield from frontier


def is_cyclically_reduced(word: Word) -> bool:
    return not word or word[0] != -word[-1]


def mul_word(g: int, word: Word) -> Word:
    """Left-multiply a reduced word by a letter, reducing."""
    if word and word[0] == -g:
        return word[1:]
    return (g,) + word


class OrbitBall:
    """Finite truncation of a slope orbit: all images of a base slope under
    words of length <= radius in gens union inverses.

    Points are stored sorted lexicographically on (q, p); `index` inverts
    the ordering.
    """

    def __init__(self, base: Slope, gens: Sequence[MappingClass], radius: int):
        if radius < 0:
            raise DomainError("radius must be >= 0")
        self.base = base
        self.gens = list(gens)
        self.radius = radius
        steps = [g for g in self.gens] + [g.inverse() for g in self.gens]
        seen = {base}
        frontier = [base]
        for _ in range(radius):
            nxt = []
            for s in frontier:
                for g in steps:
                    img = act_slope(g, s)
                    if img not in seen:
                        seen.add(img)
                        nxt.append(img)
            frontier = nxt
        self.points: list[Slope] = sorted(seen)
        self.index: dict[Slope, int] = {s: i for i, s in enumerate(self.points)}

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, s: Slope) -> bool:
        return s in self.index


def orbit_ball(base: Slope, gens: Sequence[MappingClass], radius: int) -> list[Slope]:
    """Deduplicated, (q, p)-sorted list of slopes reachable within `radius`."""
    return OrbitBall(base, gens, radius).points


def stabilizer_scan(
    s: Slope, gens: Sequence[MappingClass], max_len: int
) -> list[Word]:
    """Every reduced nonempty word of length <= max_len fixing s.

    An empty result certifies that the stabilizer is trivial up to that
    word length.
    """
    if max_len < 1:
        raise DomainError("max_len must be >= 1")
    found = []
    for word in reduced_words(len(gens), max_len):
        if act_slope(word_matrix(word, gens), s) == s:
            found.append(word)
    return found
