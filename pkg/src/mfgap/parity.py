"""Index-2 coset parity decomposition over the slope orbit.

The stabilizer of the vertical slope in PSL(2, Z) is the cyclic group
generated by the unit shear T; inside it sits the index-2 subgroup of even
shear powers.  Cosets of the even-shear subgroup are labeled by a slope
together with a parity bit: the slope records the T-coset, the bit which
of its two even-shear cosets.  Right multiplication by T flips the bit and
commutes with the left action, giving an involution whose +-/-- eigenspaces
split l2 of the coset space into two invariant pieces, each a copy of l2
of the slope orbit.  Everything here is exact integer or rational
arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .slopes import (
    DomainError,
    MappingClass,
    Slope,
    T_TWIST,
    act_slope,
    canonicalize_slope,
)

SLOPE_INF = canonicalize_slope(1, 0)


def section(s: Slope) -> MappingClass:
    """Canonical matrix sending the vertical slope 1/0 to s.

    First column is (p, q); the second column is the Bezout pair with
    0 <= r < |p| (for the slope 0/1 the matrix is the standard rotation
    representative).  Fixing the section once makes the parity bit a
    function of the group element.
    """
    p, q = s.p, s.q
    if q == 0:
        return MappingClass(1, 0, 0, 1)
    if p == 0:
        return MappingClass(0, -1, 1, 0)
    # solve p*s - q*r = 1 with 0 <= r < |p|
    r = (-pow(q, -1, abs(p))) % abs(p)
    ss = (1 + q * r) // p
    return MappingClass(p, r, q, ss)


@dataclass(frozen=True, order=True)
class CosetKey:
    """Even-shear coset: the slope g(1/0) plus the shear parity of g."""

    slope: Slope
    parity: int

    def __str__(self) -> str:
        return f"{self.slope}:{self.parity}"


def _shear_exponent(m: MappingClass) -> int:
    """For m = +-T^n, the exponent n; raises otherwise."""
    if m.c != 0 or abs(m.a) != 1 or m.a != m.d:
        raise DomainError(f"{m} is not a shear power")
    return m.b * m.a


def coset_key(g: MappingClass) -> CosetKey:
    """The even-shear coset of g: slope g(1/0), parity of the leftover shear."""
    s = act_slope(g, SLOPE_INF)
    leftover = section(s).inverse() * g
    return CosetKey(slope=s, parity=_shear_exponent(leftover) % 2)


def act_coset(m: MappingClass, k: CosetKey) -> CosetKey:
    """Left action on cosets: transport the section and track the shear."""
    g = section(k.slope) * (T_TWIST if k.parity else MappingClass(1, 0, 0, 1))
    return coset_key(m * g)


def inversion(k: CosetKey) -> CosetKey:
    """Right multiplication by the odd shear: flips parity, fixes the slope.

    An involution commuting with the left action.
    """
    return CosetKey(slope=k.slope, parity=1 - k.parity)


class ParityVector:
    """Finitely supported rational/complex function on coset keys.

    Unlike the gap-engine vectors, the zero vector is allowed: projections
    of nonzero vectors may vanish.
    """

    __slots__ = ("entries",)

    def __init__(self, entries: Mapping):
        self.entries = {k: v for k, v in entries.items() if v != 0}

    def __eq__(self, other) -> bool:
        return isinstance(other, ParityVector) and self.entries == other.entries

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, key):
        return self.entries.get(key, 0)

    def support(self):
        return set(self.entries)

    def inner(self, other: "ParityVector"):
        total = 0
        for k, v in self.entries.items():
            w = other.entries.get(k)
            if w is not None:
                total += v * (w.conjugate() if isinstance(w, complex) else w)
        return total

    def norm2(self):
        return sum(
            (v.real * v.real + v.imag * v.imag) if isinstance(v, complex) else v * v
            for v in self.entries.values()
        )


def translate_parity(m: MappingClass, f: ParityVector) -> ParityVector:
    """pi(m) f: relabel keys by the left action."""
    return ParityVector({act_coset(m, k): v for k, v in f.entries.items()})


def invert_vector(f: ParityVector) -> ParityVector:
    return ParityVector({inversion(k): v for k, v in f.entries.items()})


def _halve(v):
    if isinstance(v, (int, Fraction)):
        return Fraction(v, 2)
    return v / 2


def project_even(f: ParityVector) -> ParityVector:
    """(f + f o inversion) / 2."""
    out: dict = {}
    for k, v in f.entries.items():
        out[k] = out.get(k, 0) + _halve(v)
        ik = inversion(k)
        out[ik] = out.get(ik, 0) + _halve(v)
    return ParityVector(out)


def project_odd(f: ParityVector) -> ParityVector:
    """(f - f o inversion) / 2."""
    out: dict = {}
    for k, v in f.entries.items():
        out[k] = out.get(k, 0) + _halve(v)
        ik = inversion(k)
        out[ik] = out.get(ik, 0) - _halve(v)
    return ParityVector(out)


def pushforward(f: ParityVector) -> dict[Slope, object]:
    """Sum over parity fibers: the equivariant 2-to-1 transfer to the
    slope orbit."""
    out: dict[Slope, object] = {}
    for k, v in f.entries.items():
        out[k.slope] = out.get(k.slope, 0) + v
    return {s: v for s, v in out.items() if v != 0}


def coset_ball(gens: Sequence[MappingClass], radius: int) -> list[CosetKey]:
    """All cosets reachable from the identity coset by words of length
    <= radius in gens and inverses, sorted for determinism."""
    if radius < 0:
        raise DomainError("radius must be >= 0")
    steps = list(gens) + [g.inverse() for g in gens]
    base = CosetKey(slope=SLOPE_INF, parity=0)
    seen = {base}
    frontier = [base]
    for _ in range(radius):
        nxt = []
        for k in frontier:
            for g in steps:
                img = act_coset(g, k)
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    return sorted(seen)


def decomposition_report(
    gens: Sequence[MappingClass],
    radius: int,
    samples: int,
    seed: int,
) -> dict:
    """Exact verification of the parity decomposition on a coset ball.

    Checks, for vectors supported on the inner ball (radius - 1):
      (a) the action of each generator commutes with both projections,
      (b) the parity-forgetting pushforward intertwines the actions,
      (c) both parities over every inner-ball slope lie in the ball
          (the truncated 2-to-1 structure).
    Boundary-supported vectors are truncation artifacts and are rejected
    by the harness rather than tolerated.

    Finite truncations can exhibit the intertwiner but cannot certify
    unitary equivalence of the infinite representations; this report
    states the intertwiner checks only.
    """
    import numpy as np

    if radius < 1:
        raise DomainError("radius must be >= 1")
    if samples < 1:
        raise DomainError("samples must be >= 1")
    ball = coset_ball(gens, radius)
    inner = coset_ball(gens, radius - 1)
    ball_set = set(ball)
    pair_complete = sum(
        1 for k in inner if inversion(k) in ball_set
    )
    slopes_inner = sorted({k.slope for k in inner})
    rng = np.random.default_rng(seed)
    violations = {"projector_algebra": 0, "commutation": 0, "intertwine": 0}
    for _ in range(samples):
        size = int(rng.integers(1, min(9, len(inner)) + 1))
        idxs = rng.choice(len(inner), size=size, replace=False)
        f = ParityVector(
            {
                inner[i]: Fraction(int(a), 16)
                for i, a in zip(idxs, rng.integers(-64, 64, size))
            }
        )
        even, odd = project_even(f), project_odd(f)
        # P+ + P- = id, P+ P- = 0, idempotence, orthogonality: exact.
        s = ParityVector(
            {
                k: even[k] + odd[k]
                for k in even.support() | odd.support()
            }
        )
        if s != f or project_even(even) != even or project_odd(even) != ParityVector({}):
            violations["projector_algebra"] += 1
        if even.inner(odd) != 0:
            violations["projector_algebra"] += 1
        for g in gens:
            if translate_parity(g, even) != project_even(translate_parity(g, f)):
                violations["commutation"] += 1
            if translate_parity(g, odd) != project_odd(translate_parity(g, f)):
                violations["commutation"] += 1
            lhs = pushforward(translate_parity(g, f))
            rhs = {
                act_slope(g, s2): v for s2, v in pushforward(f).items()
            }
            if lhs != rhs:
                violations["intertwine"] += 1
    return {
        "radius": radius,
        "samples": samples,
        "ball_size": len(ball),
        "inner_ball_size": len(inner),
        "inner_slopes": len(slopes_inner),
        "parity_pairs_complete_in_ball": pair_complete,
        "two_to_one_on_inner": pair_complete == len(inner),
        "violations": violations,
        "passed": bool(
            pair_complete == len(inner) and not any(violations.values())
        ),
    }


def reject_boundary_vector(
    f: ParityVector, gens: Sequence[MappingClass], radius: int
) -> None:
    """Raise when f touches the boundary shell of the radius ball."""
    inner = set(coset_ball(gens, radius - 1))
    bad = [k for k in f.support() if k not in inner]
    if bad:
        raise DomainError(
            f"vector touches the truncation boundary at {bad[0]};"
            " shrink the support or grow the ball"
        )
