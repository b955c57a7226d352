"""Spectral-gap certification for the unitary action on l2 of a slope orbit.

The engine rests on one constant: for the left regular representation of
the rank-2 free group with K = {a, a^-1, b, b^-1},

    sum_{s in K} ||lambda(s)f - f||^2 = 8||f||^2 - 2<(sum_s lambda(s))f, f>
                                     >= (8 - 4*sqrt(3))||f||^2,

because the averaged adjacency operator of the 4-regular tree has norm
sqrt(3)/2 (Kesten).  Hence max_{s in K} ||lambda(s)f - f||^2 >=
(2 - sqrt(3))||f||^2 on every orbit where the group acts freely, and the
certification harness checks the pigeonhole form (2 - sqrt(3))/4 from the
2-tree decomposition, which is what survives arbitrary finite supports.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional, Sequence

import numpy as np

from .schottky import SchottkyPair, require_certified
from .slopes import (
    DomainError,
    MappingClass,
    OrbitBall,
    Slope,
    Word,
    act_slope,
    mul_word,
    word_str,
)

EPSILON_FREE = 2.0 - math.sqrt(3.0)
KESTEN_NORM = math.sqrt(3.0) / 2.0
K_NAMES = ("a", "A", "b", "B")
ETA_DISCRETE = EPSILON_FREE / 4.0
ETA_CONTINUOUS = EPSILON_FREE / 8.0


def _abs2(v) -> object:
    if isinstance(v, complex):
        return v.real * v.real + v.imag * v.imag
    return v * v


class FinSuppVector:
    """Finitely supported amplitude function on orbit points.

    Zero amplitudes are never stored; the zero vector is rejected because
    every consumer divides by its norm.
    """

    __slots__ = ("entries",)

    def __init__(self, entries: Mapping):
        self.entries = {k: v for k, v in entries.items() if v != 0}
        if not self.entries:
            raise DomainError("zero vector not allowed")

    def norm2(self):
        return sum(_abs2(v) for v in self.entries.values())

    def support(self):
        return set(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, key):
        return self.entries.get(key, 0)

    def inner(self, other: "FinSuppVector"):
        total = 0
        for k, v in self.entries.items():
            w = other.entries.get(k)
            if w is not None:
                total += v * (w.conjugate() if isinstance(w, complex) else w)
        return total


def translate(g: MappingClass, f: FinSuppVector, act: Callable = act_slope) -> FinSuppVector:
    """pi(g) f, i.e. x -> f(g^-1 x); as a dict relabeling x -> g x."""
    return FinSuppVector({act(g, k): v for k, v in f.entries.items()})


def displacement(g: MappingClass, f: FinSuppVector, act: Callable = act_slope):
    """||pi(g) f - f||^2, exact for rational amplitudes."""
    moved = {act(g, k): v for k, v in f.entries.items()}
    total = 0
    for k in set(moved) | set(f.entries):
        total += _abs2(moved.get(k, 0) - f.entries.get(k, 0))
    return total


def displacement_restricted(
    g: MappingClass, f: FinSuppVector, subset, act: Callable = act_slope
):
    """sum over x in subset of |f(g^-1 x) - f(x)|^2."""
    ginv = g.inverse()
    total = 0
    for x in subset:
        total += _abs2(f[act(ginv, x)] - f[x])
    return total


# ---------------------------------------------------------------------------
# 2-trees and orbit decomposition
# ---------------------------------------------------------------------------


@dataclass
class TwoTree:
    """Image of the word ball under the orbit map at a trivial-stabilizer
    point; word -> point is injective on the explored ball."""

    base: object
    members: dict  # Word -> orbit point
    radius: int


def build_two_tree(
    base,
    gens: Sequence[MappingClass],
    radius: int,
    act: Callable = act_slope,
) -> TwoTree:
    """BFS the orbit of `base` over reduced words of length <= radius.

    A revisit of an already-reached point certifies a nontrivial stabilizer
    element (the two reduced words differ) and raises.
    """
    letters: list[tuple[int, MappingClass]] = []
    for i, g in enumerate(gens):
        letters.append((i + 1, g))
        letters.append((-(i + 1), g.inverse()))
    members: dict = {(): base}
    seen = {base: ()}
    frontier: list[tuple[Word, object]] = [((), base)]
    for _ in range(radius):
        nxt: list[tuple[Word, object]] = []
        for word, point in frontier:
            for letter, g in letters:
                if word and word[0] == -letter:
                    continue
                new_word = (letter,) + word
                img = act(g, point)
                if img in seen:
                    raise DomainError(
                        f"stabilizer violation: words {word_str(new_word)} and"
                        f" {word_str(seen[img])} reach the same point {img}"
                    )
                seen[img] = new_word
                members[new_word] = img
                nxt.append((new_word, img))
        frontier = nxt
    return TwoTree(base=base, members=members, radius=radius)


def decompose_into_two_trees(
    f: FinSuppVector,
    pair: SchottkyPair,
    max_word_len: int,
    act: Callable = act_slope,
) -> list[tuple[TwoTree, FinSuppVector]]:
    """Partition the support of f into orbit classes of the certified pair.

    Each class is certified connected (every member reached from the base
    within the word budget).  If two class balls meet, the classes were
    actually one orbit beyond budget, and an explicit undetermined-pair
    error names the two base points rather than merging silently.
    """
    require_certified(pair)
    if max_word_len < 1:
        raise DomainError("max_word_len must be >= 1")
    gens = list(pair.generators())
    remaining = sorted(f.entries)
    classes: list[tuple[TwoTree, FinSuppVector]] = []
    balls: list[tuple[object, set]] = []
    for key in list(remaining):
        if not any(key in ball for _, ball in balls):
            tree = build_two_tree(key, gens, max_word_len, act)
            ball = set(tree.members.values())
            balls.append((key, ball))
            part = {k: v for k, v in f.entries.items() if k in ball}
            classes.append((tree, FinSuppVector(part)))
    for i in range(len(balls)):
        for j in range(i + 1, len(balls)):
            if balls[i][1] & balls[j][1]:
                raise DomainError(
                    "undetermined pair: support points"
                    f" {balls[i][0]} and {balls[j][0]} lie in one orbit beyond"
                    " the word budget"
                )
    covered = set()
    for _, part in classes:
        covered |= part.support()
    if covered != f.support():
        raise DomainError("internal error: decomposition lost support points")
    return classes


# ---------------------------------------------------------------------------
# The gap constant and its Kesten grounding
# ---------------------------------------------------------------------------


def free_group_gap_constant() -> dict:
    """The pair (K, epsilon) used everywhere: K = {a, a^-1, b, b^-1} and
    epsilon = 2 - sqrt(3), with the derivation transcript."""
    return {
        "K": list(K_NAMES),
        "epsilon": EPSILON_FREE,
        "eta": ETA_DISCRETE,
        "epsilon_continuous": ETA_CONTINUOUS,
        "kesten_norm": KESTEN_NORM,
        "derivation": [
            "sum_{s in K} ||lambda(s)f - f||^2 = 8||f||^2 - 2<Mf, f>,"
            " M = sum_{s in K} lambda(s)",
            "||M|| = 4 * sqrt(3)/2 = 2 sqrt(3) on l2 of the free group"
            " (Kesten norm of the 4-regular tree)",
            "hence sum >= (8 - 4 sqrt(3))||f||^2 and"
            " max_{s in K} ||lambda(s)f - f||^2 >= (2 - sqrt(3))||f||^2",
            "pigeonhole over 2-trees divides by |K| = 4:"
            " eta = (2 - sqrt(3))/4",
            "continuous reduction doubles the bookkeeping count of K':"
            " epsilon' = (2 - sqrt(3))/8",
        ],
    }


def random_walk_spectral_radius(radius: int, tol: float = 1e-10) -> float:
    """Norm of the averaged adjacency (1/4) sum lambda(s) on the radius-r
    ball of the 4-regular tree, by shifted power iteration.

    The top eigenvector is radial (averaging over the sphere-transitive
    automorphisms preserves it), so the iteration runs on the exact radial
    compression: a (radius+1)-point Jacobi matrix with first off-diagonal
    1/2 and the rest sqrt(3)/4.  Tests cross-check small radii against
    power iteration on the full ball.
    """
    if radius < 1:
        raise DomainError("radius must be >= 1")
    n = radius + 1
    off = np.full(n - 1, math.sqrt(3.0) / 4.0)
    off[0] = 0.5
    v = np.ones(n) / math.sqrt(n)
    rho_prev = 0.0
    for _ in range(1_000_000):
        w = np.empty(n)
        w[:] = v
        w[:-1] += off * v[1:]
        w[1:] += off * v[:-1]
        # w = (J + I) v; J has spectrum in (-1, 1) so the shift makes the
        # top eigenvalue dominant.
        norm = float(np.linalg.norm(w))
        v = w / norm
        rho = norm - 1.0
        if abs(rho - rho_prev) <= tol * max(rho, 1e-300):
            return rho
        rho_prev = rho
    raise DomainError("power iteration failed to converge")


def full_ball_spectral_radius(radius: int, tol: float = 1e-10) -> float:
    """Independent oracle: same norm computed on the full tree ball."""
    if radius < 1:
        raise DomainError("radius must be >= 1")
    words: list[Word] = [()]
    index: dict[Word, int] = {(): 0}
    frontier: list[Word] = [()]
    for _ in range(radius):
        nxt = []
        for w in frontier:
            for letter in (1, -1, 2, -2):
                if w and w[0] == -letter:
                    continue
                nw = (letter,) + w
                index[nw] = len(words)
                words.append(nw)
                nxt.append(nw)
        frontier = nxt
    n = len(words)
    neighbors = np.full((n, 4), -1, dtype=np.int64)
    for i, w in enumerate(words):
        for j, letter in enumerate((1, -1, 2, -2)):
            img = mul_word(letter, w)
            k = index.get(img)
            if k is not None:
                neighbors[i, j] = k
    v = np.ones(n) / math.sqrt(n)
    rho_prev = 0.0
    for _ in range(1_000_000):
        w = v.copy()
        for j in range(4):
            mask = neighbors[:, j] >= 0
            w[mask] += 0.25 * v[neighbors[mask, j]]
        norm = float(np.linalg.norm(w))
        v = w / norm
        rho = norm - 1.0
        if abs(rho - rho_prev) <= tol * max(rho, 1e-300):
            return rho
        rho_prev = rho
    raise DomainError("power iteration failed to converge")


# ---------------------------------------------------------------------------
# Certification harness
# ---------------------------------------------------------------------------


@dataclass
class GapReport:
    K: list[str]
    epsilon: float
    eta: float
    samples: int
    min_observed_ratio: float
    violations: int
    seed: int
    support_cap: int
    radius: int
    adversarial: dict = field(default_factory=dict)
    stabilizer_scan: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    ratios: list[float] = field(default_factory=list)  # per-sample, for CSV

    def to_json(self) -> dict:
        return {
            "K": self.K,
            "epsilon": self.epsilon,
            "eta": self.eta,
            "samples": self.samples,
            "min_observed_ratio": self.min_observed_ratio,
            "violations": self.violations,
            "seed": self.seed,
            "support_cap": self.support_cap,
            "radius": self.radius,
            "adversarial": self.adversarial,
            "stabilizer_scan": self.stabilizer_scan,
            "notes": self.notes,
        }


def _kprime(pair: SchottkyPair) -> list[tuple[str, MappingClass]]:
    a, b = pair.generators()
    return [("a", a), ("A", a.inverse()), ("b", b), ("B", b.inverse())]


def _vectorized_stabilizer_scan(
    points: Sequence[Slope], gens: Sequence[MappingClass], max_len: int
) -> Optional[str]:
    """Check no reduced word of length <= max_len fixes any of the points.

    Returns the offending word name, or None.  Exact: int64 with entries
    far below overflow at desk scales.
    """
    from .slopes import reduced_words, word_matrix

    arr = np.array([[s.p, s.q] for s in points], dtype=np.int64)
    coord_max = int(np.abs(arr).max())
    for word in reduced_words(len(gens), max_len):
        m = word_matrix(word, gens)
        if max(abs(e) for e in m.entries()) * coord_max * 2 > 2**62:
            raise DomainError("stabilizer scan would overflow int64")
        img = arr @ np.array([[m.a, m.c], [m.b, m.d]], dtype=np.int64)
        neg = (img[:, 1] < 0) | ((img[:, 1] == 0) & (img[:, 0] < 0))
        img[neg] *= -1
        if bool(np.any((img[:, 0] == arr[:, 0]) & (img[:, 1] == arr[:, 1]))):
            return word_str(word)
    return None


def _sample_ratio(
    ball: OrbitBall,
    allowed: np.ndarray,
    kprime: Sequence[tuple[str, MappingClass]],
    rng: np.random.Generator,
    support_cap: int,
) -> float:
    k = int(rng.integers(1, support_cap + 1))
    k = min(k, allowed.size)
    idxs = rng.choice(allowed, size=k, replace=False)
    amps = rng.standard_normal(k)
    f = FinSuppVector(
        {ball.points[i]: float(a) for i, a in zip(idxs, amps) if a != 0.0}
    )
    n2 = f.norm2()
    return max(displacement(g, f) for _, g in kprime) / n2


def _adversarial_descent(
    base: Slope,
    pair: SchottkyPair,
    radius: int,
    rng: np.random.Generator,
    iterations: int = 500,
    step0: float = 0.1,
    decay: float = 0.99,
) -> dict:
    """Projected subgradient descent of max_g ||pi(g)f - f||^2 on the unit
    sphere of the radius-`radius` orbit ball."""
    inner = OrbitBall(base, pair.generators(), radius)
    outer = OrbitBall(base, pair.generators(), radius + 1)
    n_in = len(inner)
    pad = np.array([outer.index[s] for s in inner.points], dtype=np.int64)
    kprime = _kprime(pair)
    fwd = []  # index arrays: (pi(g) f)(x_j) = f(g^-1 x_j)
    for _, g in kprime:
        ginv = g.inverse()
        arr = np.full(len(outer), -1, dtype=np.int64)
        for j, s in enumerate(outer.points):
            arr[j] = inner.index.get(act_slope(ginv, s), -1)
        fwd.append(arr)

    def apply_pi(gi: int, f: np.ndarray) -> np.ndarray:
        arr = fwd[gi]
        out = np.zeros(len(outer))
        mask = arr >= 0
        out[mask] = f[arr[mask]]
        return out

    f = rng.standard_normal(n_in)
    f /= np.linalg.norm(f)
    lr = step0
    ratio = math.inf
    for _ in range(iterations):
        fpad = np.zeros(len(outer))
        fpad[pad] = f
        disps = []
        moved = []
        for gi in range(len(kprime)):
            mf = apply_pi(gi, f)
            moved.append(mf)
            disps.append(float(np.sum((mf - fpad) ** 2)))
        ratio = max(disps)
        worst = int(np.argmax(disps))
        winv = worst ^ 1  # letters are involutively paired a<->A, b<->B
        grad = 4.0 * f - 2.0 * moved[worst][pad] - 2.0 * moved[winv][pad]
        f = f - lr * grad
        f /= np.linalg.norm(f)
        lr *= decay
    fpad = np.zeros(len(outer))
    fpad[pad] = f
    final = max(
        float(np.sum((apply_pi(gi, f) - fpad) ** 2)) for gi in range(len(kprime))
    )
    return {
        "iterations": iterations,
        "step0": step0,
        "decay": decay,
        "final_ratio": final,
        "dimension": n_in,
    }


def certify_gap(
    orbit: OrbitBall,
    pair: SchottkyPair,
    samples: int,
    seed: int,
    support_cap: int = 64,
    stab_scan_len: int = 4,
    exclude: Optional[Slope] = None,
    descent_iterations: int = 500,
) -> GapReport:
    """Random plus adversarial certification that the orbit representation
    moves every unit vector by at least eta = (2 - sqrt(3))/4 under some
    element of K' = {a, a^-1, b, b^-1}.

    Each sample draws a finitely supported vector (support <= support_cap,
    normal amplitudes, per-sample RNG split from the seed) and checks
    max_g ||pi(g)f - f||^2 / ||f||^2 >= eta.  The descent then tries to
    minimize the same ratio on the truncated unit sphere.

    The harness only ever sees finitely supported vectors; these are dense
    in the whole space and a displacement bound on a dense invariant
    subspace extends to its closure by approximation, so nothing more is
    testable or needed.  Likewise K' lives in the rank-2 subgroup: a gap
    for the restricted action is a gap for any larger group containing it.
    """
    if samples < 1:
        raise DomainError("samples must be >= 1")
    require_certified(pair)
    witness = _vectorized_stabilizer_scan(orbit.points, list(pair.generators()), stab_scan_len)
    if witness is not None:
        raise DomainError(f"stabilizer scan failed: word {witness} fixes a point")
    kprime = _kprime(pair)
    if exclude is not None:
        allowed = np.array(
            [i for i, s in enumerate(orbit.points) if s != exclude], dtype=np.int64
        )
    else:
        allowed = np.arange(len(orbit.points), dtype=np.int64)
    if allowed.size == 0:
        raise DomainError("no support points available")
    children = np.random.SeedSequence(seed).spawn(samples + 1)
    min_ratio = math.inf
    violations = 0
    ratios: list[float] = []
    for i in range(samples):
        rng = np.random.default_rng(children[i])
        ratio = _sample_ratio(orbit, allowed, kprime, rng, support_cap)
        ratios.append(ratio)
        min_ratio = min(min_ratio, ratio)
        if ratio < ETA_DISCRETE - 1e-12:
            violations += 1
    adv = _adversarial_descent(
        orbit.base,
        pair,
        orbit.radius,
        np.random.default_rng(children[samples]),
        iterations=descent_iterations,
    )
    return GapReport(
        K=list(K_NAMES),
        epsilon=EPSILON_FREE,
        eta=ETA_DISCRETE,
        samples=samples,
        min_observed_ratio=min_ratio,
        violations=violations,
        seed=seed,
        support_cap=support_cap,
        radius=orbit.radius,
        adversarial=adv,
        stabilizer_scan={"max_len": stab_scan_len, "violation": None},
        notes=[],
        ratios=ratios,
    )


def punctured_orbit_gap(
    gamma: Slope,
    pair: SchottkyPair,
    samples: int,
    seed: int,
    radius: int = 8,
    support_cap: int = 64,
) -> GapReport:
    """Same harness with support points drawn from the orbit minus {gamma}.

    The subgroup fixes no slope at all (purely hyperbolic), so the
    displacement bound is inherited from the full orbit; the puncture only
    constrains where supports may sit.
    """
    ball = OrbitBall(gamma, pair.generators(), radius)
    report = certify_gap(
        ball, pair, samples, seed, support_cap=support_cap, exclude=gamma
    )
    report.notes.append(f"support drawn from orbit of {gamma} minus the base point")
    return report
