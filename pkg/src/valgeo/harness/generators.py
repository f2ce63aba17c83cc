"""Seed-replayable random geometry: polytopes, cuts, unimodular maps, weights.

SL(n) samples are products of elementary shears, so they are exactly
unimodular in rational arithmetic; GL+(n) samples append a positive rational
diagonal.  Random polytopes are hulls of bounded-denominator points, and the
origin-containing suites get the origin injected or the body recentred.
"""

from __future__ import annotations

import random
from fractions import Fraction

from ..geometry.linalg import Matrix, Vector, identity_matrix, mat_mul, vsub, vdot
from ..geometry.polytope import Polytope, convex_hull
from ..slicing import weights as W


def rand_scalar(rng: random.Random, denom_bound: int, num_bound: int | None = None) -> Fraction:
    num_bound = num_bound if num_bound is not None else 2 * denom_bound
    return Fraction(rng.randint(-num_bound, num_bound), rng.randint(1, denom_bound))


def rand_point(rng: random.Random, n: int, denom_bound: int) -> Vector:
    return tuple(rand_scalar(rng, denom_bound) for _ in range(n))


def rand_direction(rng: random.Random, n: int, bound: int = 5) -> Vector:
    while True:
        x = tuple(Fraction(rng.randint(-bound, bound)) for _ in range(n))
        if any(x):
            return x


def rand_polytope(rng: random.Random, n: int, k_range: tuple[int, int],
                  denom_bound: int, contain_origin: bool | None = None,
                  full_dim: bool = False) -> Polytope:
    """Hull of k random points; optionally forced to contain o / be full-dim."""
    if contain_origin is None:
        contain_origin = rng.random() < 0.5
    for _ in range(64):
        k = rng.randint(*k_range)
        pts = [rand_point(rng, n, denom_bound) for _ in range(k)]
        if contain_origin:
            if rng.random() < 0.5:
                pts.append(tuple(Fraction(0) for _ in range(n)))
            else:
                centroid = tuple(sum(p[i] for p in pts) / len(pts) for i in range(n))
                pts = [vsub(p, centroid) for p in pts]
        P = convex_hull(pts)
        if full_dim and P.dim != n:
            continue
        if contain_origin and not P.contains(tuple(Fraction(0) for _ in range(n))):
            continue
        return P
    raise RuntimeError("failed to generate a suitable polytope")


def rand_hyperplane(rng: random.Random, P: Polytope) -> tuple[Vector, Fraction]:
    """A cutting hyperplane: usually proper, sometimes degenerate or missing."""
    x = rand_direction(rng, P.n, 3)
    heights = sorted(vdot(x, v) for v in P.vertices)
    roll = rng.random()
    if roll < 0.7 and heights[0] != heights[-1]:
        lam = Fraction(rng.randint(1, 7), 8)
        t = heights[0] + lam * (heights[-1] - heights[0])
    elif roll < 0.9:
        t = rng.choice(heights)
    else:
        t = heights[-1] + 1  # misses the body
    return x, t


def shear(n: int, i: int, j: int, lam: Fraction) -> Matrix:
    rows = [list(row) for row in identity_matrix(n)]
    rows[i][j] = lam
    return tuple(tuple(r) for r in rows)


def rand_sl_matrix(rng: random.Random, n: int, max_shears: int = 10) -> Matrix:
    """Product of elementary shears: exactly unimodular."""
    m = identity_matrix(n)
    for _ in range(rng.randint(1, max_shears)):
        i = rng.randrange(n)
        j = rng.randrange(n)
        if i == j:
            continue
        lam = Fraction(rng.randint(-2, 2), rng.randint(1, 3))
        if lam:
            m = mat_mul(m, shear(n, i, j, lam))
    return m


def rand_glplus_matrix(rng: random.Random, n: int,
                       diagonal: tuple | None = None) -> Matrix:
    """Shear product times a positive diagonal (orientation-preserving)."""
    m = rand_sl_matrix(rng, n)
    if diagonal is None:
        diagonal = tuple(Fraction(rng.randint(1, 3), rng.randint(1, 2))
                         for _ in range(n))
    diag = tuple(tuple(diagonal[i] if i == j else Fraction(0) for j in range(n))
                 for i in range(n))
    return mat_mul(m, diag)


def rand_polynomial_weight(rng: random.Random, max_deg: int = 3,
                           denom_bound: int = 3) -> W.WeightSpec:
    deg = rng.randint(0, max_deg)
    coeffs = [rand_scalar(rng, denom_bound, 3) for _ in range(deg + 1)]
    if not any(coeffs):
        coeffs[0] = Fraction(1)
    return W.polynomial(coeffs)


def rand_indicator_weight(rng: random.Random) -> W.WeightSpec:
    a = rand_scalar(rng, 3, 4)
    b = a + abs(rand_scalar(rng, 3, 4))
    return W.indicator(a, b)


def rand_tabulated_weight(rng: random.Random, anchors) -> W.WeightSpec:
    """A pathological table hitting the given anchor values exactly."""
    table = [(t, rand_scalar(rng, 5, 9)) for t in sorted(set(anchors))]
    return W.tabulated(table, default=rand_scalar(rng, 3, 5))
