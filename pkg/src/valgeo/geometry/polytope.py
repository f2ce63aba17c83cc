"""Exact rational polytopes: hulls, supports, cuts, volumes.

A ``Polytope`` is stored by its irredundant vertex set together with an
affine chart of its hull and the facet inequalities *inside that chart*.
For a full-dimensional body the chart is the identity and the facets are
ordinary ambient halfspaces.  All predicates are exact; nothing here ever
rounds.

The chart maps a point of the affine hull to its coordinates on the pivot
axes of the hull (the lexicographically smallest coordinate subset on which
the hull projects bijectively).  Lower-dimensional volumes are Lebesgue
volumes in that chart; see :func:`volume`.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

from .linalg import (
    Matrix,
    Scalar,
    Vector,
    ZERO,
    ONE,
    as_scalar,
    as_vector,
    det,
    format_scalar,
    identity_matrix,
    is_zero_vector,
    kernel_basis,
    mat_vec,
    primitive,
    rref,
    solve,
    unit_vector,
    vadd,
    vdot,
    vneg,
    vscale,
    vsub,
    zero_vector,
)

MAX_DIM = 6
DEFAULT_MAX_VERTICES = 64

OUTSIDE = "outside"
BOUNDARY = "boundary"
RELATIVE_INTERIOR = "relative_interior"


@dataclass(frozen=True)
class AffineChart:
    """Coordinates on the affine hull of a point set.

    ``pivots`` are the ambient coordinate axes that parametrize the hull;
    ``project`` reads those coordinates off a point, ``lift`` reconstructs
    the ambient point.  ``basis`` rows span the direction space lin(P) and
    satisfy project(basis[a]) = e_a.  ``normal_basis`` spans lin(P)^perp.
    """

    n: int
    base: Vector
    pivots: tuple[int, ...]
    basis: tuple[Vector, ...]
    normal_basis: tuple[Vector, ...]

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def project(self, point: Vector) -> Vector:
        return tuple(point[j] for j in self.pivots)

    def lift(self, rel: Vector) -> Vector:
        point = self.base
        for a, coord in enumerate(rel):
            t = coord - self.base[self.pivots[a]]
            if t != 0:
                point = vadd(point, vscale(t, self.basis[a]))
        return point

    def contains(self, point: Vector) -> bool:
        return self.lift(self.project(point)) == point

    def contains_direction(self, direction: Vector) -> bool:
        rel = tuple(direction[j] for j in self.pivots)
        lifted = zero_vector(self.n)
        for a, coord in enumerate(rel):
            if coord != 0:
                lifted = vadd(lifted, vscale(coord, self.basis[a]))
        return lifted == direction

    def inplane_normal(self, rel_normal: Vector) -> Vector:
        """Ambient u in lin(P) acting on the hull as rel_normal does."""
        gram = tuple(tuple(vdot(a, b) for b in self.basis) for a in self.basis)
        coeffs = solve(gram, rel_normal)
        assert coeffs is not None
        out = zero_vector(self.n)
        for c, b in zip(coeffs, self.basis):
            out = vadd(out, vscale(c, b))
        return out


def affine_chart(points: list[Vector]) -> AffineChart:
    n = len(points[0])
    base = points[0]
    diffs = [vsub(p, base) for p in points[1:]]
    if diffs:
        reduced, pivots = rref(diffs)
    else:
        reduced, pivots = (), ()
    normal = tuple(kernel_basis(reduced)) if reduced else tuple(identity_matrix(n))
    return AffineChart(n=n, base=base, pivots=tuple(pivots),
                       basis=tuple(reduced), normal_basis=normal)


@dataclass
class _WorkFacet:
    normal: Vector  # outward, primitive integer entries
    offset: Scalar
    members: set[int]


def _facet_key(normal: Vector, offset: Scalar):
    return (normal, offset)


def _hyperplane_through(points: list[Vector]) -> tuple[Vector, Scalar] | None:
    """Normal/offset of the unique hyperplane through affinely spanning points."""
    base = points[0]
    diffs = [vsub(p, base) for p in points[1:]]
    kern = kernel_basis(diffs) if diffs else kernel_basis([zero_vector(len(base))])
    if len(kern) != 1:
        return None
    normal = primitive(kern[0])
    return normal, vdot(normal, base)


def _hull_full_dim(points: list[Vector], order: list[int]) -> list[_WorkFacet]:
    """Beneath-beyond hull of full-dimensional points in their own space."""
    k = len(points[0])
    if k == 1:
        lo = min(order, key=lambda i: points[i][0])
        hi = max(order, key=lambda i: points[i][0])
        return [
            _WorkFacet((Fraction(-1),), -points[lo][0], {lo}),
            _WorkFacet((Fraction(1),), points[hi][0], {hi}),
        ]

    # initial simplex: greedily grow an affinely independent subset
    simplex = [order[0]]
    for idx in order[1:]:
        trial = simplex + [idx]
        diffs = [vsub(points[i], points[trial[0]]) for i in trial[1:]]
        if len(rref(diffs)[1]) == len(trial) - 1:
            simplex = trial
        if len(simplex) == k + 1:
            break
    assert len(simplex) == k + 1

    interior = vscale(Fraction(1, k + 1),
                      tuple(sum(points[i][j] for i in simplex) for j in range(k)))

    facets: dict = {}
    for drop in range(k + 1):
        members = [simplex[i] for i in range(k + 1) if i != drop]
        plane = _hyperplane_through([points[i] for i in members])
        assert plane is not None
        normal, offset = plane
        if vdot(normal, interior) > offset:
            normal, offset = vneg(normal), -offset
        facets[_facet_key(normal, offset)] = _WorkFacet(normal, offset, set(members))

    inserted = set(simplex)
    for idx in order:
        if idx in inserted:
            continue
        inserted.add(idx)
        p = points[idx]
        visible, invisible, coplanar = [], [], []
        for f in facets.values():
            side = vdot(f.normal, p) - f.offset
            if side > 0:
                visible.append(f)
            elif side == 0:
                coplanar.append(f)
            else:
                invisible.append(f)
        if not visible:
            continue  # p inside the current hull (possibly on its boundary)
        for f in coplanar:
            f.members.add(idx)
        known = set().union(*(f.members for f in facets.values()))
        new_facets: dict = {}
        for f in visible:
            # horizon ridges: shared (k-2)-faces with strictly invisible facets;
            # ridges shared with coplanar facets are covered by extending those
            for g in invisible:
                ridge = f.members & g.members
                if len(ridge) < k - 1:
                    continue
                rpts = [points[i] for i in sorted(ridge)]
                diffs = [vsub(q, rpts[0]) for q in rpts[1:]]
                if len(rref(diffs)[1]) != k - 2:
                    continue
                plane = _hyperplane_through(_independent_subset(rpts, k - 2) + [p])
                if plane is None:
                    continue
                normal, offset = plane
                if vdot(normal, interior) > offset:
                    normal, offset = vneg(normal), -offset
                key = _facet_key(normal, offset)
                members = {i for i in known | {idx}
                           if vdot(normal, points[i]) == offset}
                if key in new_facets:
                    new_facets[key].members |= members
                else:
                    new_facets[key] = _WorkFacet(normal, offset, members)
        for f in visible:
            del facets[_facet_key(f.normal, f.offset)]
        for key, f in new_facets.items():
            if key in facets:
                facets[key].members |= f.members
            else:
                facets[key] = f
    return list(facets.values())


def _independent_subset(pts: list[Vector], target_rank: int) -> list[Vector]:
    """Affinely independent subset of pts spanning their hull (rank target_rank)."""
    chosen = [pts[0]]
    for p in pts[1:]:
        diffs = [vsub(q, chosen[0]) for q in chosen[1:]] + [vsub(p, chosen[0])]
        if len(rref(diffs)[1]) == len(chosen):
            chosen.append(p)
        if len(chosen) == target_rank + 1:
            break
    return chosen


class Polytope:
    """Convex hull of finitely many rational points, with exact structure.

    Construct through :func:`convex_hull`.  Instances are immutable in
    practice (nothing mutates them after construction) and safe to share.
    """

    def __init__(self, n: int, vertices: tuple[Vector, ...], chart: AffineChart,
                 rel_facets: tuple[tuple[Vector, Scalar], ...]):
        self.n = n
        self.vertices = vertices
        self.chart = chart
        self.rel_facets = rel_facets  # inequalities u.z <= c in chart coordinates
        self._lattice = None
        self._triangulation = None

    # -- basic descriptors -------------------------------------------------

    @property
    def dim(self) -> int:
        return self.chart.dim

    @property
    def is_full_dimensional(self) -> bool:
        return self.dim == self.n

    def rel_vertices(self) -> list[Vector]:
        return [self.chart.project(v) for v in self.vertices]

    def facets_ambient(self) -> list[tuple[Vector, Scalar]]:
        """Facet inequalities as ambient halfspaces (valid within aff P)."""
        out = []
        for rel_normal, offset in self.rel_facets:
            ambient = [ZERO] * self.n
            for a, j in enumerate(self.chart.pivots):
                ambient[j] = rel_normal[a]
            out.append((tuple(ambient), offset))
        return out

    def __repr__(self):
        return f"Polytope(dim={self.dim}, n={self.n}, vertices={len(self.vertices)})"

    def __eq__(self, other):
        return isinstance(other, Polytope) and self.n == other.n \
            and self.vertices == other.vertices

    def __hash__(self):
        return hash((self.n, self.vertices))

    # -- support / gauge ---------------------------------------------------

    def support(self, x: Vector) -> Scalar:
        return max(vdot(x, v) for v in self.vertices)

    def gauge(self, x: Vector) -> Scalar | float:
        """min{lambda > 0 : x in lambda P}; +inf outside the cone of P."""
        if self.point_membership(zero_vector(self.n)) == OUTSIDE:
            raise ValueError("gauge requires the origin to lie in P")
        if all(c == 0 for c in x):
            return ZERO
        if not self.chart.contains_direction(x):
            return math.inf
        rel = tuple(x[j] for j in self.chart.pivots)
        bound = ZERO
        for normal, offset in self.rel_facets:
            num = vdot(normal, rel)
            if offset == 0:
                if num > 0:
                    return math.inf
            elif num / offset > bound:
                bound = num / offset
        return bound

    # -- membership ----------------------------------------------------------

    def point_membership(self, y: Vector) -> str:
        if len(y) != self.n:
            raise ValueError("dimension mismatch")
        if not self.chart.contains(y):
            return OUTSIDE
        if self.dim == 0:
            return RELATIVE_INTERIOR if y == self.vertices[0] else OUTSIDE
        rel = self.chart.project(y)
        on_boundary = False
        for normal, offset in self.rel_facets:
            s = vdot(normal, rel)
            if s > offset:
                return OUTSIDE
            if s == offset:
                on_boundary = True
        return BOUNDARY if on_boundary else RELATIVE_INTERIOR

    def contains(self, y: Vector) -> bool:
        return self.point_membership(y) != OUTSIDE

    # -- caches --------------------------------------------------------------

    def face_lattice(self):
        if self._lattice is None:
            from .faces import build_face_lattice
            self._lattice = build_face_lattice(self)
        return self._lattice

    def triangulation(self) -> list[tuple[int, ...]]:
        """Pulling triangulation; simplices as tuples of vertex indices."""
        if self._triangulation is None:
            self._triangulation = _pulling_triangulation(self)
        return self._triangulation


def convex_hull(points, max_vertices: int = DEFAULT_MAX_VERTICES) -> Polytope:
    """Exact convex hull of rational points (dimension at most 6).

    The vertex list of the result is irredundant; facets are computed inside
    the affine hull when the input is lower-dimensional.
    """
    pts = [as_vector(p) for p in points]
    if not pts:
        raise ValueError("convex_hull needs at least one point")
    n = len(pts[0])
    if any(len(p) != n for p in pts):
        raise ValueError("points have mismatched dimensions")
    if not 1 <= n <= MAX_DIM:
        raise ValueError(f"ambient dimension must be in 1..{MAX_DIM}")
    pts = sorted(set(pts))
    if len(pts) > max_vertices:
        raise ValueError(f"too many points ({len(pts)} > {max_vertices})")

    chart = affine_chart(pts)
    k = chart.dim
    if k == 0:
        poly = Polytope(n, (pts[0],), chart, ())
        poly.facet_members = ()
        return poly

    rel_pts = [chart.project(p) for p in pts]
    facets = _hull_full_dim(rel_pts, list(range(len(rel_pts))))

    # prune facet member lists down to true vertices: a point is a vertex
    # iff the normals of the facets through it span the chart space
    by_point: dict[int, list[Vector]] = {}
    for f in facets:
        for i in f.members:
            by_point.setdefault(i, []).append(f.normal)
    vertex_ids = sorted(i for i, normals in by_point.items()
                        if len(rref(normals)[1]) == k)
    keep = set(vertex_ids)
    vertices = tuple(pts[i] for i in vertex_ids)

    remap = {old: new for new, old in enumerate(vertex_ids)}
    rel_facets = []
    for f in facets:
        rel_facets.append((f.normal, f.offset, tuple(sorted(remap[i] for i in f.members & keep))))
    rel_facets.sort()
    # pts[0] is the lex-min point, hence always a vertex, so the chart of the
    # pruned vertex list coincides with the chart computed above
    poly = Polytope(n, vertices, chart, tuple((u, c) for u, c, _ in rel_facets))
    poly.facet_members = tuple(m for _, _, m in rel_facets)
    return poly


# -- surgery ---------------------------------------------------------------


def scale(P: Polytope, alpha) -> Polytope:
    alpha = as_scalar(alpha)
    if alpha <= 0:
        raise ValueError("scale factor must be positive")
    return convex_hull([vscale(alpha, v) for v in P.vertices])


def translate(P: Polytope, t) -> Polytope:
    t = as_vector(t)
    return convex_hull([vadd(v, t) for v in P.vertices])


def reflect(P: Polytope) -> Polytope:
    return convex_hull([vneg(v) for v in P.vertices])


def cone_hull(P: Polytope) -> Polytope:
    """[P, o]: the convex hull of P and the origin."""
    return convex_hull(list(P.vertices) + [zero_vector(P.n)])


def minkowski_sum(P: Polytope, Q: Polytope) -> Polytope:
    if P.n != Q.n:
        raise ValueError("ambient dimensions differ")
    return convex_hull([vadd(v, w) for v in P.vertices for w in Q.vertices],
                       max_vertices=len(P.vertices) * len(Q.vertices) + 1)


def apply_linear(P: Polytope, m: Matrix) -> Polytope:
    m = tuple(as_vector(row) for row in m)
    if det(m) == 0:
        raise ValueError("linear map must be nonsingular")
    return convex_hull([mat_vec(m, v) for v in P.vertices])


def cut(P: Polytope, normal, offset) -> tuple[Polytope | None, Polytope | None, Polytope | None]:
    """Split P by the hyperplane {y : normal.y = offset}.

    Returns (P cap H^-, P cap H^+, P cap H); empty pieces come back as None.
    The pieces' vertices are original vertices on the correct side plus the
    exact edge/hyperplane intersection points.
    """
    x = as_vector(normal)
    t = as_scalar(offset)
    if is_zero_vector(x):
        raise ValueError("cutting hyperplane needs a nonzero normal")
    sides = [vdot(x, v) - t for v in P.vertices]
    minus = [v for v, s in zip(P.vertices, sides) if s <= 0]
    plus = [v for v, s in zip(P.vertices, sides) if s >= 0]
    on = [v for v, s in zip(P.vertices, sides) if s == 0]

    crossings: list[Vector] = []
    if any(s < 0 for s in sides) and any(s > 0 for s in sides):
        for edge in P.face_lattice().faces_of_dim(1):
            i, j = edge.vertex_ids[0], edge.vertex_ids[-1]
            si, sj = sides[i], sides[j]
            if (si < 0 < sj) or (sj < 0 < si):
                lam = si / (si - sj)
                w = vadd(P.vertices[i], vscale(lam, vsub(P.vertices[j], P.vertices[i])))
                crossings.append(w)

    def hull_or_none(verts):
        return convex_hull(verts, max_vertices=max(DEFAULT_MAX_VERTICES, len(verts))) if verts else None

    piece_minus = hull_or_none(minus + crossings)
    piece_plus = hull_or_none(plus + crossings)
    piece_mid = hull_or_none(on + crossings)
    return piece_minus, piece_plus, piece_mid


# -- volume / triangulation --------------------------------------------------


def _pulling_triangulation(P: Polytope) -> list[tuple[int, ...]]:
    lattice = P.face_lattice()
    cache: dict[tuple[int, ...], list[tuple[int, ...]]] = {}

    def tri(face) -> list[tuple[int, ...]]:
        key = face.vertex_ids
        if key in cache:
            return cache[key]
        if face.dim == 0:
            out = [face.vertex_ids]
        else:
            rel_pts = {i: P.chart.project(P.vertices[i]) for i in face.vertex_ids}
            apex = min(face.vertex_ids, key=lambda i: rel_pts[i])
            out = []
            for child in lattice.children(face):
                if apex in child.vertex_ids:
                    continue
                for simplex in tri(child):
                    out.append(tuple(sorted((apex,) + simplex)))
        cache[key] = out
        return out

    simplices = tri(lattice.top())
    # drop degenerate cones (apex inside the child's affine hull cannot occur
    # for pulling from a vertex, but keep the guard cheap and explicit)
    return [s for s in simplices if len(s) == P.dim + 1]


def triangulate(P: Polytope) -> list[tuple[Vector, ...]]:
    """Pulling triangulation as explicit simplices (tuples of vertices)."""
    return [tuple(P.vertices[i] for i in s) for s in P.triangulation()]


def simplex_volume(rel_points: list[Vector]) -> Scalar:
    base = rel_points[0]
    rows = [vsub(p, base) for p in rel_points[1:]]
    if not rows:
        return ONE
    d = det(tuple(rows))
    k = len(rows)
    return abs(d) / math.factorial(k)


def volume(P: Polytope) -> Scalar:
    """Exact volume of P inside its chart.

    Full-dimensional bodies get the ordinary Lebesgue volume.  For a
    k-dimensional body the value is the Lebesgue volume of the projection to
    the chart's pivot axes (a fixed normalization of the hull's Lebesgue
    measure); 0-dimensional bodies have volume 1.
    """
    if P.dim == 0:
        return ONE
    total = ZERO
    rel = P.rel_vertices()
    for simplex in P.triangulation():
        total += simplex_volume([rel[i] for i in simplex])
    return total


def volume_full(P: Polytope | None) -> Scalar:
    """n-dimensional volume: 0 for empty or lower-dimensional bodies."""
    if P is None or not P.is_full_dimensional:
        return ZERO
    return volume(P)


def euler_characteristic(P: Polytope | None) -> int:
    return 0 if P is None else 1


# -- serialization -----------------------------------------------------------


def polytope_to_json(P: Polytope) -> str:
    payload = {
        "n": P.n,
        "vertices": [[format_scalar(c) for c in v] for v in P.vertices],
    }
    return json.dumps(payload)


def polytope_from_json(text: str) -> Polytope:
    payload = json.loads(text)
    n = payload["n"]
    verts = [as_vector(v) for v in payload["vertices"]]
    if any(len(v) != n for v in verts):
        raise ValueError("vertex length disagrees with declared dimension")
    return convex_hull(verts)


# -- convenient constructions -------------------------------------------------


def standard_simplex(d: int, n: int | None = None) -> Polytope:
    """T^d = [o, e_1, ..., e_d] inside R^n (defaults to n = d)."""
    n = d if n is None else n
    pts = [zero_vector(n)] + [unit_vector(n, i) for i in range(d)]
    return convex_hull(pts)


def cube(n: int, low=0, high=1) -> Polytope:
    low, high = as_scalar(low), as_scalar(high)
    pts = []
    for mask in range(2 ** n):
        pts.append(tuple(high if (mask >> i) & 1 else low for i in range(n)))
    return convex_hull(pts, max_vertices=max(DEFAULT_MAX_VERTICES, 2 ** n))
