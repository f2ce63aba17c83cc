"""Face lattices, sign classes, and normal-cone invariants."""

import math
import random
from fractions import Fraction

from valgeo.geometry import convex_hull, cube, standard_simplex
from valgeo.geometry.linalg import vdot
from valgeo.harness.oracles import affine_dim, brute_face_vertex_sets, brute_facets


def classes(P):
    lattice = P.face_lattice()
    minus = {f.vertex_ids for f in lattice.minus_class()}
    plus = {f.vertex_ids for f in lattice.plus_class()}
    return minus, plus


def test_simplex_f_vectors_up_to_dim_six():
    for d in range(1, 7):
        fv = standard_simplex(d).face_lattice().f_vector()
        assert fv == tuple(math.comb(d + 1, j + 1) for j in range(d)) + (1,)


def test_unit_square_counts():
    assert cube(2).face_lattice().f_vector() == (4, 4, 1)


def test_face_lattice_against_exhaustive_oracle():
    rng = random.Random(5)
    for trial in range(8):
        n = rng.choice([2, 3])
        pts = [tuple(Fraction(rng.randint(-3, 3), rng.randint(1, 2))
                     for _ in range(n)) for _ in range(rng.randint(n + 1, 9))]
        P = convex_hull(pts)
        if P.dim != n:
            continue
        facets = brute_facets(list(P.vertices))
        expected_sets = brute_face_vertex_sets(list(P.vertices), facets)
        got = {frozenset(f.vertex_ids) for f in P.face_lattice().faces}
        assert got == expected_sets
        # dimensions agree with affine dimension of the vertex sets
        for f in P.face_lattice().faces:
            assert f.dim == affine_dim([P.vertices[i] for i in f.vertex_ids])


def test_random_4_polytope_euler_relation():
    rng = random.Random(9)
    pts = [tuple(Fraction(rng.randint(-4, 4), rng.randint(1, 2))
                 for _ in range(4)) for _ in range(20)]
    P = convex_hull(pts)
    assert P.dim == 4
    lattice = P.face_lattice()
    assert lattice.euler_alternating_sum() == 1
    # proper faces alone sum to 1 - (-1)^dim P
    proper = sum((-1) ** f.dim for f in lattice.faces if f.dim < P.dim)
    assert proper == 1 - (-1) ** P.dim


def test_minus_class_is_origin_faces_when_origin_inside():
    T2 = standard_simplex(2)
    minus, plus = classes(T2)
    assert minus == {(0,), (0, 1), (0, 2), (0, 1, 2)}
    assert plus == {f.vertex_ids for f in T2.face_lattice().faces}


def test_off_origin_segment_classes_via_rays():
    # [e1, 2e1] in R^1: the near endpoint and the body are in the minus class
    P = convex_hull([(1,), (2,)])
    minus, plus = classes(P)
    assert minus == {(0,), (0, 1)}
    assert plus == {(1,), (0, 1)}
    # same body embedded in R^2: the lineality directions are height-0
    P = convex_hull([(1, 0), (2, 0)])
    minus, plus = classes(P)
    assert minus == {(0,), (0, 1)}
    assert plus == {(1,), (0, 1)}


def test_symmetric_segment_classes():
    # o in the relative interior: only P itself carries h <= 0 on its cone
    P = convex_hull([(-1,), (1,)])
    minus, plus = classes(P)
    assert minus == {(0, 1)}
    assert plus == {(0,), (1,), (0, 1)}


def test_point_classes():
    o = convex_hull([(0, 0, 0)])
    assert classes(o) == ({(0,)}, {(0,)})
    p = convex_hull([(1, 0, 0)])
    assert classes(p) == (set(), set())


def test_normal_cone_linearity():
    # h_P is linear on N(P, F): every stored ray gives u.v == h_P(u) on F
    rng = random.Random(12)
    for trial in range(6):
        n = rng.choice([2, 3])
        pts = [tuple(Fraction(rng.randint(-4, 4), rng.randint(1, 3))
                     for _ in range(n)) for _ in range(rng.randint(2, 9))]
        P = convex_hull(pts)
        lattice = P.face_lattice()
        for f in lattice.faces:
            for u in f.normal_cone_rays:
                vals = {vdot(u, P.vertices[i]) for i in f.vertex_ids}
                assert vals == {P.support(u)}
            for w in f.lineality:
                vals = {vdot(w, v) for v in P.vertices}
                assert len(vals) == 1


def test_face_contains_point():
    C = cube(2)
    lattice = C.face_lattice()
    edge = next(f for f in lattice.faces_of_dim(1)
                if {C.vertices[i] for i in f.vertex_ids} ==
                {(Fraction(0), Fraction(0)), (Fraction(1), Fraction(0))})
    assert lattice.face_contains_point(edge, (Fraction(1, 2), Fraction(0)))
    assert not lattice.face_contains_point(edge, (Fraction(1, 2), Fraction(1, 2)))
    assert not lattice.face_contains_point(edge, (Fraction(2), Fraction(0)))


def test_classify_faces_function():
    from valgeo.geometry import classify_faces
    minus, plus = classify_faces(standard_simplex(2))
    assert {f.vertex_ids for f in minus} == {(0,), (0, 1), (0, 2), (0, 1, 2)}
    assert len(plus) == 7
