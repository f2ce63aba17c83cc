from .linalg import Scalar, Vector, as_scalar, as_vector, format_scalar
from .polytope import (
    Polytope, convex_hull, cut, minkowski_sum, reflect, cone_hull, scale,
    translate, apply_linear, triangulate, volume, volume_full, euler_characteristic,
    standard_simplex, cube, polytope_to_json, polytope_from_json,
    OUTSIDE, BOUNDARY, RELATIVE_INTERIOR,
)
from .faces import Face, FaceLattice, build_face_lattice, classify_faces
