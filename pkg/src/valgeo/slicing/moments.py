"""Weighted moment transforms M_zeta P(x) = integral_P zeta(x.y) dy.

Exact weights ride the rational divided-difference path per simplex of a
pulling triangulation; float weights (real exponents, exp, log) go through
high-precision divided differences after every simplex is pre-cut by the
zero-height hyperplane, so each integration cell sees a single-signed,
smooth weight branch.

The same machinery evaluates the section-measure transform

    M_mu P(x) = (1/|x|) integral V_{n-1}(P cap H_{x,t}) dmu(t)

whose density part reduces to M_zeta by Fubini and whose atoms read the
exact section profile.  Both maps are simple: they vanish on
lower-dimensional bodies, which the cut identity tests rely on.
"""

from __future__ import annotations

import math
from fractions import Fraction

from mpmath import mp, mpf, exp as mpexp, log as mplog, power as mppower

from ..geometry.linalg import as_vector, is_zero_vector, vdot, vneg
from ..geometry.polytope import Polytope, convex_hull, cut, simplex_volume, volume
from .divdiff import FLOAT_DPS, dd_fraction, dd_mpf, _to_mpf
from .profile import section_profile
from .weights import MeasureSpec, WeightSpec

ZERO = Fraction(0)


# -- float-path antiderivatives ----------------------------------------------


def _harmonic(k: int) -> mpf:
    return _to_mpf(sum(Fraction(1, i) for i in range(1, k + 1)))


def _float_antideriv(weight: WeightSpec, m: int, branch: int):
    """(t, order) -> F^(order)(t) where F is an m-th antiderivative of zeta.

    ``branch`` is +1 when every node is >= 0 and -1 when every node is <= 0;
    the returned callable is only valid on that closed half-line.
    """
    kind = weight.kind
    if kind == "exp_neg":
        def f(t, order):
            return (-1) ** (m - order) * mpexp(-_to_mpf(t))
        return f

    if kind in ("abs_power", "signed_power"):
        p = mpf(float(weight.p))
        active = True
        if kind == "signed_power":
            want_pos = (weight.side == "pos")
            active = (branch > 0) == want_pos
        if not active:
            return lambda t, order: mpf(0)

        def f(t, order):
            k = m - order
            s = _to_mpf(t) if branch > 0 else -_to_mpf(t)
            denom = mpf(1)
            for i in range(1, k + 1):
                denom *= p + i
            if s == 0:
                return mpf(0)  # p + k > 0 for every requested order
            val = mppower(s, p + k) / denom
            return val if branch > 0 else (-1) ** k * val
        return f

    if kind == "log_abs":
        def f(t, order):
            k = m - order
            s = _to_mpf(t) if branch > 0 else -_to_mpf(t)
            if s == 0:
                return mpf(0)
            val = mppower(s, k) * (mplog(s) - _harmonic(k)) / math.factorial(k)
            return val if branch > 0 else (-1) ** k * val
        return f

    raise ValueError(f"no float antiderivative for weight kind {kind!r}")


_NEEDS_ZERO_SPLIT = ("abs_power", "signed_power", "log_abs")


# -- simplex and polytope transforms -------------------------------------------


def simplex_moment(vertices, x, weight: WeightSpec):
    """integral over the simplex [vertices] of zeta(x.y) dy, full-dimensional.

    Exact rational for exact-path weights; float via high-precision divided
    differences otherwise (with the zero-height split applied by the caller
    for the singular kinds).
    """
    x = as_vector(x)
    n = len(x)
    if len(vertices) != n + 1:
        raise ValueError("simplex must have n + 1 vertices")
    if is_zero_vector(x) and not weight.smooth:
        raise ValueError("x = o needs a weight smooth at 0")
    if weight.reflect:
        return simplex_moment(vertices, vneg(x), _unreflected(weight))
    vol = simplex_volume(list(vertices))
    if vol == 0:
        return ZERO if weight.is_exact else 0.0
    nodes = sorted(vdot(x, v) for v in vertices)
    scale = Fraction(math.factorial(n)) * vol
    if weight.is_exact:
        F = weight.exact_pieces().antiderivative_order(n)
        return scale * dd_fraction(nodes, F.deriv_value)
    with mp.workdps(FLOAT_DPS):
        if weight.kind in _NEEDS_ZERO_SPLIT and nodes[0] < 0 < nodes[-1]:
            total = mpf(0)
            for cell_nodes, cell_vol, branch in _zero_split(vertices, x):
                f = _float_antideriv(weight, n, branch)
                total += mpf(math.factorial(n)) * _to_mpf(cell_vol) * \
                    dd_mpf(cell_nodes, f)
            return float(total)
        branch = 1 if nodes[-1] > 0 else -1
        f = _float_antideriv(weight, n, branch)
        return float(_to_mpf(scale) * dd_mpf(nodes, f))


def _unreflected(weight: WeightSpec) -> WeightSpec:
    from dataclasses import replace
    return replace(weight, reflect=False)


def _zero_split(vertices, x):
    """Cells of the simplex split by {x.y = 0}: (nodes, volume, branch)."""
    simplex = convex_hull(list(vertices))
    minus, plus, _ = cut(simplex, x, 0)
    out = []
    for piece, branch in ((minus, -1), (plus, +1)):
        if piece is None or not piece.is_full_dimensional:
            continue
        rel = piece.rel_vertices()
        for cell in piece.triangulation():
            vol = simplex_volume([rel[i] for i in cell])
            nodes = sorted(vdot(x, piece.vertices[i]) for i in cell)
            out.append((nodes, vol, branch))
    return out


def moment_transform(P: Polytope, x, weight: WeightSpec):
    """M_zeta P(x).  Exact Fraction on the exact path, float otherwise.

    Lower-dimensional bodies integrate to 0 (the transform is simple).  The
    zero direction is allowed only for weights smooth on all of R, where the
    value is zeta(0) vol(P).
    """
    if not weight.integrable:
        raise ValueError(f"weight kind {weight.kind!r} cannot be integrated")
    x = as_vector(x)
    if weight.reflect:
        return moment_transform(P, vneg(x), _unreflected(weight))
    if not P.is_full_dimensional:
        return ZERO if weight.is_exact else 0.0
    if is_zero_vector(x):
        if not weight.smooth:
            raise ValueError("x = o needs a weight smooth at 0")
        return weight.value(ZERO) * volume(P)

    if weight.is_exact:
        n = P.n
        F = weight.exact_pieces().antiderivative_order(n)
        total = ZERO
        rel = P.rel_vertices()
        fact = Fraction(math.factorial(n))
        for simplex in P.triangulation():
            vol = simplex_volume([rel[i] for i in simplex])
            nodes = sorted(vdot(x, P.vertices[i]) for i in simplex)
            total += fact * vol * dd_fraction(nodes, F.deriv_value)
        return total

    total = 0.0
    for simplex in P.triangulation():
        total += simplex_moment([P.vertices[i] for i in simplex], x, weight)
    return total


def measure_transform(P: Polytope, x, mu: MeasureSpec):
    """M_mu P(x) = (1/|x|) integral V_{n-1}(P cap H_{x,t}) dmu(t).

    The density part is M_density P(x) by Fubini; atoms c at t contribute
    c V_{n-1}(P cap H_{x,t})/|x| = c s(t) read off the exact section
    profile.  Continuous measures see 0 on lower-dimensional bodies; atoms
    there are distributional and rejected.
    """
    x = as_vector(x)
    if is_zero_vector(x):
        raise ValueError("measure transform needs x != o")
    if not P.is_full_dimensional:
        if mu.atoms:
            raise ValueError("atomic measure on a lower-dimensional body "
                             "is not function-valued")
        exact = mu.density is None or mu.density.is_exact
        return ZERO if exact else 0.0

    total = ZERO if (mu.density is None or mu.density.is_exact) else 0.0
    if mu.density is not None:
        total = moment_transform(P, x, mu.density)
    if mu.atoms:
        prof = section_profile(P, x)
        for t, c in mu.atoms:
            total += c * prof.section_value(t)
    return total


def laplace_transform(P: Polytope, x) -> float:
    """integral_P e^{-x.y} dy; defined for every x including x = o."""
    from .weights import exp_neg
    return moment_transform(P, x, exp_neg())
