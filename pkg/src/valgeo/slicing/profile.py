"""Exact hyperplane-section profiles of full-dimensional polytopes.

For P full-dimensional and x != 0, the profile stores the function

    s(t) = d/dt vol_n {y in P : x . y <= t},

an exact piecewise polynomial of degree <= n-1 with breakpoints at the
distinct vertex heights x . v.  The (n-1)-volume of the section satisfies
V_{n-1}(P cap H_{x,t}) = |x| s(t), so every |x| prefactor in the section
transforms cancels against s and the whole object stays rational.

Per simplex the piece is n vol(S) [a_0..a_n](a - t)_+^{n-1}: a divided
difference of truncated powers taken in the node variable, polynomial in t
on every interval between breakpoints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ..geometry.linalg import Vector, as_vector, is_zero_vector, vdot
from ..geometry.polytope import Polytope, simplex_volume
from . import poly as pp
from .divdiff import dd_poly
from .weights import WeightSpec, PiecewisePoly

ZERO = Fraction(0)


@dataclass(frozen=True)
class SectionProfile:
    direction: Vector
    breakpoints: tuple[Fraction, ...]
    pieces: tuple[pp.Poly, ...]   # len(breakpoints) - 1 polynomials

    @property
    def support(self) -> tuple[Fraction, Fraction]:
        return self.breakpoints[0], self.breakpoints[-1]

    def piece_index(self, t: Fraction) -> int | None:
        if t < self.breakpoints[0] or t > self.breakpoints[-1]:
            return None
        for k in range(len(self.pieces)):
            if t < self.breakpoints[k + 1]:
                return k
        return len(self.pieces) - 1

    def value(self, t) -> Fraction:
        """s(t) with pieces taken on [b_k, b_{k+1}); 0 outside the support."""
        t = Fraction(t)
        k = self.piece_index(t)
        return pp.peval(self.pieces[k], t) if k is not None else ZERO

    def section_value(self, t) -> Fraction:
        """V_{n-1}(P cap H_{x,t}) / |x|, exactly, for every t.

        On the open support the profile is continuous and this is value(t);
        at the two endpoints the section is the touching face, whose
        (n-1)-volume is the one-sided limit from inside the body.
        """
        t = Fraction(t)
        if t < self.breakpoints[0] or t > self.breakpoints[-1]:
            return ZERO
        if t == self.breakpoints[-1]:
            return pp.peval(self.pieces[-1], t)
        return self.value(t)

    def mass(self) -> Fraction:
        """integral of s = vol(P), exactly."""
        total = ZERO
        for k, piece in enumerate(self.pieces):
            total += pp.pintegral(piece, self.breakpoints[k], self.breakpoints[k + 1])
        return total

    def integrate_against(self, weight: WeightSpec) -> Fraction:
        """Exact integral of s(t) zeta(t) dt for exact-path weights."""
        zeta = weight.exact_pieces()
        return integrate_pieces_product(self, zeta)


def section_profile(P: Polytope, x) -> SectionProfile:
    x = as_vector(x)
    if is_zero_vector(x):
        raise ValueError("direction must be nonzero")
    if not P.is_full_dimensional:
        raise ValueError("section profile of a lower-dimensional body is "
                         "a distribution, not a function")
    n = P.n
    heights = [vdot(x, v) for v in P.vertices]
    breakpoints = tuple(sorted(set(heights)))
    if len(breakpoints) == 1:
        raise AssertionError("full-dimensional body with constant height")

    simplices = []
    rel = P.rel_vertices()
    for simplex in P.triangulation():
        vol = simplex_volume([rel[i] for i in simplex])
        nodes = sorted(heights[i] for i in simplex)
        simplices.append((nodes, vol))

    deg = n - 1
    pieces = []
    for k in range(len(breakpoints) - 1):
        lo, hi = breakpoints[k], breakpoints[k + 1]
        total: pp.Poly = pp.PZERO
        for nodes, vol in simplices:
            if nodes[-1] <= lo or nodes[0] >= hi:
                continue

            def value_fn(a, order, _lo=lo):
                # node value of d^order/da^order (a - t)_+^{deg} for t in (lo, hi)
                if a <= _lo:
                    return pp.PZERO
                if order > deg:
                    return pp.PZERO
                coeff = Fraction(math.factorial(deg), math.factorial(deg - order))
                return pp.pscale(coeff, pp.ppow((a, Fraction(-1)), deg - order))

            contrib = dd_poly(nodes, value_fn)
            total = pp.padd(total, pp.pscale(Fraction(n) * vol, contrib))
        pieces.append(total)
    return SectionProfile(tuple(x), breakpoints, tuple(pieces))


def integrate_pieces_product(profile: SectionProfile, zeta: PiecewisePoly) -> Fraction:
    """Exact integral of s(t) * zeta(t) over the profile support."""
    cuts = sorted({*profile.breakpoints,
                   *(b for b in zeta.breakpoints
                     if profile.breakpoints[0] < b < profile.breakpoints[-1])})
    total = ZERO
    for lo, hi in zip(cuts, cuts[1:]):
        mid_num = (lo + hi) / 2
        k = profile.piece_index(mid_num)
        product = pp.pmul(profile.pieces[k], zeta.piece_at(mid_num))
        total += pp.pintegral(product, lo, hi)
    return total


def quadrature_against_profile(profile: SectionProfile, weight: WeightSpec,
                               tol: float = 1e-9) -> tuple[float, float]:
    """Adaptive quadrature of s(t) zeta(t) dt for float-path weights.

    Gauss-Kronrod adaptive integration per polynomial piece, with the
    integrable endpoint singularity of |t|^p (p < 0) removed by the
    substitution u = t^{1+p} so the transformed integrand is bounded.
    Returns (value, error_estimate); raises RuntimeError carrying the best
    estimate when the requested tolerance cannot be certified.
    """
    from scipy import integrate as sci

    if weight.kind == "tabulated":
        raise ValueError("tabulated weights cannot be integrated")

    cuts = sorted({*profile.breakpoints,
                   *((ZERO,) if profile.breakpoints[0] < 0 < profile.breakpoints[-1]
                     else ())})
    total, err_total = 0.0, 0.0
    p = weight.p
    singular = weight.kind in ("abs_power", "signed_power") and \
        not weight.is_exact and float(p) < 0

    for lo_f, hi_f in zip(cuts, cuts[1:]):
        k = profile.piece_index((lo_f + hi_f) / 2)
        piece = tuple(float(c) for c in profile.pieces[k])

        def s_val(t, _piece=piece):
            acc = 0.0
            for c in reversed(_piece):
                acc = acc * t + c
            return acc

        lo, hi = float(lo_f), float(hi_f)
        if singular and lo_f == 0:
            # int_0^h s(t) zeta(t) t^p dt with u = t^(1+p)
            q = 1.0 + float(p)
            zeta_extra = _nonsingular_factor(weight, +1)
            val, err = sci.quad(
                lambda u: s_val(u ** (1 / q)) * zeta_extra(u ** (1 / q)) / q,
                0.0, hi ** q, epsabs=tol, epsrel=tol, limit=200)
        elif singular and hi_f == 0:
            q = 1.0 + float(p)
            zeta_extra = _nonsingular_factor(weight, -1)
            val, err = sci.quad(
                lambda u: s_val(-(u ** (1 / q))) * zeta_extra(-(u ** (1 / q))) / q,
                0.0, (-lo) ** q, epsabs=tol, epsrel=tol, limit=200)
        else:
            val, err = sci.quad(lambda t: s_val(t) * float(weight.value(Fraction(t))),
                                lo, hi, epsabs=tol, epsrel=tol, limit=200)
        total += val
        err_total += err
    if err_total > max(tol, tol * abs(total)) * 50:
        raise RuntimeError(
            f"quadrature tolerance {tol} unachievable: best estimate "
            f"{total!r} with error {err_total!r}")
    return total, err_total


def _nonsingular_factor(weight: WeightSpec, sign: int):
    """zeta(t) / |t|^p for signed/abs power weights: the bounded remainder."""
    if weight.kind == "abs_power":
        return lambda t: 1.0
    # signed_power: zero on the wrong side
    want_pos = (weight.side == "pos") != weight.reflect
    if (sign > 0) == want_pos:
        return lambda t: 1.0
    return lambda t: 0.0
