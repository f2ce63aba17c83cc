"""Divided differences: exact tables, confluence, node merging."""

from fractions import Fraction

from valgeo.slicing import weights as W
from valgeo.slicing.divdiff import (
    dd_fraction, divided_difference, merge_close_nodes,
)


def test_exact_polynomial_divided_difference():
    # [0,1,2]F for F(t)=t^2 is the leading coefficient 1
    F = W.polynomial([0, 0, 1]).exact_pieces()
    nodes = [Fraction(0), Fraction(1), Fraction(2)]
    assert dd_fraction(nodes, F.deriv_value) == 1
    # degree below the order of the difference: 0
    F1 = W.polynomial([3, 2]).exact_pieces()
    assert dd_fraction(nodes, F1.deriv_value) == 0


def test_confluent_equals_taylor_coefficient():
    # [a,a,a]F = F''(a)/2
    F = W.polynomial([0, 0, 0, 1]).exact_pieces()   # t^3
    a = Fraction(2)
    val = dd_fraction([a, a, a], F.deriv_value)
    assert val == 3 * a                              # (6a)/2! = 3a


def test_confluent_matches_perturbed_nodes():
    # spec invariant: repeated nodes equal the perturbed-node limit within
    # 1e-7 for a perturbation of 1e-5
    def antideriv(t, order):
        import math
        from mpmath import mpf, exp
        return (-1) ** (3 - order) * exp(-mpf(str(t)))

    exact_nodes = [Fraction(1), Fraction(1), Fraction(1), Fraction(2)]
    eps = Fraction(1, 10 ** 5)
    perturbed = [Fraction(1) - eps, Fraction(1), Fraction(1) + eps, Fraction(2)]
    confluent = divided_difference(exact_nodes, antideriv, exact=False)
    spread = divided_difference(perturbed, antideriv, exact=False)
    assert abs(float(confluent) - float(spread)) < 1e-7


def test_merge_close_nodes():
    merged = merge_close_nodes([0.0, 1e-12, 1.0, 1.0 + 1e-12, 2.0])
    assert merged[0] == merged[1]
    assert merged[2] == merged[3]
    assert merged[4] == 2.0
    apart = merge_close_nodes([0.0, 1e-3, 1.0])
    assert len(set(apart)) == 3


def test_public_divided_difference_exact_path():
    F = W.indicator(0, 1).exact_pieces().antiderivative_order(2)
    nodes = [Fraction(-1), Fraction(0), Fraction(2)]
    val = divided_difference(nodes, F)
    # oracle: the triangle conv((-1,0), (0,1), (2,0)) has heights (-1, 0, 2)
    # along e1, area 3/2, and strip area int_0^1 (1 - t/2) dt = 3/4, so
    # 2! * (3/2) * dd = 3/4 forces dd = 1/4
    assert val == Fraction(1, 4)
