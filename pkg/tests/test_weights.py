"""WeightSpec / MeasureSpec semantics and serialization."""

import json
import math
from fractions import Fraction

import pytest

from valgeo.slicing import weights as W


def test_pointwise_values():
    assert W.power(2).value(Fraction(-3, 2)) == Fraction(9, 4)
    assert W.polynomial([1, 0, Fraction(3, 2)]).value(2) == 7
    assert W.indicator(0, 1).value(0) == 1
    assert W.indicator(0, 1).value(1) == 1
    assert W.indicator(0, 1).value(Fraction(11, 10)) == 0
    assert W.signed_power(2).value(-1) == 0
    assert W.signed_power(2).value(2) == 4
    assert W.signed_power(0).value(0) == 0          # strict on the pos side
    assert W.signed_power(2, side="neg").value(-2) == 4
    assert W.abs_power(3).value(-2) == 8
    assert W.log_abs().value(0) == 0.0              # the log|t| convention at 0
    assert W.log_abs().value(-1) == 0.0
    assert W.exp_neg().value(0) == 1.0
    tab = W.tabulated([(0, 5), (1, -1)], default=Fraction(1, 3))
    assert tab.value(0) == 5 and tab.value(2) == Fraction(1, 3)


def test_reflection():
    zeta = W.polynomial([0, 1], reflect=True)      # zeta(t) = -t
    assert zeta.value(3) == -3
    ind = W.indicator(0, 1, reflect=True)          # 1 on [-1, 0]
    assert ind.value(-1) == 1 and ind.value(Fraction(1, 2)) == 0
    assert ind.value(0) == 1
    sp = W.signed_power(1, reflect=True)           # t -> max(-t, 0)
    assert sp.value(-2) == 2 and sp.value(2) == 0


def test_reflected_pieces_match_pointwise():
    for spec in (W.indicator(Fraction(-1, 2), 1), W.signed_power(2),
                 W.abs_power(1), W.polynomial([1, 2, 3])):
        refl = W.WeightSpec(**{**spec.__dict__, "reflect": True})
        pw = refl.exact_pieces()
        for t in (Fraction(-2), Fraction(-1), Fraction(-1, 2), Fraction(0),
                  Fraction(1, 2), Fraction(1), Fraction(2)):
            assert pw.value(t) == refl.value(t), (spec.kind, t)


def test_validation():
    with pytest.raises(ValueError):
        W.abs_power(-1.25)
    with pytest.raises(ValueError):
        W.abs_power(0)
    with pytest.raises(ValueError):
        W.indicator(1, 0)
    with pytest.raises(ValueError):
        W.signed_power(-1)
    with pytest.raises(ValueError):
        W.signed_power(1, side="up")
    with pytest.raises(ValueError):
        W.power(-2)


def test_exactness_classification():
    assert W.abs_power(2).is_exact
    assert not W.abs_power(0.5).is_exact
    assert W.signed_power(3).is_exact
    assert not W.signed_power(0.5).is_exact
    assert not W.exp_neg().is_exact
    assert W.tabulated([(0, 1)]).is_exact
    assert not W.tabulated([(0, 1)]).integrable


def test_json_round_trip():
    specs = [
        W.power(2), W.abs_power(-0.5), W.exp_neg(), W.log_abs(),
        W.indicator(0, 1), W.polynomial(["1", "0", "3/2"]),
        W.signed_power(2, "neg"), W.signed_power(0.5),
        W.tabulated([("1/2", "7")], default="1/3"),
        W.polynomial([1], reflect=True),
    ]
    for spec in specs:
        again = W.weight_from_dict(json.loads(json.dumps(spec.to_dict())))
        assert again == spec, spec


def test_measure_round_trip_and_flags():
    mu = W.measure(W.power(1), atoms=[("0", "1"), ("1/2", "-2")])
    again = W.measure_from_dict(json.loads(json.dumps(mu.to_dict())))
    assert again == mu
    assert not mu.is_continuous
    assert W.lebesgue().is_continuous
    assert W.dirac(0).atoms == ((Fraction(0), Fraction(1)),)
    with pytest.raises(ValueError):
        W.measure(W.tabulated([(0, 1)]))


def test_antiderivative_smoothness():
    # the m-fold antiderivative of an indicator is C^{m-1}: derivative values
    # from both sides agree at the knots up to order m-1
    zeta = W.indicator(0, 1)
    m = 3
    F = zeta.exact_pieces().antiderivative_order(m)
    eps = Fraction(1, 10 ** 9)
    for knot in (Fraction(0), Fraction(1)):
        for order in range(m):
            left = F.deriv_value(knot - eps, order)
            right = F.deriv_value(knot + eps, order)
            assert abs(left - right) < Fraction(1, 10 ** 6)
    # and F''' recovers the indicator in the interior of each piece
    assert F.deriv_value(Fraction(1, 2), m) == 1
    assert F.deriv_value(Fraction(2), m) == 0
