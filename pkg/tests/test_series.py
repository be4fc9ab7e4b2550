from fractions import Fraction

import pytest

from qdiffeq.errors import ZeroDivisor
from qdiffeq.scalars import ONE, q_power, scalar
from qdiffeq.series import (
    GlobalSeries,
    PuiseuxSeries,
    phi_apply,
    series,
    theta,
)


def test_phi_monomial():
    z = PuiseuxSeries.z_power(1)
    assert phi_apply(z) == series({1: q_power(1)})
    f = series({Fraction(1, 2): 1, 2: 3})
    expected = series({Fraction(1, 2): q_power(Fraction(1, 2)),
                       2: scalar(3) * q_power(2)})
    assert phi_apply(f) == expected
    assert phi_apply(f, 0) == f


def test_phi_inverse_power():
    f = series({3: 5})
    assert phi_apply(phi_apply(f, 2), -2) == f


def test_phi_is_ring_morphism():
    f = series({0: 1, 1: 2, Fraction(3, 2): 5}, prec=4)
    g = series({-1: 3, 2: 7}, prec=4)
    assert phi_apply(f * g).agrees_with(phi_apply(f) * phi_apply(g))


def test_mul_basic():
    one_plus = series({0: 1, 1: 1})
    one_minus = series({0: 1, 1: -1})
    assert one_plus * one_minus == series({0: 1, 2: -1})
    assert (PuiseuxSeries.z_power(Fraction(1, 2))
            * PuiseuxSeries.z_power(Fraction(1, 2))) == series({1: 1})


def test_mul_precision_rule():
    f = series({0: 1, 1: 1}, prec=2)
    g = series({0: 1, 1: -1}, prec=2)
    prod = f * g
    assert prod.prec == 2
    assert prod == series({0: 1}, prec=2)
    # valuation shifts the usable precision
    h = series({2: 1}, prec=5)
    k = series({1: 1})  # exact monomial
    assert (h * k).prec == 6


def test_valuation_additive():
    f = series({2: 3, 5: 1})
    g = series({-1: 2, 0: 1})
    assert (f * g).valuation() == 1


def test_inv_monomial():
    f = series({1: 1})
    assert f.inv() == series({-1: 1})
    g = series({2: q_power(1)})
    assert g.inv() == series({-2: q_power(-1)})


def test_inv_geometric():
    f = series({0: 1, 1: -1})  # 1 - z
    g = f.inv(prec=6)
    for k in range(6):
        assert g.coefficient(k) == ONE
    assert (f * g - 1).is_zero()


def test_inv_respects_input_precision():
    f = series({0: 1, 1: -1}, prec=4)
    g = f.inv()
    assert g.prec == 4
    assert (f * g - 1).is_zero()


def test_inv_of_zero_raises():
    with pytest.raises(ZeroDivisor):
        PuiseuxSeries.zero(prec=4).inv()


def test_precision_marker_addition():
    f = series({0: 1, 1: 1, 5: 9}, prec=None) + PuiseuxSeries.zero(prec=2)
    assert f.prec == 2
    assert f == series({0: 1, 1: 1}, prec=2)


def test_theta_coefficients():
    th = theta(5)
    assert th.coefficient(0) == ONE
    assert th.coefficient(1) == scalar(-1)
    assert th.coefficient(-2) == q_power(3)
    assert th.coefficient(2) == q_power(1)
    assert th.coefficient(-1) == -q_power(1)


def test_theta_functional_equation():
    th = theta(8)
    lhs = phi_apply(th).mul_laurent({1: scalar(-1)})  # (-z) * phi(theta)
    assert lhs.agrees_with(th)


def test_global_series_window_rules():
    g = GlobalSeries(-3, 3, {0: ONE, 2: scalar(5)})
    shifted = g.mul_laurent({1: ONE, 0: ONE})
    assert shifted.lo == -2 and shifted.hi == 3
    # (z + 1) * g at z^3: g(2) + g(3) = 5 + 0
    assert shifted.coefficient(3) == scalar(5)
