from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qdiffeq.errors import ZeroDivisor, ZeroScalar
from qdiffeq.scalars import (
    ONE,
    ZERO,
    CoeffScalar,
    normalize_scalar,
    q_power,
    q_power_class,
    scalar,
    torsion_order,
    zeta,
)


def test_rational_arithmetic():
    a = scalar(Fraction(3, 4))
    b = scalar(2)
    assert a + b == scalar(Fraction(11, 4))
    assert a * b == scalar(Fraction(3, 2))
    assert (a / b) * b == a
    assert a - a == ZERO


def test_q_power_arithmetic():
    assert q_power(2) * q_power(Fraction(1, 2)) == q_power(Fraction(5, 2))
    assert q_power(1) / q_power(3) == q_power(-2)
    assert q_power(0) == ONE
    c = q_power(1) + q_power(2)
    assert c.w() == 1
    assert (c / q_power(1)) == ONE + q_power(1)


def test_zeta_arithmetic():
    z4 = zeta(4)
    assert z4 * z4 == scalar(-1)
    z3 = zeta(3)
    assert z3 ** 3 == ONE
    assert z3 ** 2 + z3 + 1 == ZERO  # minimal polynomial
    mixed = z3 * z4
    assert mixed ** 12 == ONE
    assert zeta(6) == -zeta(3, 2)


def test_zero_behaviour():
    assert ZERO + ONE == ONE
    assert ZERO * q_power(5) == ZERO
    with pytest.raises(ZeroDivisor):
        ONE / ZERO
    with pytest.raises(ZeroScalar):
        ZERO.w()
    with pytest.raises(ZeroScalar):
        normalize_scalar(ZERO)


def test_normalize_monomial():
    k, u = normalize_scalar(scalar(3) * q_power(2))
    assert k == 2 and u == scalar(3)


def test_normalize_polynomial_factor():
    k, u = normalize_scalar(q_power(1) + q_power(2))
    assert k == 1
    assert u == ONE + q_power(1)
    assert u.w() == 0


def test_normalize_unit():
    k, u = normalize_scalar(zeta(4))
    assert k == 0 and u == zeta(4)


def test_normalize_shift_property():
    c = (scalar(5) + q_power(1)) * q_power(Fraction(1, 3))
    k, u = normalize_scalar(c)
    for m in range(-3, 4):
        k2, u2 = normalize_scalar(c * q_power(m))
        assert k2 == k + m
        assert u2 == u


def test_q_power_class():
    assert q_power_class(q_power(2), 1) == 2
    assert q_power_class(zeta(3), 1) is None
    assert q_power_class(q_power(Fraction(3, 2)), 2) == 3
    assert q_power_class(q_power(Fraction(1, 2)), 3) is None
    assert q_power_class(scalar(2) * q_power(1), 1) is None


def test_torsion_order():
    assert torsion_order(zeta(3) * q_power(5)) == 3
    assert torsion_order(scalar(2)) is None
    assert torsion_order(q_power(Fraction(1, 2))) == 2
    assert torsion_order(ONE) == 1
    assert torsion_order(zeta(4) * q_power(Fraction(1, 3))) == 12
    assert torsion_order(ONE + q_power(1)) is None


def test_torsion_vs_q_power_class():
    c = zeta(3) * q_power(5)
    n = torsion_order(c)
    assert q_power_class(c ** n, 1) == 15


def test_nth_root():
    c = scalar(8) * q_power(3)
    r = c.nth_root(3)
    assert r is not None and r ** 3 == c
    assert (scalar(-4)).nth_root(2) ** 2 == scalar(-4)
    assert scalar(2).nth_root(2) is None  # sqrt(2) not reachable
    z = zeta(3) * q_power(1)
    r = z.nth_root(2)
    assert r is not None and r ** 2 == z


def test_mixed_field_join():
    c = zeta(3) + q_power(Fraction(1, 2))
    d = zeta(4) * q_power(Fraction(1, 3))
    prod = c * d
    assert prod / d == c
    assert (c + d) - d == c


def test_repr_roundtrip_stability():
    values = [scalar(3), q_power(Fraction(-5, 2)), zeta(8, 3),
              ONE + q_power(1), (ONE + q_power(1)) / (ONE - q_power(1))]
    for v in values:
        assert isinstance(repr(v), str)


# ---------------------------------------------------------------------------
# property tests

_small = st.integers(min_value=-4, max_value=4)


@st.composite
def scalars_strategy(draw):
    kind = draw(st.integers(min_value=0, max_value=3))
    if kind == 0:
        return scalar(Fraction(draw(_small), draw(st.integers(1, 4))))
    if kind == 1:
        return q_power(Fraction(draw(_small), draw(st.integers(1, 3))))
    if kind == 2:
        return zeta(draw(st.sampled_from([3, 4, 6])), draw(st.integers(0, 5)))
    a = scalar(draw(_small))
    b = q_power(Fraction(draw(_small), draw(st.integers(1, 2))))
    return a + b


@settings(max_examples=60, deadline=None)
@given(scalars_strategy(), scalars_strategy(), scalars_strategy())
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a
    if not a.is_zero():
        assert a * a.inv() == ONE


@settings(max_examples=60, deadline=None)
@given(scalars_strategy(), scalars_strategy())
def test_valuation_rules(a, b):
    if a.is_zero() or b.is_zero():
        return
    assert (a * b).w() == a.w() + b.w()
    s = a + b
    if not s.is_zero():
        assert s.w() >= min(a.w(), b.w())
