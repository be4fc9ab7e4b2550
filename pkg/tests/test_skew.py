import random
from fractions import Fraction

import pytest

from qdiffeq.errors import ZeroDivisor, ZeroOperator
from qdiffeq.scalars import q_power, scalar, zeta
from qdiffeq.series import PuiseuxSeries, series
from qdiffeq.skew import (
    NewtonPolygon,
    SkewOperator,
    newton_polygon,
    skew_divmod,
    skew_mul,
)

PHI = SkewOperator.phi_power


def test_twist_rule():
    # PHI * z = q z PHI
    lhs = PHI(1) * SkewOperator({0: series({1: 1})})
    assert lhs == SkewOperator({1: series({1: q_power(1)})})


def test_product_example():
    z = series({1: 1})
    lhs = (PHI(1) - SkewOperator({0: z})) * (PHI(1) - SkewOperator.one())
    expected = SkewOperator({2: 1, 1: series({0: -1, 1: -1}), 0: z})
    assert lhs == expected


def test_identity_neutral():
    op = SkewOperator({2: series({0: 1, 1: 4}), -1: series({-2: 3})})
    assert op * SkewOperator.one() == op
    assert SkewOperator.one() * op == op


def test_divmod_examples():
    z = series({1: 1})
    lhs = SkewOperator({2: 1, 1: series({0: -1, 1: -1}), 0: z})
    q, r = skew_divmod(lhs, PHI(1) - SkewOperator.one(), "right")
    assert r.is_zero()
    assert q == PHI(1) - SkewOperator({0: z})
    q, r = skew_divmod(lhs, lhs, "right")
    assert q == SkewOperator.one() and r.is_zero()
    q, r = skew_divmod(PHI(1) - SkewOperator.one(),
                       PHI(1) - SkewOperator({0: z}), "right")
    assert q == SkewOperator.one()
    assert r == SkewOperator({0: series({0: -1, 1: 1})})  # z - 1


def test_divmod_zero_divisor():
    with pytest.raises(ZeroDivisor):
        skew_divmod(PHI(1), SkewOperator.zero(), "right")


def _random_operator(rng, max_span=2, laurent=True):
    lo = rng.randint(-1, 0) if laurent else 0
    hi = lo + rng.randint(1, max_span)
    coeffs = {}
    for d in range(lo, hi + 1):
        terms = {}
        for _ in range(rng.randint(1, 2)):
            e = rng.randint(-2, 3)
            c = rng.choice([1, 2, -1, 3])
            mono = rng.choice([scalar(c), scalar(c) * q_power(1), zeta(4)])
            terms[e] = terms.get(e, scalar(0)) + mono
        coeffs[d] = series(terms)
    coeffs[hi] = series({rng.randint(-1, 1): 1})
    return SkewOperator(coeffs)


def test_associativity_random():
    rng = random.Random(20260810)
    for _ in range(12):
        a = _random_operator(rng)
        b = _random_operator(rng)
        c = _random_operator(rng)
        assert (a * b) * c == a * (b * c)


def test_divmod_roundtrip_random():
    rng = random.Random(414243)
    for _ in range(25):
        lhs = _random_operator(rng)
        rhs = _random_operator(rng)
        q, r = skew_divmod(lhs, rhs, "right")
        assert (q * rhs + r - lhs).is_zero_to_precision()
        assert r.is_zero() or r.span() < rhs.span()
        q, r = skew_divmod(lhs, rhs, "left")
        assert (rhs * q + r - lhs).is_zero_to_precision()
        assert r.is_zero() or r.span() < rhs.span()


def test_polygon_pure_slope():
    for t in (-2, 0, 1, 3):
        c = scalar(5)
        a0 = series({t: c * scalar((-1) ** (t % 2))})
        op = PHI(1) - SkewOperator({0: a0})
        poly = newton_polygon(op)
        assert poly.segments == [(Fraction(t), 1)]


def test_polygon_mixed():
    z = series({1: 1})
    op = SkewOperator({2: 1, 1: series({0: -1, 1: -1}), 0: z})
    poly = newton_polygon(op)
    assert poly.segments == [(Fraction(0), 1), (Fraction(1), 1)]
    assert poly.slopes() == [0, 1]


def test_polygon_regular_singular():
    op = PHI(1) - SkewOperator({0: series({0: 2, 1: 5})})
    assert newton_polygon(op).segments == [(Fraction(0), 1)]


def test_polygon_half_slope():
    op = SkewOperator({2: 1, 0: series({1: -1})})
    poly = newton_polygon(op)
    assert poly.segments == [(Fraction(1, 2), 2)]


def test_polygon_zero_operator():
    with pytest.raises(ZeroOperator):
        newton_polygon(SkewOperator.zero())


def test_polygon_multiplicative_random():
    rng = random.Random(777)
    for _ in range(20):
        a = _random_operator(rng)
        b = _random_operator(rng)
        pa = newton_polygon(a).slopes()
        pb = newton_polygon(b).slopes()
        pab = newton_polygon(a * b).slopes()
        assert pab == sorted(pa + pb)


def test_apply_operator_to_series():
    op = PHI(1) - SkewOperator.one()
    f = series({0: 1, 1: 1})
    assert op.apply(f) == series({1: q_power(1) - 1})
