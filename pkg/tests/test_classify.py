import random
from fractions import Fraction

import pytest

from qdiffeq.classify import (
    Filtration,
    PureType,
    decompose_operator,
    formal_decompose,
    pure_normal_operator,
    rs_normalize,
    slope_filtration,
    split_normal_module,
)
from qdiffeq.dmodule import DiffModule, companion, gauge_transform, \
    unipotent_module
from qdiffeq.errors import NotRegularSingular
from qdiffeq.scalars import ONE, q_power, scalar, zeta
from qdiffeq.series import PuiseuxSeries, series
from qdiffeq.skew import SkewOperator, newton_polygon

PHI = SkewOperator.phi_power


def test_filtration_worked_example():
    z = series({1: 1})
    op = SkewOperator({2: 1, 1: series({0: -1, 1: -1}), 0: z})
    filt = slope_filtration(op, prec=6)
    assert filt.slopes == [0, 1]
    l1, l2 = filt.factors
    # L1 = PHI - (1 - (q-1) z + O(z^2)), L2 = PHI - (z + (q-1) z^2 + O(z^3))
    u = -l1.coefficient(0)
    assert u.coefficient(0) == ONE
    assert u.coefficient(1) == ONE - q_power(1)
    w = -l2.coefficient(0)
    assert w.coefficient(1) == ONE
    assert w.coefficient(2) == q_power(1) - 1
    assert (filt.recompose() - op).is_zero_to_precision()


def test_filtration_pure_input():
    op = PHI(1) - SkewOperator({0: series({2: 5})})
    filt = slope_filtration(op)
    assert len(filt.factors) == 1
    assert filt.factors[0] == op
    assert filt.slopes == [2]


def test_filtration_three_slopes_exact_product():
    # assemble in decreasing-slope order; factorization must flip the order
    f2 = PHI(1) - SkewOperator({0: series({2: 3})})     # slope 2
    f1 = PHI(1) - SkewOperator({0: series({1: -1})})    # slope 1
    f0 = PHI(1) - SkewOperator({0: series({0: 2})})     # slope 0
    op = f2 * f1 * f0
    filt = slope_filtration(op, prec=20)
    assert filt.slopes == [0, 1, 2]
    assert (filt.recompose() - op).is_zero_to_precision()


def test_filtration_half_slope():
    f_half = SkewOperator({2: 1, 0: series({1: -1})})   # slope 1/2
    f0 = PHI(1) - SkewOperator({0: series({0: 3, 1: 1})})
    op = f_half * f0
    filt = slope_filtration(op, prec=16)
    assert filt.slopes == [0, Fraction(1, 2)]
    assert (filt.recompose() - op).is_zero_to_precision()


def test_filtration_idempotent():
    z = series({1: 1})
    op = SkewOperator({2: 1, 1: series({0: -1, 1: -1}), 0: z})
    filt = slope_filtration(op, prec=10)
    again = slope_filtration(filt.recompose(), prec=8)
    for a, b in zip(filt.factors, again.factors):
        assert (a - b).is_zero_to_precision()


def test_rs_normalize_rank1():
    # PHI e = 3 q^2 e  ->  W = (3)
    mod = DiffModule.from_phi_scalar(PuiseuxSeries.constant(
        scalar(3) * q_power(2)))
    nf = rs_normalize(mod)
    assert nf.w == ((scalar(3),),)


def test_rs_normalize_constant_stays():
    mod = DiffModule.from_phi_matrix(
        ((PuiseuxSeries.constant(scalar(2)), PuiseuxSeries.zero()),
         (PuiseuxSeries.zero(), PuiseuxSeries.constant(zeta(3)))))
    nf = rs_normalize(mod)
    assert nf.w == ((scalar(2), scalar(0)), (scalar(0), zeta(3)))
    assert nf.is_semisimple()


def test_rs_normalize_resonant_diag():
    # PHI-eigenvalues {1, q} merge to {1, 1}
    mod = DiffModule.from_phi_matrix(
        ((PuiseuxSeries.one(), PuiseuxSeries.zero()),
         (PuiseuxSeries.zero(), PuiseuxSeries.constant(q_power(1)))))
    nf = rs_normalize(mod)
    assert nf.w == ((ONE, scalar(0)), (scalar(0), ONE))


def test_rs_normalize_series_perturbation():
    # PHI e = (3 + z) e is gauge equivalent to W = (3)
    mod = DiffModule.from_phi_scalar(series({0: 3, 1: 1}))
    nf = rs_normalize(mod)
    assert nf.w == ((scalar(3),),)


def test_rs_normalize_rejects_irregular():
    mod = DiffModule.from_phi_scalar(series({1: -1}))
    with pytest.raises(NotRegularSingular):
        rs_normalize(mod)


def test_decompose_rank1():
    mod = DiffModule.from_phi_scalar(PuiseuxSeries.constant(scalar(5)))
    types = formal_decompose(mod)
    assert types == [PureType(Fraction(0), scalar(5), 1, 1)]


def test_decompose_unipotent():
    u2 = unipotent_module(2)
    types = formal_decompose(u2)
    assert types == [PureType(Fraction(0), ONE, 2, 1)]


def test_decompose_ramified_irreducible():
    # canonical operator of the slope-1/2 class-(c^2) module with c = 2
    c = scalar(2)
    op = pure_normal_operator(Fraction(1, 2), c * c)
    types = decompose_operator(op)
    assert types == [PureType(Fraction(1, 2), c * c, 1, 1)]


def test_decompose_class_equivalence():
    # E(c1 z^(1/2)) ~ E(c2 z^(1/2)) iff c1^2 = c2^2
    c = scalar(3)
    t1 = decompose_operator(pure_normal_operator(Fraction(1, 2), c * c))
    t2 = decompose_operator(pure_normal_operator(Fraction(1, 2),
                                                 (-c) * (-c)))
    assert t1 == t2
    t3 = decompose_operator(pure_normal_operator(Fraction(1, 2),
                                                 scalar(4) * scalar(4)))
    assert t1 != t3


def test_decompose_mixed_slopes_dimension():
    f1 = PHI(1) - SkewOperator({0: series({0: 2})})
    f2 = PHI(1) - SkewOperator({0: series({1: 1})})
    op = f2 * f1
    types = decompose_operator(op)
    assert sorted(t.slope for t in types) == [0, 1]
    assert sum(t.dimension for t in types) == 2


def test_decompose_gauge_invariant():
    rng = random.Random(5)
    u2 = unipotent_module(2)
    base = formal_decompose(u2)
    for _ in range(3):
        u = ((series({0: 1, 1: rng.randint(-2, 2)}), series({2: 1})),
             (series({1: rng.randint(-1, 1)}), series({0: 1})))
        moved = gauge_transform(u2, u)
        assert formal_decompose(moved) == base


def test_split_normal_module_dimensions():
    types = [PureType(Fraction(1, 2), scalar(4), 1, 1),
             PureType(Fraction(0), ONE, 2, 1)]
    mod = split_normal_module(types)
    assert mod.dim == 4
