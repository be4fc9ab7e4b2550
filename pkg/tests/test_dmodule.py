import random
from fractions import Fraction

import pytest

from qdiffeq.dmodule import (
    DiffModule,
    companion,
    construct,
    cyclic_vector,
    gauge_transform,
    unipotent_module,
)
from qdiffeq.errors import NonMonic
from qdiffeq.scalars import q_power, scalar
from qdiffeq.series import PuiseuxSeries, series
from qdiffeq.skew import SkewOperator, newton_polygon

PHI = SkewOperator.phi_power


def test_rank1_dictionary():
    c = scalar(3)
    mod = companion(PHI(1) - SkewOperator({0: c}))
    assert mod.mat == ((PuiseuxSeries.constant(c.inv()),),)
    op, _, _ = cyclic_vector(mod)
    assert op == PHI(1) - SkewOperator({0: c})


def test_cyclic_companion_roundtrip():
    z = series({1: 1})
    op = SkewOperator({2: 1, 1: series({0: -1, 1: -1}), 0: z})
    mod = companion(op)
    back, _, _ = cyclic_vector(mod)
    assert back == op


def test_companion_requires_monic():
    with pytest.raises(NonMonic):
        companion(SkewOperator({1: scalar(2), 0: 1}))


def test_cyclic_diag_slopes():
    mod = DiffModule(((series({0: 1}), series({})),
                      (series({}), series({-1: 1}))))
    op, _, _ = cyclic_vector(mod)
    assert newton_polygon(op).slopes() == [0, 1]


def test_unipotent_module_operator():
    u2 = unipotent_module(2)
    op, _, _ = cyclic_vector(u2)
    # (PHI - 1)^2
    assert op == (PHI(1) - 1) * (PHI(1) - 1)


def test_constructions_rank1():
    c1, c2 = scalar(2), scalar(5)
    m1 = DiffModule.from_phi_scalar(PuiseuxSeries.constant(c1))
    m2 = DiffModule.from_phi_scalar(PuiseuxSeries.constant(c2))
    ds = construct("dsum", m1, m2)
    assert ds.mat[0][0].coefficient(0) == c1.inv()
    assert ds.mat[1][1].coefficient(0) == c2.inv()
    tn = construct("tensor", m1, m2)
    assert tn.mat == ((PuiseuxSeries.constant((c1 * c2).inv()),),)


def test_dual_example():
    mod = DiffModule.from_phi_scalar(series({1: -1}))  # PHI e = (-z) e
    dual = construct("dual", mod)
    # dual satisfies PHI e = (-z)^(-1) e, i.e. stored matrix is (-z)
    assert dual.mat == ((series({1: -1}),),)


def test_hom_dimensions():
    m1 = unipotent_module(2)
    m2 = DiffModule.from_phi_scalar(PuiseuxSeries.constant(scalar(3)))
    hom = construct("hom", m1, m2)
    assert hom.dim == 2


def test_gauge_identity():
    mod = unipotent_module(2)
    same = gauge_transform(mod, ((1, 0), (0, 1)))
    assert same == mod


def test_gauge_rank1_shift():
    c = scalar(7)
    mod = DiffModule(((PuiseuxSeries.constant(c),),), check=False)
    out = gauge_transform(mod, ((series({1: 1}),),))
    assert out.mat[0][0] == PuiseuxSeries.constant(c * q_power(1))


def _random_gauge(rng, n):
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == j:
                row.append(series({0: 1, rng.randint(1, 2): rng.randint(-2, 2)}))
            else:
                e = rng.randint(0, 2)
                row.append(series({e: rng.randint(-1, 1)}))
        rows.append(tuple(row))
    return tuple(rows)


def test_gauge_roundtrip_random():
    rng = random.Random(97)
    z = series({1: 1})
    op = SkewOperator({2: 1, 1: series({0: -1, 1: -1}), 0: z})
    mod = companion(op)
    from qdiffeq import linalg
    for _ in range(5):
        u = _random_gauge(rng, 2)
        try:
            u_inv = linalg.mat_inv(u)
        except Exception:
            continue
        moved = gauge_transform(mod, u)
        back = gauge_transform(moved, u_inv)
        assert linalg.mat_eq_to_precision(back.mat, mod.mat)


def test_polygon_gauge_invariant():
    rng = random.Random(98)
    z = series({1: 1})
    op = SkewOperator({2: 1, 1: series({0: -1, 1: -1}), 0: z})
    mod = companion(op)
    base = newton_polygon(op).slopes()
    for _ in range(4):
        u = _random_gauge(rng, 2)
        try:
            moved = gauge_transform(mod, u)
            op2, _, _ = cyclic_vector(moved)
        except Exception:
            continue
        assert newton_polygon(op2).slopes() == base
