"""Root finding for monic polynomials over Q(zeta_M)(q^(1/N)).

Strategy: cheap structural routes first (linear, binomial with constructive
radicals in cyclotomic/ramified enlargements), then a sympy-backed
factorization over the cyclotomic coefficient field with q^(1/N) as a
transcendental.  Roots outside every reachable enlargement raise
EigenvalueNotInField.
"""

from __future__ import annotations

from fractions import Fraction

import sympy

from .cyclotomic import CycElem, _lcm, cyclotomic_poly
from .errors import EigenvalueNotInField
from .scalars import ONE, ZERO, CoeffScalar, scalar, zeta


def _monicize(coeffs):
    lead = coeffs[-1]
    if lead.is_zero():
        raise ValueError("leading coefficient is zero")
    if lead.is_one():
        return coeffs
    inv = lead.inv()
    return [c * inv for c in coeffs]


def _synthetic_div(coeffs, root):
    """Divide a monic polynomial by (x - root); returns monic quotient."""
    out = [ZERO] * (len(coeffs) - 1)
    carry = coeffs[-1]
    for i in range(len(coeffs) - 2, -1, -1):
        out[i] = carry
        carry = coeffs[i] + root * carry
    # carry is the remainder, i.e. p(root); callers assert it vanishes
    return out, carry


def _binomial_roots(coeffs):
    """Roots of x^d - a when only the extreme coefficients are nonzero."""
    d = len(coeffs) - 1
    if d < 2:
        return None
    if any(not coeffs[i].is_zero() for i in range(1, d)):
        return None
    a = -coeffs[0]
    if a.is_zero():
        return [(ZERO, d)]
    base = a.nth_root(d)
    if base is None:
        return None
    return [(base * zeta(d, j), 1) for j in range(d)]


def _quadratic_roots(coeffs):
    if len(coeffs) != 3:
        return None
    b, c = coeffs[1], coeffs[0]
    disc = b * b - scalar(4) * c
    if disc.is_zero():
        half = scalar(Fraction(-1, 2))
        return [(b * half, 2)]
    s = disc.nth_root(2)
    if s is None:
        return None
    half = scalar(Fraction(1, 2))
    return [((s - b) * half, 1), ((-s - b) * half, 1)]


def _scalar_to_sympy(c: CoeffScalar, m: int, n: int, t, zsym):
    c = c._lift(m, n)
    num = _poly_to_sympy(c.num, m, t, zsym)
    den = _poly_to_sympy(c.den, m, t, zsym)
    return t ** c.e * num / den


def _poly_to_sympy(p, m, t, zsym):
    from .scalars import QPoly
    expr = sympy.Integer(0)
    if isinstance(p, QPoly):
        for i, v in enumerate(p.vec):
            if v:
                expr += sympy.Rational(v, p.den) * t ** i
        return expr
    for i, cyc in enumerate(p):
        if cyc.is_zero():
            continue
        coeff = sympy.Integer(0)
        for j, fr in enumerate(cyc.vec):
            if fr:
                coeff += sympy.Rational(fr.numerator, fr.denominator) \
                    * zsym ** j
        expr += coeff * t ** i
    return expr


def _sympy_to_scalar(expr, m: int, n: int, t, zsym) -> CoeffScalar:
    num, den = sympy.fraction(sympy.cancel(sympy.together(expr)))
    return _sympy_poly_to_scalar(num, m, n, t, zsym) \
        / _sympy_poly_to_scalar(den, m, n, t, zsym)


def _sympy_poly_to_scalar(expr, m, n, t, zsym) -> CoeffScalar:
    if m > 1:
        dom = sympy.QQ.algebraic_field(zsym)
        poly = sympy.Poly(expr, t, domain=dom)
        deg = len(cyclotomic_poly(m)) - 1
        cycs = []
        for anp in reversed(poly.rep.to_list()):
            lst = [Fraction(int(v.numerator), int(v.denominator))
                   for v in anp.to_list()]
            lst.reverse()  # ANP lists are high-to-low
            lst += [Fraction(0)] * (deg - len(lst))
            cycs.append(CycElem(m, tuple(lst)))
        if not cycs:
            return ZERO
        return CoeffScalar(m, n, 0, tuple(cycs),
                           (CycElem.one(m),) + (CycElem.zero(m),) * 0)
    poly = sympy.Poly(expr, t, domain=sympy.QQ)
    fracs = [Fraction(int(v.numerator), int(v.denominator))
             for v in reversed(poly.rep.to_list())]
    cycs = tuple(CycElem.from_rational(f) for f in fracs)
    if not cycs:
        return ZERO
    return CoeffScalar(1, n, 0, cycs, (CycElem.one(1),))


def _sympy_roots(coeffs):
    m = 1
    n = 1
    for c in coeffs:
        m = _lcm(m, c.m)
        n = _lcm(n, c.n)
    t, x = sympy.symbols("_t _x")
    zsym = sympy.exp(2 * sympy.I * sympy.pi / m) if m > 1 else None
    expr = sympy.Integer(0)
    for i, c in enumerate(coeffs):
        if not c.is_zero():
            expr += _scalar_to_sympy(c, m, n, t, zsym) * x ** i
    num, _ = sympy.fraction(sympy.together(expr))
    num = sympy.expand(num)
    if m > 1:
        factors = sympy.factor_list(num, x, t, extension=[zsym])
    else:
        factors = sympy.factor_list(num, x, t)
    roots = []
    for factor, mult in factors[1]:
        poly_x = sympy.Poly(factor, x)
        dx = poly_x.degree()
        if dx == 0:
            continue
        if dx == 1:
            lead, const = poly_x.all_coeffs()
            root = _sympy_to_scalar(-sympy.together(const / lead),
                                    m, n, t, zsym)
            roots.append((root, mult))
            continue
        # an irreducible factor of higher degree: try constructive radicals
        sub_coeffs = [
            _sympy_to_scalar(c, m, n, t, zsym)
            for c in reversed(poly_x.all_coeffs())
        ]
        sub_coeffs = _monicize(sub_coeffs)
        sub = _binomial_roots(sub_coeffs) or _quadratic_roots(sub_coeffs)
        if sub is None:
            raise EigenvalueNotInField(
                f"irreducible factor of degree {dx} over the reachable field")
        for root, k in sub:
            roots.append((root, mult * k))
    return roots


def find_roots(coeffs):
    """All roots, with multiplicity, of a polynomial over the scalar field.

    coeffs are CoeffScalar, low-to-high.  Raises EigenvalueNotInField if the
    polynomial does not split over any reachable cyclotomic/ramified
    enlargement of the coefficient field.
    """
    coeffs = [c if isinstance(c, CoeffScalar) else scalar(c) for c in coeffs]
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    if len(coeffs) <= 1:
        raise ValueError("constant polynomial has no roots")
    coeffs = _monicize(coeffs)
    deg = len(coeffs) - 1
    if deg == 1:
        return [(-coeffs[0], 1)]
    out = _binomial_roots(coeffs)
    if out is not None:
        return _verify(coeffs, out)
    if deg == 2:
        out = _quadratic_roots(coeffs)
        if out is not None:
            return _verify(coeffs, out)
    return _verify(coeffs, _sympy_roots(coeffs))


def _verify(coeffs, roots):
    total = sum(mult for _, mult in roots)
    if total != len(coeffs) - 1:
        raise EigenvalueNotInField(
            "polynomial does not split over the reachable field")
    # exact check: deflate by every root
    work = list(coeffs)
    for root, mult in roots:
        for _ in range(mult):
            work, rem = _synthetic_div(work, root)
            assert rem.is_zero(), "root verification failed"
    return roots
