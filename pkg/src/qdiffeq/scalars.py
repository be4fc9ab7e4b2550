"""The exact coefficient field Q(zeta_M)(q^(1/N)) with q-order valuation.

A scalar is stored in the canonical shape

    c = t^e * num(t) / den(t),      t = q^(1/N),

where num and den are polynomials over Q(zeta_M) with nonzero constant
terms, den is normalized to constant term 1, and gcd(num, den) = 1.  The
q-order valuation is then w(c) = e/N exactly.  Zero is represented by an
empty numerator.  q is treated as a formal infinitesimal: all magnitude
comparisons of the analytic theory become exact comparisons of w.

M and N are enlarged lazily: binary operations embed both operands into
Q(zeta_lcm(M))(q^(1/lcm(N))) first, and results reduce M and N back down
whenever possible, so plain rational computations never pay for unused
field extensions.  Values are immutable and every operation is pure.

Representation note: for M = 1 the polynomials are flat integer vectors
with a single denominator (QPoly), multiplied by Kronecker substitution
into Python big integers; only M > 1 falls back to vectors of cyclotomic
field elements.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .cyclotomic import CycElem, _lcm
from .errors import ZeroDivisor, ZeroScalar

# ---------------------------------------------------------------------------
# flat rational polynomials (the M = 1 fast path)


class QPoly:
    """Polynomial over Q as integer coefficients with a common denominator.

    Invariants: den > 0, gcd(den, content(vec)) = 1, top coefficient
    nonzero (empty vec is the zero polynomial).
    """

    __slots__ = ("den", "vec")

    def __init__(self, den, vec, reduce=True):
        if reduce:
            n = len(vec)
            while n and not vec[n - 1]:
                n -= 1
            vec = tuple(vec[:n])
            if not vec:
                den = 1
            elif den != 1:
                g = den
                for c in vec:
                    if c:
                        g = math.gcd(g, c)
                        if g == 1:
                            break
                if g > 1:
                    den //= g
                    vec = tuple(c // g for c in vec)
        self.den = den
        self.vec = vec

    def __eq__(self, other):
        return (isinstance(other, QPoly) and self.den == other.den
                and self.vec == other.vec)

    def __hash__(self):
        return hash((self.den, self.vec))

    def __repr__(self):
        return f"QPoly({self.den}, {self.vec})"


QP_ZERO = QPoly(1, ())
QP_ONE = QPoly(1, (1,))


def _intconv(a, b):
    """Integer polynomial product, Kronecker-packed for larger inputs."""
    la, lb = len(a), len(b)
    if la == 0 or lb == 0:
        return ()
    if la == 1:
        s = a[0]
        return tuple(s * x for x in b)
    if lb == 1:
        s = b[0]
        return tuple(s * x for x in a)
    if la * lb <= 80:
        out = [0] * (la + lb - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] += x * y
        return tuple(out)
    ma = max(abs(x) for x in a)
    mb = max(abs(x) for x in b)
    bound = ma * mb * min(la, lb) + 1
    bits = bound.bit_length() + 1
    mask = (1 << bits) - 1
    half = 1 << (bits - 1)
    pa = 0
    for x in reversed(a):
        pa = (pa << bits) + x
    pb = 0
    for x in reversed(b):
        pb = (pb << bits) + x
    prod = pa * pb
    out = []
    for _ in range(la + lb - 1):
        d = prod & mask
        if d >= half:
            d -= (1 << bits)
        out.append(d)
        prod = (prod - d) >> bits
    return tuple(out)


def qp_add(a: QPoly, b: QPoly) -> QPoly:
    if not a.vec:
        return b
    if not b.vec:
        return a
    if a.den == b.den:
        den = a.den
        va, vb = a.vec, b.vec
    else:
        g = math.gcd(a.den, b.den)
        ka, kb = b.den // g, a.den // g
        den = a.den * ka
        va = tuple(x * ka for x in a.vec)
        vb = tuple(x * kb for x in b.vec)
    if len(va) < len(vb):
        va, vb = vb, va
    out = list(va)
    for i, x in enumerate(vb):
        out[i] += x
    return QPoly(den, out)


def qp_neg(a: QPoly) -> QPoly:
    return QPoly(a.den, tuple(-x for x in a.vec), reduce=False)


def qp_mul(a: QPoly, b: QPoly) -> QPoly:
    if not a.vec or not b.vec:
        return QP_ZERO
    return QPoly(a.den * b.den, _intconv(a.vec, b.vec))


def qp_scale(a: QPoly, c: Fraction) -> QPoly:
    if not c or not a.vec:
        return QP_ZERO
    return QPoly(a.den * c.denominator,
                 tuple(x * c.numerator for x in a.vec))


def qp_divmod(a: QPoly, b: QPoly):
    """Division with remainder over Q via integer pseudo-division.

    Scaling the dividend by lead(b)^deg(quotient) keeps every intermediate
    value an integer; one content reduction at the end restores canonical
    denominators.
    """
    va, vb = list(a.vec), b.vec
    steps = max(0, len(va) - len(vb) + 1)
    if steps == 0:
        return QP_ZERO, a
    lead = vb[-1]
    if lead != 1:
        scale = lead ** steps
        va = [x * scale for x in va]
    q = [0] * steps
    for k in range(steps - 1, -1, -1):
        c = va[k + len(vb) - 1]
        assert c % lead == 0
        c //= lead
        q[k] = c
        if c:
            for j, d in enumerate(vb):
                va[k + j] -= c * d
    # value bookkeeping: quotient = q * b.den / (a.den * lead^steps),
    # remainder = va / (a.den * lead^steps)
    denom = a.den * (lead ** steps)
    quot = QPoly(denom, tuple(x * b.den for x in q))
    rem = QPoly(denom, tuple(va[:len(vb) - 1]))
    return quot, rem


def _qp_from_fracs(fracs):
    n = len(fracs)
    while n and not fracs[n - 1]:
        n -= 1
    fracs = fracs[:n]
    if not fracs:
        return QP_ZERO
    den = 1
    for f in fracs:
        den = den * f.denominator // math.gcd(den, f.denominator)
    return QPoly(den, tuple(f.numerator * (den // f.denominator)
                            for f in fracs))


def qp_gcd(a: QPoly, b: QPoly) -> QPoly:
    """Monic gcd; returns QP_ZERO quickly when either side is constant."""
    if len(a.vec) <= 1 or len(b.vec) <= 1:
        return QP_ZERO
    # primitive integer Euclid with pseudo-division keeps everything in Z
    va, vb = list(a.vec), list(b.vec)

    def prim(v):
        g = 0
        for x in v:
            g = math.gcd(g, x)
            if g == 1:
                return v
        return [x // g for x in v] if g > 1 else v

    def strip(v):
        while v and not v[-1]:
            v.pop()
        return v

    va, vb = strip(prim(va)), strip(prim(vb))
    while vb:
        if len(vb) == 1:
            return QP_ZERO
        # pseudo-remainder of va by vb
        lead = vb[-1]
        while len(va) >= len(vb):
            shift = len(va) - len(vb)
            c = va[-1]
            va = [x * lead for x in va]
            for j, y in enumerate(vb):
                va[shift + j] -= c * y
            va = strip(va)
            va = prim(va)
            if not va:
                break
        va, vb = vb, va
    # make monic over Q
    lead = Fraction(va[-1])
    return _qp_from_fracs([Fraction(x) / lead for x in va])


def qp_stretch(a: QPoly, k: int) -> QPoly:
    if k == 1 or not a.vec:
        return a
    out = [0] * ((len(a.vec) - 1) * k + 1)
    for i, c in enumerate(a.vec):
        out[i * k] = c
    return QPoly(a.den, tuple(out), reduce=False)


def qp_compress(a: QPoly, k: int) -> QPoly:
    return QPoly(a.den, tuple(a.vec[i] for i in range(0, len(a.vec), k)),
                 reduce=False)


def qp_to_cyc(a: QPoly, m: int):
    return tuple(CycElem.from_rational(Fraction(x, a.den)).embed(m)
                 for x in a.vec)


# ---------------------------------------------------------------------------
# polynomial helpers over CycElem (the M > 1 path), dense low-to-high tuples


def _cstrip(p):
    n = len(p)
    while n and p[n - 1].is_zero():
        n -= 1
    return p[:n]


def _cadd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = out[i].add(c)
    return _cstrip(tuple(out))


def _cneg(a):
    return tuple(c.neg() for c in a)


def _cmul(a, b):
    if not a or not b:
        return ()
    if len(a) == 1:
        c = a[0]
        return _cstrip(tuple(x.mul(c) for x in b))
    if len(b) == 1:
        c = b[0]
        return _cstrip(tuple(x.mul(c) for x in a))
    m = a[0].m
    out = [CycElem.zero(m) for _ in range(len(a) + len(b) - 1)]
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            if not y.is_zero():
                out[i + j] = out[i + j].add(x.mul(y))
    return _cstrip(tuple(out))


def _cscale(a, c):
    return _cstrip(tuple(x.mul(c) for x in a))


def _cdivmod(a, b):
    a = list(a)
    lead_inv = b[-1].inv()
    q = [None] * max(0, len(a) - len(b) + 1)
    zero = CycElem.zero(b[-1].m)
    for k in range(len(q) - 1, -1, -1):
        c = a[k + len(b) - 1].mul(lead_inv)
        q[k] = c
        if not c.is_zero():
            for j, d in enumerate(b):
                a[k + j] = a[k + j].sub(c.mul(d))
    q = [x if x is not None else zero for x in q]
    return _cstrip(tuple(q)), _cstrip(tuple(a))


def _cgcd(a, b):
    if len(a) <= 1 or len(b) <= 1:
        return ()
    while b:
        if len(b) == 1:
            return ()
        _, r = _cdivmod(a, b)
        a, b = b, r
    return _cscale(a, a[-1].inv())


def _cstretch(p, k):
    if k == 1 or not p:
        return p
    m = p[0].m
    zero = CycElem.zero(m)
    out = [zero] * ((len(p) - 1) * k + 1)
    for i, c in enumerate(p):
        out[i * k] = c
    return tuple(out)


def _ccompress(p, k):
    return tuple(p[i] for i in range(0, len(p), k))


def _cembed(p, m_new):
    return tuple(c.embed(m_new) for c in p)


def _cyc_tuple_to_qp(p):
    fracs = [c.rational_value() for c in p]
    return _qp_from_fracs(fracs)


# ---------------------------------------------------------------------------
# representation-generic wrappers: num/den are QPoly when m == 1,
# tuples of CycElem when m > 1


def _plen(p):
    return len(p.vec) if isinstance(p, QPoly) else len(p)


def _pis_zero(p):
    return not p.vec if isinstance(p, QPoly) else not p


def _pbottom_is_zero(p):
    if isinstance(p, QPoly):
        return not p.vec[0]
    return p[0].is_zero()


class CoeffScalar:
    """An element of Q(zeta_M)(q^(1/N)) in reduced canonical form."""

    __slots__ = ("m", "n", "e", "num", "den")

    def __init__(self, m, n, e, num, den, _canonical=False):
        if _canonical:
            self.m, self.n, self.e, self.num, self.den = m, n, e, num, den
            return
        if isinstance(num, QPoly):
            self._init_qp(n, e, num, den)
        else:
            self._init_cyc(m, n, e, num, den)

    def _init_qp(self, n, e, num, den):
        vec = num.vec
        size = len(vec)
        while size and not vec[size - 1]:
            size -= 1
        if not size:
            self.m, self.n, self.e = 1, 1, 0
            self.num, self.den = QP_ZERO, QP_ONE
            return
        shift = 0
        while not vec[shift]:
            shift += 1
        if shift or size != len(vec):
            num = QPoly(num.den, vec[shift:size], reduce=False)
            e += shift
        dvec = den.vec
        shift = 0
        while not dvec[shift]:
            shift += 1
        if shift:
            den = QPoly(den.den, dvec[shift:], reduce=False)
            e -= shift
        if len(num.vec) > 1 and len(den.vec) > 1:
            g = qp_gcd(num, den)
            if len(g.vec) > 1:
                num, _ = qp_divmod(num, g)
                den, _ = qp_divmod(den, g)
        c0 = Fraction(den.vec[0], den.den)
        if c0 != 1:
            inv = 1 / c0
            num = qp_scale(num, inv)
            den = qp_scale(den, inv)
        if n > 1:
            g = math.gcd(abs(e), n)
            for i in range(1, len(num.vec)):
                if g == 1:
                    break
                if num.vec[i]:
                    g = math.gcd(g, i)
            for i in range(1, len(den.vec)):
                if g == 1:
                    break
                if den.vec[i]:
                    g = math.gcd(g, i)
            if g > 1:
                n //= g
                e //= g
                num = qp_compress(num, g)
                den = qp_compress(den, g)
        self.m, self.n, self.e, self.num, self.den = 1, n, e, num, den

    def _init_cyc(self, m, n, e, num, den):
        num = _cstrip(num)
        if not num:
            self.m, self.n, self.e = 1, 1, 0
            self.num, self.den = QP_ZERO, QP_ONE
            return
        den = _cstrip(den)
        if not den:
            raise ZeroDivisor("scalar with zero denominator")
        shift = 0
        while num[shift].is_zero():
            shift += 1
        if shift:
            num = num[shift:]
            e += shift
        shift = 0
        while den[shift].is_zero():
            shift += 1
        if shift:
            den = den[shift:]
            e -= shift
        g = _cgcd(num, den)
        if len(g) > 1:
            num, _ = _cdivmod(num, g)
            den, _ = _cdivmod(den, g)
        if not den[0].is_one():
            c = den[0].inv()
            num = _cscale(num, c)
            den = _cscale(den, c)
        if n > 1:
            g = math.gcd(abs(e), n)
            for i in range(1, len(num)):
                if g == 1:
                    break
                if not num[i].is_zero():
                    g = math.gcd(g, i)
            for i in range(1, len(den)):
                if g == 1:
                    break
                if not den[i].is_zero():
                    g = math.gcd(g, i)
            if g > 1:
                n //= g
                e //= g
                num = _ccompress(num, g)
                den = _ccompress(den, g)
        if all(c.is_rational() for c in num) \
                and all(c.is_rational() for c in den):
            self.m, self.n, self.e = 1, n, e
            self.num, self.den = _cyc_tuple_to_qp(num), _cyc_tuple_to_qp(den)
            return
        self.m, self.n, self.e, self.num, self.den = m, n, e, num, den

    # -- constructors -------------------------------------------------------

    @staticmethod
    def from_rational(value) -> "CoeffScalar":
        value = Fraction(value)
        if not value:
            return ZERO
        return CoeffScalar(1, 1, 0,
                           QPoly(value.denominator, (value.numerator,)),
                           QP_ONE, _canonical=True)

    @staticmethod
    def q_power(exponent) -> "CoeffScalar":
        exponent = Fraction(exponent)
        return CoeffScalar(1, exponent.denominator, exponent.numerator,
                           QP_ONE, QP_ONE, _canonical=True)

    @staticmethod
    def zeta(m: int, j: int = 1) -> "CoeffScalar":
        c = CycElem.zeta_power(m, j)
        if c.is_rational():
            return CoeffScalar.from_rational(c.rational_value())
        return CoeffScalar(c.m, 1, 0, (c,), (CycElem.one(c.m),))

    @staticmethod
    def from_cyc(c: CycElem) -> "CoeffScalar":
        if c.is_zero():
            return ZERO
        if c.is_rational():
            return CoeffScalar.from_rational(c.rational_value())
        return CoeffScalar(c.m, 1, 0, (c,), (CycElem.one(c.m),))

    # -- basic predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        return _pis_zero(self.num)

    def is_one(self) -> bool:
        if self.e != 0 or self.m != 1:
            return False
        return self.num == QP_ONE and self.den == QP_ONE

    def is_unit_part_one(self) -> bool:
        """True when the scalar is exactly a q-power."""
        if self.m != 1:
            return False
        return self.num == QP_ONE and self.den == QP_ONE

    def is_constant(self) -> bool:
        """True when the scalar lies in Q(zeta_M), i.e. involves no q."""
        if self.is_zero():
            return True
        return self.e == 0 and _plen(self.num) == 1 and _plen(self.den) == 1

    def __bool__(self):
        return not self.is_zero()

    # -- field joining -------------------------------------------------------

    def _lift(self, m, n) -> "CoeffScalar":
        num, den, e = self.num, self.den, self.e
        if m != self.m:
            if self.m == 1:
                num = qp_to_cyc(num, m)
                den = qp_to_cyc(den, m)
            else:
                num = _cembed(num, m)
                den = _cembed(den, m)
        if n != self.n:
            k = n // self.n
            if isinstance(num, QPoly):
                num = qp_stretch(num, k)
                den = qp_stretch(den, k)
            else:
                num = _cstretch(num, k)
                den = _cstretch(den, k)
            e *= k
        return CoeffScalar(m, n, e, num, den, _canonical=True)

    @staticmethod
    def _join(a: "CoeffScalar", b: "CoeffScalar"):
        m = a.m if a.m == b.m else _lcm(a.m, b.m)
        n = a.n if a.n == b.n else _lcm(a.n, b.n)
        if (a.m, a.n) != (m, n):
            a = a._lift(m, n)
        if (b.m, b.n) != (m, n):
            b = b._lift(m, n)
        return a, b

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        a, b = CoeffScalar._join(self, other)
        e = min(a.e, b.e)
        if a.m == 1:
            if a.den == b.den:
                num = qp_add(_qp_shift(a.num, a.e - e),
                             _qp_shift(b.num, b.e - e))
                if not num.vec:
                    return ZERO
                return CoeffScalar(1, a.n, e, num, a.den)
            lhs = qp_mul(_qp_shift(a.num, a.e - e), b.den)
            rhs = qp_mul(_qp_shift(b.num, b.e - e), a.den)
            num = qp_add(lhs, rhs)
            if not num.vec:
                return ZERO
            return CoeffScalar(1, a.n, e, num, qp_mul(a.den, b.den))
        lhs = _cmul(_cyc_shift(a.num, a.e - e), b.den)
        rhs = _cmul(_cyc_shift(b.num, b.e - e), a.den)
        num = _cadd(lhs, rhs)
        if not num:
            return ZERO
        return CoeffScalar(a.m, a.n, e, num, _cmul(a.den, b.den))

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        if self.is_zero():
            return self
        if self.m == 1:
            return CoeffScalar(1, self.n, self.e, qp_neg(self.num), self.den,
                               _canonical=True)
        return CoeffScalar(self.m, self.n, self.e, _cneg(self.num), self.den,
                           _canonical=True)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.__add__(other.__neg__())

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other.__add__(self.__neg__())

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return ZERO
        a, b = CoeffScalar._join(self, other)
        if a.m == 1:
            num = qp_mul(a.num, b.num)
            if a.den == QP_ONE and b.den == QP_ONE:
                if len(num.vec) == 1 and num.den == 1 and num.vec[0] == 1:
                    return CoeffScalar(1, a.n, a.e + b.e, QP_ONE, QP_ONE,
                                       _canonical=True)
                return CoeffScalar(1, a.n, a.e + b.e, num, QP_ONE)
            return CoeffScalar(1, a.n, a.e + b.e, num,
                               qp_mul(a.den, b.den))
        return CoeffScalar(a.m, a.n, a.e + b.e, _cmul(a.num, b.num),
                           _cmul(a.den, b.den))

    def __rmul__(self, other):
        return self.__mul__(other)

    def inv(self) -> "CoeffScalar":
        if self.is_zero():
            raise ZeroDivisor("inverse of the zero scalar")
        if self.m == 1:
            c0 = Fraction(self.num.den, self.num.vec[0])
            num = qp_scale(self.den, c0)
            den = qp_scale(self.num, c0)
            return CoeffScalar(1, self.n, -self.e, num, den, _canonical=True)
        c = self.num[0].inv()
        num = _cscale(self.den, c)
        den = _cscale(self.num, c)
        return CoeffScalar(self.m, self.n, -self.e, num, den,
                           _canonical=True)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.__mul__(other.inv())

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other.__mul__(self.inv())

    def __pow__(self, k: int):
        if k == 0:
            return ONE
        if k < 0:
            return self.inv().__pow__(-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero():
            return other.is_zero()
        if other.is_zero():
            return False
        if self.m == other.m and self.n == other.n:
            return (self.e == other.e and self.num == other.num
                    and self.den == other.den)
        a, b = CoeffScalar._join(self, other)
        return a.e == b.e and a.num == b.num and a.den == b.den

    def __hash__(self):
        # weak but join-stable: canonical reduction pins (e, n) and lengths
        return hash((self.e, self.n, _plen(self.num), _plen(self.den)))

    # -- valuation and normalization ----------------------------------------

    def w(self) -> Fraction:
        """q-order valuation; only defined for nonzero scalars."""
        if self.is_zero():
            raise ZeroScalar("w(0) is undefined")
        return Fraction(self.e, self.n)

    def normalize(self):
        """Split c = q^k * u with w(u) = 0; returns (k, u)."""
        if self.is_zero():
            raise ZeroScalar("cannot normalize the zero scalar")
        unit = CoeffScalar(self.m, self.n, 0, self.num, self.den)
        return Fraction(self.e, self.n), unit

    def q_shift(self, k) -> "CoeffScalar":
        """Multiply by q^k for rational k."""
        return self * CoeffScalar.q_power(k)

    def q_power_class(self, n: int):
        """k with c = q^(k/n) exactly, or None.

        Raises ZeroScalar on zero input; n must be positive.
        """
        if self.is_zero():
            raise ZeroScalar("q_power_class(0) is undefined")
        if n <= 0:
            raise ValueError("n must be positive")
        if not self.is_unit_part_one():
            return None
        k = Fraction(self.e, self.n) * n
        if k.denominator != 1:
            return None
        return int(k)

    def torsion_order(self):
        """Smallest n >= 1 with c^n a formal integer q-power, or None."""
        if self.is_zero():
            raise ZeroScalar("torsion_order(0) is undefined")
        if _plen(self.num) > 1 or _plen(self.den) > 1:
            return None
        if self.m == 1:
            r = Fraction(self.num.vec[0], self.num.den)
            if r == 1:
                order = 1
            elif r == -1:
                order = 2
            else:
                return None
        else:
            order = self.num[0].root_of_unity_order()
            if order is None:
                return None
        return _lcm(order, Fraction(self.e, self.n).denominator)

    def nth_root(self, k: int):
        """A k-th root within a cyclotomic/ramified enlargement, or None."""
        if k == 1 or self.is_zero():
            return self
        if self.m == 1:
            num = qp_to_cyc(self.num, 1)
            den = qp_to_cyc(self.den, 1)
        else:
            num, den = self.num, self.den
        root_num = _poly_nth_root(num, k)
        if root_num is None:
            return None
        root_den = _poly_nth_root(den, k)
        if root_den is None:
            return None
        m = _lcm(root_num[0].m, root_den[0].m)
        # the root polynomial lives in t = q^(1/n); restate it on the finer
        # grid q^(1/(n*k)) where the k-th root of t itself is a monomial
        root_num = _cstretch(_cembed(root_num, m), k)
        root_den = _cstretch(_cembed(root_den, m), k)
        out = CoeffScalar(m, self.n * k, self.e, root_num, root_den)
        assert out ** k == self
        return out

    # -- display -------------------------------------------------------------

    def __repr__(self):
        if self.is_zero():
            return "0"
        parts = []
        if self.e:
            parts.append(f"q^({Fraction(self.e, self.n)})")
        num = _poly_repr(self.num)
        den = _poly_repr(self.den)
        if den != "1":
            parts.append(f"({num})/({den})")
        elif num != "1" or not parts:
            parts.append(num if _plen(self.num) == 1 else f"({num})")
        return "*".join(parts)


def _qp_shift(p: QPoly, shift: int) -> QPoly:
    if shift == 0:
        return p
    return QPoly(p.den, (0,) * shift + p.vec, reduce=False)


def _cyc_shift(p, shift):
    if shift == 0:
        return p
    return (CycElem.zero(p[0].m),) * shift + p


def _poly_repr(p):
    if isinstance(p, QPoly):
        coeffs = [Fraction(x, p.den) for x in p.vec]
    else:
        coeffs = p
    terms = []
    for i, c in enumerate(coeffs):
        if not c if isinstance(c, Fraction) else c.is_zero():
            continue
        cs = str(c) if isinstance(c, Fraction) else repr(c)
        if i == 0:
            terms.append(cs)
        else:
            mono = "q" if i == 1 else f"q^{i}"
            terms.append(mono if cs == "1" else f"-{mono}" if cs == "-1"
                         else f"{cs}*{mono}")
    return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def _poly_nth_root(p, k):
    """Exact k-th root of a CycElem polynomial with nonzero constant term."""
    if len(p) == 1:
        return _const_nth_root(p[0], k)
    if (len(p) - 1) % k != 0:
        return None
    c0 = _const_nth_root(p[0], k)
    if c0 is None:
        return None
    m = _lcm(c0[0].m, p[0].m)
    p = _cembed(p, m)
    root = [c0[0].embed(m)]
    deg = (len(p) - 1) // k
    lead_factor = root[0].pow(k - 1).scale(Fraction(k)).inv()
    for i in range(1, deg + 1):
        current = _cstrip(tuple(root))
        partial = _cpow(current, k)
        target = p[i] if i < len(p) else CycElem.zero(m)
        have = partial[i] if i < len(partial) else CycElem.zero(m)
        root.append(target.sub(have).mul(lead_factor))
    candidate = _cstrip(tuple(root))
    if _cpow(candidate, k) == _cstrip(p):
        return candidate
    return None


def _const_nth_root(c, k):
    """k-th root of a cyclotomic constant via rational/root-of-unity parts."""
    if c.is_rational():
        r = c.rational_value()
        neg = r < 0
        r = abs(r)
        a = _int_nth_root(r.numerator, k)
        b = _int_nth_root(r.denominator, k)
        if a is None or b is None:
            return None
        root = CycElem.from_rational(Fraction(a, b))
        if neg:
            zeta_c = CycElem.zeta_power(2 * k, 1)
            root = root.embed(zeta_c.m).mul(zeta_c)
        return (root,)
    m = c.m
    for j in range(m):
        cand = c.mul(CycElem.zeta_power(m, (-j) % m).embed(m))
        if cand.is_rational():
            base = _const_nth_root(cand, k)
            if base is None:
                return None
            mm = _lcm(m * k, base[0].m)
            z = CycElem.zeta_power(m * k, j).embed(mm)
            return (base[0].embed(mm).mul(z),)
    return None


def _cpow(p, k):
    out = (CycElem.one(p[0].m),)
    base = p
    while k:
        if k & 1:
            out = _cmul(out, base)
        base = _cmul(base, base)
        k >>= 1
    return out


def _int_nth_root(v: int, k: int):
    if v == 0:
        return 0
    r = round(v ** (1.0 / k))
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand ** k == v:
            return cand
    return None


def _coerce(value):
    if isinstance(value, CoeffScalar):
        return value
    if isinstance(value, int):
        if not value:
            return ZERO
        return CoeffScalar(1, 1, 0, QPoly(1, (value,), reduce=False), QP_ONE,
                           _canonical=True)
    if isinstance(value, Fraction):
        return CoeffScalar.from_rational(value)
    return NotImplemented


ZERO = CoeffScalar(1, 1, 0, QP_ZERO, QP_ONE, _canonical=True)
ONE = CoeffScalar(1, 1, 0, QP_ONE, QP_ONE, _canonical=True)


def scalar(value) -> CoeffScalar:
    """Coerce an int or Fraction to a CoeffScalar."""
    out = _coerce(value)
    if out is NotImplemented:
        raise TypeError(f"cannot coerce {value!r} to CoeffScalar")
    return out


_QPOW_CACHE = {}


def q_power(exponent) -> CoeffScalar:
    out = _QPOW_CACHE.get(exponent)
    if out is None:
        out = CoeffScalar.q_power(exponent)
        _QPOW_CACHE[exponent] = out
        if len(_QPOW_CACHE) > 50000:
            _QPOW_CACHE.clear()
    return out


def zeta(m: int, j: int = 1) -> CoeffScalar:
    return CoeffScalar.zeta(m, j)


def normalize_scalar(c: CoeffScalar):
    """Fundamental-domain normalization c = q^k * u with w(u) = 0."""
    return c.normalize()


def q_power_class(c: CoeffScalar, n: int):
    return c.q_power_class(n)


def torsion_order(c: CoeffScalar):
    return c.torsion_order()
