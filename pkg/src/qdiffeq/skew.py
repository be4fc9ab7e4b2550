"""The skew Laurent ring K[PHI, PHI^-1] over truncated Puiseux series.

Multiplication follows the twist PHI * f = phi(f) * PHI, so the coefficient
of PHI^(i+j) in (a PHI^i)(b PHI^j) is a * phi^i(b).  The ring is left and
right Euclidean with the PHI-degree span as Euclidean function; both
divisions are provided.  Newton polygons are computed from the coefficient
valuations with the module-slope convention: the slope of a hull segment is
the negative of its geometric slope, so PHI - c(-z)^t is pure of slope t.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import (
    PrecisionExhausted,
    ZeroDivisor,
    ZeroOperator,
)
from .series import PuiseuxSeries, series
from .scalars import CoeffScalar, scalar


def _coerce_coeff(v):
    if isinstance(v, PuiseuxSeries):
        return v
    if isinstance(v, CoeffScalar):
        return PuiseuxSeries.constant(v)
    if isinstance(v, (int, Fraction)):
        return PuiseuxSeries.constant(scalar(v))
    raise TypeError(f"bad skew coefficient {v!r}")


class SkewOperator:
    """Finite sum of a_i PHI^i with PuiseuxSeries coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        clean = {}
        for d, c in coeffs.items():
            c = _coerce_coeff(c)
            if not c.is_zero():
                clean[int(d)] = c
        self.coeffs = clean

    @staticmethod
    def zero() -> "SkewOperator":
        return SkewOperator({})

    @staticmethod
    def one() -> "SkewOperator":
        return SkewOperator({0: PuiseuxSeries.one()})

    @staticmethod
    def phi_power(i: int = 1) -> "SkewOperator":
        return SkewOperator({i: PuiseuxSeries.one()})

    @staticmethod
    def from_list(coeffs) -> "SkewOperator":
        """Build PHI-polynomial from [a_0, a_1, ...]."""
        return SkewOperator(dict(enumerate(coeffs)))

    # -- structure -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree_bounds(self):
        if not self.coeffs:
            return None
        return min(self.coeffs), max(self.coeffs)

    @property
    def d_lo(self) -> int:
        return min(self.coeffs)

    @property
    def d_hi(self) -> int:
        return max(self.coeffs)

    def span(self) -> int:
        if not self.coeffs:
            return -1
        return self.d_hi - self.d_lo

    def coefficient(self, i: int) -> PuiseuxSeries:
        return self.coeffs.get(i, PuiseuxSeries.zero())

    def is_monic_polynomial(self) -> bool:
        if not self.coeffs or self.d_lo < 0:
            return False
        top = self.coeffs[self.d_hi]
        return top == PuiseuxSeries.one()

    def map_coefficients(self, f) -> "SkewOperator":
        return SkewOperator({d: f(c) for d, c in self.coeffs.items()})

    def truncate(self, prec) -> "SkewOperator":
        return self.map_coefficients(lambda c: c.truncate(prec))

    # -- ring operations -----------------------------------------------------

    def __add__(self, other):
        other = _coerce_operator(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.coeffs)
        for d, c in other.coeffs.items():
            s = out.get(d)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(d, None)
            else:
                out[d] = s
        return SkewOperator(out)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return SkewOperator({d: -c for d, c in self.coeffs.items()})

    def __sub__(self, other):
        other = _coerce_operator(other)
        if other is NotImplemented:
            return NotImplemented
        return self.__add__(other.__neg__())

    def __rsub__(self, other):
        return (self.__neg__()).__add__(other)

    def __mul__(self, other):
        other = _coerce_operator(other)
        if other is NotImplemented:
            return NotImplemented
        out = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                term = a * b.phi(i)
                d = i + j
                s = out.get(d)
                s = term if s is None else s + term
                if s.is_zero():
                    out.pop(d, None)
                else:
                    out[d] = s
        return SkewOperator(out)

    def __rmul__(self, other):
        other = _coerce_operator(other)
        if other is NotImplemented:
            return NotImplemented
        return other.__mul__(self)

    def scale(self, f) -> "SkewOperator":
        """Left-multiply by a plain series."""
        f = _coerce_coeff(f)
        return SkewOperator({d: f * c for d, c in self.coeffs.items()})

    def __eq__(self, other):
        other = _coerce_operator(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs)))

    def apply(self, f: PuiseuxSeries) -> PuiseuxSeries:
        """Act on a series with PHI acting as phi."""
        out = PuiseuxSeries.zero()
        for i, a in self.coeffs.items():
            out = out + a * f.phi(i)
        return out

    def is_zero_to_precision(self) -> bool:
        """All coefficients vanish below their tracked precision."""
        return all(c.is_zero() for c in self.coeffs.values())

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for d in sorted(self.coeffs, reverse=True):
            c = repr(self.coeffs[d])
            mono = "" if d == 0 else ("PHI" if d == 1 else f"PHI^{d}")
            if not mono:
                parts.append(f"({c})")
            elif c == "1":
                parts.append(mono)
            else:
                parts.append(f"({c})*{mono}")
        return " + ".join(parts)


def _coerce_operator(value):
    if isinstance(value, SkewOperator):
        return value
    if isinstance(value, (PuiseuxSeries, CoeffScalar, int, Fraction)):
        return SkewOperator({0: value})
    return NotImplemented


def skew_mul(a: SkewOperator, b: SkewOperator) -> SkewOperator:
    return a * b


def skew_divmod(lhs: SkewOperator, rhs: SkewOperator, side: str = "right"):
    """Euclidean division: side='right' gives L = Q*R + Rem, side='left'
    gives L = R*Q + Rem, with span(Rem) < span(R).

    The leading coefficient of the divisor is inverted as a series; if it
    vanishes to its tracked precision this raises PrecisionExhausted, and a
    zero divisor raises ZeroDivisor.
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    if rhs.is_zero():
        raise ZeroDivisor("division by the zero operator")
    d_r = rhs.d_hi
    lead = rhs.coeffs[d_r]
    if lead.is_zero():
        raise PrecisionExhausted(
            "leading coefficient of the divisor vanishes to precision")
    span_r = rhs.span()
    quot = SkewOperator.zero()
    rem = lhs
    guard = 0
    while not rem.is_zero() and rem.span() >= span_r:
        t = rem.d_hi
        a = rem.coeffs[t]
        shift = t - d_r
        if side == "right":
            # (x PHI^shift) * rhs has top term x * phi^shift(lead) PHI^t
            denom = lead.phi(shift)
            x = a * denom.inv()
            step = SkewOperator({shift: x})
            quot = quot + step
            rem = rem - step * rhs
        else:
            # rhs * (x PHI^shift) has top term lead * phi^d_r(x) PHI^t
            x = (a * lead.inv()).phi(-d_r)
            step = SkewOperator({shift: x})
            quot = quot + step
            rem = rem - rhs * step
        if rem.coeffs.get(t) is not None:
            # the top term must cancel exactly; a stale entry means the
            # inverse was only known to insufficient precision
            if not rem.coeffs[t].is_zero():
                raise PrecisionExhausted(
                    "division step failed to cancel the leading term")
            rem = SkewOperator({d: c for d, c in rem.coeffs.items()
                                if d != t or not c.is_zero()})
        guard += 1
        if guard > 10000:
            raise PrecisionExhausted("division did not terminate")
    return quot, rem


# ---------------------------------------------------------------------------
# Newton polygons


class NewtonPolygon:
    """Lower convex hull of (i, v(a_i)) with module-slope segments.

    segments: list of (slope, length) with slopes strictly increasing;
    vertices: hull vertices (i, v) from low to high degree.
    """

    __slots__ = ("segments", "vertices")

    def __init__(self, segments, vertices):
        self.segments = segments
        self.vertices = vertices

    def slopes(self):
        """Multiset of slopes, one entry per unit of horizontal length."""
        out = []
        for s, length in self.segments:
            out.extend([s] * length)
        return sorted(out)

    def slope_set(self):
        return [s for s, _ in self.segments]

    def is_pure(self) -> bool:
        return len(self.segments) <= 1

    def single_slope(self):
        if not self.segments:
            return Fraction(0)
        return self.segments[0][0]

    def __repr__(self):
        return "NewtonPolygon(" + ", ".join(
            f"slope {s} x{m}" for s, m in self.segments) + ")"


def newton_polygon(op: SkewOperator) -> NewtonPolygon:
    """Newton polygon of a nonzero operator.

    Coefficients that vanish to their tracked precision have unknown
    valuation and raise PrecisionExhausted; a zero operator raises
    ZeroOperator.
    """
    if op.is_zero():
        raise ZeroOperator("Newton polygon of the zero operator")
    pts = []
    for i in sorted(op.coeffs):
        c = op.coeffs[i]
        v = c.valuation()
        if v is None:
            raise PrecisionExhausted(
                f"coefficient of PHI^{i} vanishes to precision")
        pts.append((i, v))
    hull = [pts[0]]
    for p in pts[1:]:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop the middle point when it lies on or above the chord
            if (y2 - y1) * (p[0] - x1) >= (p[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(p)
    # force endpoints: the hull must start and end at the extreme degrees
    segments = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        geom = Fraction(y2 - y1, x2 - x1)
        segments.append((-geom, x2 - x1))
    segments.reverse()  # module slopes increase right-to-left on the hull
    return NewtonPolygon(segments, hull)
