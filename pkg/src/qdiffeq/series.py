"""Truncated Laurent/Puiseux series over CoeffScalar.

PuiseuxSeries is a finite coefficient map exponent -> scalar together with
a tracked precision T: exponents >= T are unknown, exponents < T without an
entry are exactly zero.  prec=None means the series is exact (a Laurent
polynomial in z^(1/n)).  The q-difference automorphism acts coefficientwise
by phi(z^lam) = q^lam z^lam.

GlobalSeries is the windowed model of functions holomorphic on C*: integer
exponents, coefficients known exactly inside [lo, hi] and unknown outside.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import DomainViolation, ZeroDivisor
from .scalars import ONE, ZERO, CoeffScalar, q_power, scalar

DEFAULT_PRECISION = Fraction(32)
DEFAULT_WINDOW = 20


def _exp(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _min_prec(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class PuiseuxSeries:
    """Immutable truncated series in z^(1/n) over the coefficient field."""

    __slots__ = ("coeffs", "prec", "ram")

    def __init__(self, coeffs, prec=None):
        clean = {}
        for k, v in coeffs.items():
            k = _exp(k)
            if (prec is None or k < prec) and not v.is_zero():
                clean[k] = v
        self.coeffs = clean
        self.prec = None if prec is None else _exp(prec)
        ram = 1
        for k in clean:
            ram = ram * k.denominator // math.gcd(ram, k.denominator)
        if self.prec is not None:
            d = self.prec.denominator
            ram = ram * d // math.gcd(ram, d)
        self.ram = ram

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero(prec=None) -> "PuiseuxSeries":
        return PuiseuxSeries({}, prec)

    @staticmethod
    def one() -> "PuiseuxSeries":
        return PuiseuxSeries({Fraction(0): ONE})

    @staticmethod
    def monomial(exponent, coeff=ONE, prec=None) -> "PuiseuxSeries":
        return PuiseuxSeries({_exp(exponent): coeff}, prec)

    @staticmethod
    def z_power(exponent) -> "PuiseuxSeries":
        return PuiseuxSeries.monomial(exponent)

    @staticmethod
    def constant(c) -> "PuiseuxSeries":
        if isinstance(c, (int, Fraction)):
            c = scalar(c)
        return PuiseuxSeries({Fraction(0): c})

    # -- structure -----------------------------------------------------------

    def is_zero(self) -> bool:
        """No known nonzero coefficient (the tail may still be unknown)."""
        return not self.coeffs

    def is_exact_zero(self) -> bool:
        return not self.coeffs and self.prec is None

    def valuation(self):
        """Least exponent with nonzero coefficient, or None for zero."""
        if not self.coeffs:
            return None
        return min(self.coeffs)

    def val_eff(self) -> Fraction:
        """Valuation lower bound usable in precision rules."""
        v = self.valuation()
        if v is not None:
            return v
        if self.prec is not None:
            return self.prec
        return Fraction(0)  # exact zero: any bound works

    def coefficient(self, exponent) -> CoeffScalar:
        return self.coeffs.get(_exp(exponent), ZERO)

    def support(self):
        return sorted(self.coeffs)

    def is_monomial(self) -> bool:
        return len(self.coeffs) == 1 and self.prec is None

    def leading_coefficient(self) -> CoeffScalar:
        v = self.valuation()
        if v is None:
            raise ZeroDivisor("leading coefficient of a zero series")
        return self.coeffs[v]

    def truncate(self, prec) -> "PuiseuxSeries":
        prec = _exp(prec)
        if self.prec is not None and self.prec <= prec:
            return self
        return PuiseuxSeries(self.coeffs, prec)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        other = _coerce_series(other)
        if other is NotImplemented:
            return NotImplemented
        prec = _min_prec(self.prec, other.prec)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            s = out.get(k, ZERO) + v
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return PuiseuxSeries(out, prec)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return PuiseuxSeries({k: -v for k, v in self.coeffs.items()},
                             self.prec)

    def __sub__(self, other):
        other = _coerce_series(other)
        if other is NotImplemented:
            return NotImplemented
        return self.__add__(other.__neg__())

    def __rsub__(self, other):
        return (self.__neg__()).__add__(other)

    def __mul__(self, other):
        other = _coerce_series(other)
        if other is NotImplemented:
            return NotImplemented
        if self.prec is None and other.prec is None:
            prec = None
        else:
            pa = None if self.prec is None else self.prec + other.val_eff()
            pb = None if other.prec is None else other.prec + self.val_eff()
            prec = _min_prec(pa, pb)
        out = {}
        for ka, va in self.coeffs.items():
            for kb, vb in other.coeffs.items():
                k = ka + kb
                if prec is not None and k >= prec:
                    continue
                p = va * vb
                s = out.get(k)
                s = p if s is None else s + p
                if s.is_zero():
                    out.pop(k, None)
                else:
                    out[k] = s
        return PuiseuxSeries(out, prec)

    def __rmul__(self, other):
        return self.__mul__(other)

    def scale(self, c: CoeffScalar) -> "PuiseuxSeries":
        if c.is_zero():
            return PuiseuxSeries.zero(self.prec)
        return PuiseuxSeries({k: v * c for k, v in self.coeffs.items()},
                             self.prec)

    def shift(self, exponent) -> "PuiseuxSeries":
        """Multiply by the monomial z^exponent."""
        exponent = _exp(exponent)
        prec = None if self.prec is None else self.prec + exponent
        return PuiseuxSeries({k + exponent: v
                              for k, v in self.coeffs.items()}, prec)

    def inv(self, prec=None) -> "PuiseuxSeries":
        """Multiplicative inverse; see series division for the precision rule."""
        v = self.valuation()
        if v is None:
            raise ZeroDivisor("inverse of a series with no known coefficient")
        if self.is_monomial():
            return PuiseuxSeries.monomial(-v, self.coeffs[v].inv())
        if self.prec is not None:
            rel = self.prec - v
        else:
            target = DEFAULT_PRECISION if prec is None else _exp(prec)
            rel = target - (-v)  # aim at absolute precision `target`
            if rel <= 0:
                rel = DEFAULT_PRECISION
        c0 = self.coeffs[v].inv()
        # g = (series / z^v), invert the unit part by convolution recursion
        unit = {k - v: val for k, val in self.coeffs.items()}
        grid = Fraction(1, self.ram)
        inv_coeffs = {Fraction(0): c0}
        steps = int(rel / grid)
        for i in range(1, steps):
            k = grid * i
            acc = ZERO
            for ku, vu in unit.items():
                if ku == 0:
                    continue
                if ku <= k:
                    g = inv_coeffs.get(k - ku)
                    if g is not None:
                        acc = acc + vu * g
            if not acc.is_zero():
                inv_coeffs[k] = -(c0 * acc)
        out = {k - v: val for k, val in inv_coeffs.items()}
        return PuiseuxSeries(out, rel - v if rel is not None else None)

    def __truediv__(self, other):
        other = _coerce_series(other)
        if other is NotImplemented:
            return NotImplemented
        return self.__mul__(other.inv())

    def phi(self, p: int = 1) -> "PuiseuxSeries":
        """Apply phi^p: the coefficient at z^lam picks up q^(p*lam)."""
        if p == 0:
            return self
        return PuiseuxSeries(
            {k: v * q_power(p * k) for k, v in self.coeffs.items()},
            self.prec)

    def __eq__(self, other):
        other = _coerce_series(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs and self.prec == other.prec

    def __hash__(self):
        return hash((tuple(sorted(self.coeffs)), self.prec))

    def agrees_with(self, other) -> bool:
        """Equality of all coefficients up to the shared precision."""
        other = _coerce_series(other)
        return (self - other).is_zero()

    def __repr__(self):
        if not self.coeffs and self.prec is None:
            return "0"
        parts = []
        for k in sorted(self.coeffs):
            c = repr(self.coeffs[k])
            if k == 0:
                parts.append(c)
            else:
                mono = "z" if k == 1 else f"z^({k})"
                parts.append(mono if c == "1" else f"({c})*{mono}")
        if self.prec is not None:
            parts.append(f"O(z^({self.prec}))")
        return " + ".join(parts) if parts else "0"


def _coerce_series(value):
    if isinstance(value, PuiseuxSeries):
        return value
    if isinstance(value, CoeffScalar):
        return PuiseuxSeries.constant(value)
    if isinstance(value, (int, Fraction)):
        return PuiseuxSeries.constant(scalar(value))
    return NotImplemented


def series(coeffs, prec=None) -> PuiseuxSeries:
    """Build a series from {exponent: scalar-or-int} with optional precision."""
    fixed = {}
    for k, v in coeffs.items():
        if isinstance(v, (int, Fraction)):
            v = scalar(v)
        fixed[_exp(k)] = v
    return PuiseuxSeries(fixed, prec)


# ---------------------------------------------------------------------------


class GlobalSeries:
    """Coefficient window of a function holomorphic on C*."""

    __slots__ = ("lo", "hi", "coeffs")

    def __init__(self, lo: int, hi: int, coeffs):
        if lo > hi:
            raise DomainViolation("empty window")
        self.lo = lo
        self.hi = hi
        self.coeffs = {k: v for k, v in coeffs.items()
                       if lo <= k <= hi and not v.is_zero()}

    def coefficient(self, k: int) -> CoeffScalar:
        return self.coeffs.get(k, ZERO)

    def phi(self, p: int = 1) -> "GlobalSeries":
        if p == 0:
            return self
        return GlobalSeries(self.lo, self.hi,
                            {k: v * q_power(p * k)
                             for k, v in self.coeffs.items()})

    def mul_laurent(self, poly) -> "GlobalSeries":
        """Multiply by a Laurent polynomial {int exponent: scalar}.

        The known window shrinks to the exponents where every contribution
        is known: [lo + max(supp), hi + min(supp)].
        """
        supp = [k for k, v in poly.items() if not v.is_zero()]
        if not supp:
            raise DomainViolation("multiplication by zero polynomial")
        lo = self.lo + max(supp)
        hi = self.hi + min(supp)
        out = {}
        for kp in supp:
            vp = poly[kp]
            for k, v in self.coeffs.items():
                kk = k + kp
                if lo <= kk <= hi:
                    s = out.get(kk, ZERO) + vp * v
                    out[kk] = s
        return GlobalSeries(lo, hi, out)

    def __add__(self, other):
        lo = max(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        out = {}
        for k in range(lo, hi + 1):
            s = self.coefficient(k) + other.coefficient(k)
            if not s.is_zero():
                out[k] = s
        return GlobalSeries(lo, hi, out)

    def __neg__(self):
        return GlobalSeries(self.lo, self.hi,
                            {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self.__add__(other.__neg__())

    def agrees_with(self, other) -> bool:
        """Exact equality of coefficients on the window overlap."""
        lo = max(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        for k in range(lo, hi + 1):
            if not (self.coefficient(k) - other.coefficient(k)).is_zero():
                return False
        return True

    def __repr__(self):
        parts = [f"[{self.lo},{self.hi}]"]
        for k in sorted(self.coeffs):
            parts.append(f"z^{k}: {self.coeffs[k]!r}")
        return "GlobalSeries(" + ", ".join(parts) + ")"


def theta(window: int) -> GlobalSeries:
    """Coefficient window of the theta function on C*.

    The coefficient at z^n is (-1)^n q^(n(n-1)/2); it satisfies the
    functional equation (-z) * phi(theta) = theta on window overlaps.
    """
    if window < 1:
        raise DomainViolation("theta needs a window bound >= 1")
    coeffs = {}
    for n in range(-window, window + 1):
        c = q_power(Fraction(n * (n - 1), 2))
        if n % 2:
            c = -c
        coeffs[n] = c
    return GlobalSeries(-window, window, coeffs)


def phi_apply(f, p: int = 1):
    """Apply the q-difference automorphism phi^p to either series kind."""
    return f.phi(p)
