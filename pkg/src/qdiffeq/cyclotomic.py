"""Exact arithmetic in cyclotomic fields Q(zeta_M).

An element is a vector of Fractions of length phi(M) over the power basis
1, zeta, ..., zeta^(phi(M)-1), reduced modulo the M-th cyclotomic polynomial.
M = 1 is the rationals; M = 2 is folded into M = 1 on construction (zeta_2
is rational).  Elements of different orders are compared or combined only
after embedding into a common Q(zeta_lcm).
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache


def _int_poly_div(num, den):
    # exact division of integer polynomials (low-to-high coefficient lists)
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        assert c % den[-1] == 0
        c //= den[-1]
        out[k] = c
        for j, d in enumerate(den):
            num[k + j] -= c * d
    assert all(v == 0 for v in num)
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple:
    """Monic cyclotomic polynomial Phi_n as an integer tuple, low to high."""
    if n == 1:
        return (-1, 1)
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly = _int_poly_div(poly, cyclotomic_poly(d))
    return tuple(poly)


@lru_cache(maxsize=None)
def _degree(m: int) -> int:
    return len(cyclotomic_poly(m)) - 1


@lru_cache(maxsize=None)
def _power_rows(m: int):
    """Vectors of x^k mod Phi_m for k = 0 .. 2*(deg-1), as Fraction tuples."""
    deg = _degree(m)
    phi = cyclotomic_poly(m)
    rows = []
    for k in range(deg):
        rows.append(tuple(Fraction(1) if i == k else Fraction(0)
                          for i in range(deg)))
    for k in range(deg, 2 * deg - 1):
        prev = rows[k - 1]
        shifted = [Fraction(0)] + list(prev[:-1])
        lead = prev[-1]
        if lead:
            for i in range(deg):
                shifted[i] -= lead * phi[i]
        rows.append(tuple(shifted))
    return tuple(rows)


def _poly_xgcd(a, b):
    # extended gcd for Fraction-coefficient polynomials; returns (g, s, t)
    r0, r1 = list(a), list(b)
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]

    def strip(p):
        while p and not p[-1]:
            p.pop()
        return p

    def sub_scaled(p, q, c, shift):
        while len(p) < len(q) + shift:
            p.append(Fraction(0))
        for i, qc in enumerate(q):
            p[i + shift] -= c * qc
        return strip(p)

    r0, r1 = strip(r0), strip(r1)
    while r1:
        while len(r0) >= len(r1):
            c = r0[-1] / r1[-1]
            shift = len(r0) - len(r1)
            r0 = sub_scaled(r0, r1, c, shift)
            s0 = sub_scaled(s0, s1, c, shift)
            t0 = sub_scaled(t0, t1, c, shift)
            if not r0:
                break
        r0, r1 = r1, r0
        s0, s1 = s1, s0
        t0, t1 = t1, t0
    return r0, s0, t0


class CycElem:
    """An element of Q(zeta_m), immutable."""

    __slots__ = ("m", "vec")

    def __init__(self, m, vec):
        self.m = m
        self.vec = vec

    @staticmethod
    def from_rational(value) -> "CycElem":
        return CycElem(1, (Fraction(value),))

    @staticmethod
    def zeta_power(m: int, j: int = 1) -> "CycElem":
        if m in (1, 2):
            return CycElem(1, (Fraction(1 if m == 1 or j % 2 == 0 else -1),))
        j %= m
        deg = _degree(m)
        if j < deg:
            vec = tuple(Fraction(1) if i == j else Fraction(0)
                        for i in range(deg))
            return CycElem(m, vec)
        rows = _power_rows(m)
        if j < len(rows):
            return CycElem(m, rows[j])
        # reduce via repeated squaring on basis powers
        out = CycElem.one(m)
        z = CycElem(m, rows[1])
        for _ in range(j):
            out = out.mul(z)
        return out

    @staticmethod
    def zero(m: int = 1) -> "CycElem":
        return CycElem(m, (Fraction(0),) * _degree(m))

    @staticmethod
    def one(m: int = 1) -> "CycElem":
        return CycElem(m, tuple(Fraction(1 if i == 0 else 0)
                                for i in range(_degree(m))))

    def is_zero(self) -> bool:
        return not any(self.vec)

    def is_one(self) -> bool:
        return self.vec[0] == 1 and not any(self.vec[1:])

    def is_rational(self) -> bool:
        return not any(self.vec[1:])

    def rational_value(self) -> Fraction:
        assert self.is_rational()
        return self.vec[0]

    def embed(self, m_new: int) -> "CycElem":
        if m_new == self.m:
            return self
        assert m_new % self.m == 0
        ratio = m_new // self.m
        deg_new = _degree(m_new)
        out = [Fraction(0)] * deg_new
        for j, c in enumerate(self.vec):
            if not c:
                continue
            power = CycElem.zeta_power(m_new, j * ratio)
            for i, p in enumerate(power.vec):
                if p:
                    out[i] += c * p
        return CycElem(m_new, tuple(out))

    def add(self, other: "CycElem") -> "CycElem":
        assert self.m == other.m
        return CycElem(self.m, tuple(a + b
                                     for a, b in zip(self.vec, other.vec)))

    def neg(self) -> "CycElem":
        return CycElem(self.m, tuple(-a for a in self.vec))

    def sub(self, other: "CycElem") -> "CycElem":
        assert self.m == other.m
        return CycElem(self.m, tuple(a - b
                                     for a, b in zip(self.vec, other.vec)))

    def mul(self, other: "CycElem") -> "CycElem":
        assert self.m == other.m
        va, vb = self.vec, other.vec
        if len(va) == 1:
            return CycElem(self.m, (va[0] * vb[0],))
        deg = len(va)
        conv = [Fraction(0)] * (2 * deg - 1)
        for i, a in enumerate(va):
            if not a:
                continue
            for j, b in enumerate(vb):
                if b:
                    conv[i + j] += a * b
        rows = _power_rows(self.m)
        out = list(conv[:deg])
        for k in range(deg, len(conv)):
            c = conv[k]
            if c:
                row = rows[k]
                for i, r in enumerate(row):
                    if r:
                        out[i] += c * r
        return CycElem(self.m, tuple(out))

    def scale(self, c: Fraction) -> "CycElem":
        return CycElem(self.m, tuple(a * c for a in self.vec))

    def inv(self) -> "CycElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic element")
        if len(self.vec) == 1:
            return CycElem(self.m, (1 / self.vec[0],))
        phi = [Fraction(c) for c in cyclotomic_poly(self.m)]
        g, s, _ = _poly_xgcd(list(self.vec), phi)
        assert len(g) == 1  # Phi_m is irreducible over Q
        c = 1 / g[0]
        deg = _degree(self.m)
        vec = [x * c for x in s] + [Fraction(0)] * (deg - len(s))
        return CycElem(self.m, tuple(vec[:deg]))

    def pow(self, n: int) -> "CycElem":
        if n < 0:
            return self.inv().pow(-n)
        out = CycElem.one(self.m)
        base = self
        while n:
            if n & 1:
                out = out.mul(base)
            base = base.mul(base)
            n >>= 1
        return out

    def root_of_unity_order(self):
        """Order of this element in the torsion of Q(zeta_m)*, or None."""
        if self.is_zero():
            return None
        limit = self.m if self.m % 2 == 0 else 2 * self.m
        if not self.pow(limit).is_one():
            return None
        for d in sorted(_divisors(limit)):
            if self.pow(d).is_one():
                return d
        return limit

    def __eq__(self, other):
        if not isinstance(other, CycElem):
            return NotImplemented
        if self.m == other.m:
            return self.vec == other.vec
        m = _lcm(self.m, other.m)
        return self.embed(m).vec == other.embed(m).vec

    def __hash__(self):
        if self.is_rational():
            return hash(self.vec[0])
        return hash((self.m, self.vec))

    def __repr__(self):
        if self.is_rational():
            return str(self.vec[0])
        terms = []
        for j, c in enumerate(self.vec):
            if not c:
                continue
            if j == 0:
                terms.append(str(c))
            else:
                base = f"zeta_{self.m}" + (f"^{j}" if j > 1 else "")
                if c == 1:
                    terms.append(base)
                elif c == -1:
                    terms.append(f"-{base}")
                else:
                    terms.append(f"{c}*{base}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


@lru_cache(maxsize=None)
def _divisors(n: int):
    out = []
    for d in range(1, n + 1):
        if n % d == 0:
            out.append(d)
    return tuple(out)
