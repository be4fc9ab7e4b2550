"""Slope filtration, formal decomposition and normal forms.

slope_filtration factors a skew operator into monic factors of strictly
increasing slope by a Newton-polygon-driven lift: the polygon fixes the
valuation profile of both factors, the graded parts initialize the lift,
and each z-order is then solved explicitly (the linear step is triangular
because the slopes are distinct, so the inf-convolution minimizer of the
two valuation profiles is unique).

formal_decompose refines each pure factor over the formal field: ramify,
untwist by the slope monomial, reduce the regular-singular remainder to a
constant matrix by shearing + Sylvester elimination, and read off the
eigenvalue classes and unipotent lengths.  The per-slope data is the
invariant triple (slope, class, length) with multiplicities.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .dmodule import (
    DiffModule,
    companion,
    companion_phi_matrix,
    cyclic_vector,
    unipotent_module,
)
from .errors import (
    EigenvalueNotInField,
    NotRegularSingular,
    PrecisionExhausted,
    ResonanceUnresolved,
    UnsupportedShape,
    ZeroOperator,
)
from .roots import find_roots
from .scalars import ONE, ZERO, CoeffScalar, q_power, scalar
from .series import DEFAULT_PRECISION, PuiseuxSeries
from .skew import NewtonPolygon, SkewOperator, newton_polygon


# ---------------------------------------------------------------------------
# data types


@dataclass(frozen=True)
class PureType:
    """Classification invariant of a pure indecomposable block."""

    slope: Fraction
    class_value: CoeffScalar
    length: int
    multiplicity: int = 1

    @property
    def slope_num(self) -> int:
        return self.slope.numerator

    @property
    def slope_den(self) -> int:
        return self.slope.denominator

    @property
    def dimension(self) -> int:
        return self.slope_den * self.length * self.multiplicity

    def sort_key(self):
        return (self.slope, self.length, repr(self.class_value))

    def __repr__(self):
        return (f"PureType(slope={self.slope}, class={self.class_value!r}, "
                f"length={self.length}, mult={self.multiplicity})")


@dataclass
class Filtration:
    """Factorization with strictly increasing slopes.

    The input operator equals unit * (factors[0] * ... * factors[-1]) *
    PHI^phi_shift at the tracked precision.
    """

    factors: list
    slopes: list
    unit: PuiseuxSeries
    phi_shift: int

    def recompose(self) -> SkewOperator:
        prod = SkewOperator.one()
        for f in self.factors:
            prod = prod * f
        prod = prod.scale(self.unit)
        if self.phi_shift:
            prod = SkewOperator({d + self.phi_shift: c
                                 for d, c in prod.coeffs.items()})
        return prod


# ---------------------------------------------------------------------------
# slope filtration


def _hull_heights(segments, total_len):
    """Heights of the monic hull walked from the right end (height 0)."""
    heights = {total_len: Fraction(0)}
    pos = total_len
    base = Fraction(0)
    for s, length in segments:
        for i in range(1, length + 1):
            heights[pos - i] = base + s * i
        base += s * length
        pos -= length
    return heights


def slope_filtration(op: SkewOperator, prec=DEFAULT_PRECISION) -> Filtration:
    """Factor an operator into monic factors of strictly increasing slope."""
    if op.is_zero():
        raise ZeroOperator("cannot factor the zero operator")
    shift = op.d_lo
    work = SkewOperator({d - shift: c for d, c in op.coeffs.items()}) \
        if shift else op
    unit = work.coeffs[work.d_hi]
    if unit != PuiseuxSeries.one():
        poly = newton_polygon(work)
        width = max(v for _, v in poly.vertices) - \
            min(v for _, v in poly.vertices)
        u_inv = unit.inv(prec=Fraction(prec) + width + 8 - unit.val_eff())
        work = work.scale(u_inv)
        fixed = dict(work.coeffs)
        fixed[work.d_hi] = PuiseuxSeries.one()
        work = SkewOperator(fixed)
    factors = _factor_monic(work, Fraction(prec))
    slopes = [newton_polygon(f).single_slope() for f in factors]
    return Filtration(factors=factors, slopes=slopes, unit=unit,
                      phi_shift=shift)


def _factor_monic(op: SkewOperator, prec: Fraction):
    poly = newton_polygon(op)
    if poly.is_pure():
        return [op]
    segments = poly.segments
    lam1, m1 = segments[0]
    m = op.d_hi
    m2 = m - m1
    v_p = {j: lam1 * (m1 - j) for j in range(m1 + 1)}
    v_r = _hull_heights(segments[1:], m2)
    nl = _hull_heights(segments, m)

    grid_den = 1
    for s, _ in segments:
        grid_den = grid_den * s.denominator // _gcd(grid_den, s.denominator)
    for c in op.coeffs.values():
        grid_den = grid_den * c.ram // _gcd(grid_den, c.ram)
    grid = Fraction(1, grid_den)

    coeff_maps = {}
    precs = {}
    for i in range(m + 1):
        c = op.coefficient(i)
        coeff_maps[i] = dict(c.coeffs)
        precs[i] = c.prec

    min_nl = min(nl.values())
    e_target = prec - min(Fraction(0), min_nl)
    e_cap = None
    for i in range(m):
        if precs[i] is not None:
            room = precs[i] - nl[i]
            if e_cap is None or room < e_cap:
                e_cap = room
    if e_cap is not None:
        if e_cap <= 0:
            raise PrecisionExhausted(
                "input operator has too little precision for the lift")
        capped = (int((e_cap - grid) / grid)) * grid
        e_target = min(e_target, capped)
    e_target = int(e_target / grid) * grid

    p = [dict() for _ in range(m1 + 1)]
    r = [dict() for _ in range(m2 + 1)]
    p[m1][Fraction(0)] = ONE
    r[m2][Fraction(0)] = ONE
    p00 = None

    def conv(i, w_total):
        acc = ZERO
        for j in range(max(0, i - m2), min(i, m1) + 1):
            pj = p[j]
            rk = r[i - j]
            if not pj or not rk:
                continue
            if j == 0:
                for w2, cr in rk.items():
                    cp = pj.get(w_total - w2)
                    if cp is not None:
                        acc = acc + cp * cr
            else:
                for w2, cr in rk.items():
                    cp = pj.get(w_total - w2)
                    if cp is not None:
                        acc = acc + cp * q_power(j * w2) * cr
        return acc

    e = Fraction(0)
    while e <= e_target:
        for i in range(m - 1, m2 - 1, -1):
            w_total = nl[i] + e
            aval = coeff_maps[i].get(w_total, ZERO)
            x = aval - conv(i, w_total)
            if x:
                p[i - m2][w_total] = x
        if p00 is None:
            p00 = p[0].get(nl[m2])
            if p00 is None or p00.is_zero():
                raise PrecisionExhausted(
                    "polygon vertex coefficient vanished during the lift")
            p00_inv = p00.inv()
        vp0 = nl[m2]
        for i in range(m2 - 1, -1, -1):
            w_total = nl[i] + e
            aval = coeff_maps[i].get(w_total, ZERO)
            y = (aval - conv(i, w_total)) * p00_inv
            if y:
                r[i][w_total - vp0] = y
        e += grid

    left = SkewOperator({
        j: PuiseuxSeries(p[j], prec=v_p[j] + e_target + grid)
        for j in range(m1 + 1) if p[j]})
    right = SkewOperator({
        k: PuiseuxSeries(r[k], prec=v_r[k] + e_target + grid)
        for k in range(m2 + 1) if r[k]})
    return [left] + _factor_monic(right, prec)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


# ---------------------------------------------------------------------------
# regular singular reduction


@dataclass
class RSNormalForm:
    """Constant normal form of a regular singular presentation.

    w: constant matrix (PHI-action convention) with eigenvalue valuations
    in [0, step); gauge: series matrix V with V^-1 C phi(V) = w for the
    reduced input presentation; eigen: list of (eigenvalue, jordan block
    lengths) pairs in a deterministic order.
    """

    w: tuple
    gauge: tuple
    eigen: list
    step: Fraction

    def eigenvalues(self):
        return [(root, sum(lengths)) for root, lengths in self.eigen]

    def is_semisimple(self) -> bool:
        return all(all(l == 1 for l in lengths) for _, lengths in self.eigen)


def _const_term_matrix(c_ser):
    return tuple(tuple(x.coefficient(0) for x in row) for row in c_ser)


def _const_to_series(cm):
    return tuple(tuple(PuiseuxSeries.constant(x) for x in row) for row in cm)


def _gen_eigenspace(c0, root, dim):
    shifted = linalg.cmat_sub(c0, linalg.cmat_scale(linalg.cmat_identity(dim),
                                                    root))
    power = linalg.cmat_identity(dim)
    for _ in range(dim):
        power = linalg.cmat_mul(shifted, power)
    return linalg.cmat_kernel(power)


def _jordan_lengths(c0, root, dim):
    shifted = linalg.cmat_sub(c0, linalg.cmat_scale(linalg.cmat_identity(dim),
                                                    root))
    dims = [0]
    power = linalg.cmat_identity(dim)
    while True:
        power = linalg.cmat_mul(shifted, power)
        k = dim - linalg.cmat_rank(power)
        dims.append(k)
        if k == dims[-2]:
            dims.pop()
            break
    ge_counts = [dims[k] - dims[k - 1] for k in range(1, len(dims))]
    lengths = []
    for k in range(len(ge_counts), 0, -1):
        exactly = ge_counts[k - 1] - (ge_counts[k] if k < len(ge_counts)
                                      else 0)
        lengths.extend([k] * exactly)
    return sorted(lengths, reverse=True)


def _sylvester_solve(a, b, rhs):
    """Solve a X - X b = rhs for constant matrices (vectorized)."""
    n = len(a)
    size = n * n
    big = [[ZERO] * size for _ in range(size)]
    vec = [ZERO] * size
    for i in range(n):
        for j in range(n):
            row = i * n + j
            vec[row] = rhs[i][j]
            for k in range(n):
                big[row][k * n + j] = big[row][k * n + j] + a[i][k]
            for l in range(n):
                big[row][i * n + l] = big[row][i * n + l] - b[l][j]
    sol = linalg.cmat_solve(tuple(tuple(r) for r in big), tuple(vec))
    return tuple(tuple(sol[i * n + j] for j in range(n)) for i in range(n))


def reduce_regular_cmatrix(c_ser, step: Fraction, prec,
                           need_gauge=True) -> RSNormalForm:
    """Normalize a regular presentation C (phi-matrix, entries of valuation
    >= 0, constant term invertible) to its constant normal form.

    With need_gauge=False the Sylvester elimination stage is skipped: the
    constant part after shearing already carries the eigenvalue classes and
    Jordan structure, so classification callers avoid the series work.
    """
    dim = len(c_ser)
    prec = Fraction(prec)
    gauge = linalg.identity_matrix(dim)
    for row in c_ser:
        for x in row:
            v = x.valuation()
            if v is not None and v < 0:
                raise NotRegularSingular(
                    "presentation has negative-order entries")

    guard = 0
    while True:
        c0 = _const_term_matrix(c_ser)
        roots = find_roots(linalg.cmat_char_poly(c0))
        moves = []
        for root, mult in roots:
            if root.is_zero():
                raise NotRegularSingular("nilpotent constant term")
            s = root.w() / step
            moves.append((root, mult, _floor(s)))
        if all(s == 0 for _, _, s in moves):
            break
        guard += 1
        if guard > 8 * dim + 4 * sum(abs(s) for _, _, s in moves):
            raise ResonanceUnresolved(
                "shearing did not normalize eigenvalue valuations")
        high = [rm for rm in moves if rm[2] >= 1]
        group = high if high else [rm for rm in moves if rm[2] <= -1]
        zexp = -step if high else step
        group_roots = [g[0] for g in group]
        basis = []
        for root in group_roots:
            basis.extend(_gen_eigenspace(c0, root, dim))
        d = len(basis)
        for root, _, _ in moves:
            if not any(root == g for g in group_roots):
                basis.extend(_gen_eigenspace(c0, root, dim))
        g_mat = linalg.cmat_transpose(tuple(basis))  # columns = basis
        g_inv = linalg.cmat_inv(g_mat)
        g_ser = _const_to_series(g_mat)
        g_inv_ser = _const_to_series(g_inv)
        c_ser = linalg.mat_mul(g_inv_ser, linalg.mat_mul(c_ser, g_ser))
        gauge = linalg.mat_mul(gauge, g_ser)
        shear = tuple(tuple(
            PuiseuxSeries.monomial(zexp) if (i == j and i < d)
            else (PuiseuxSeries.one() if i == j else PuiseuxSeries.zero())
            for j in range(dim)) for i in range(dim))
        shear_inv = tuple(tuple(
            PuiseuxSeries.monomial(-zexp) if (i == j and i < d)
            else (PuiseuxSeries.one() if i == j else PuiseuxSeries.zero())
            for j in range(dim)) for i in range(dim))
        c_ser = linalg.mat_mul(shear_inv,
                               linalg.mat_mul(c_ser, linalg.mat_phi(shear)))
        gauge = linalg.mat_mul(gauge, shear)
        for row in c_ser:
            for x in row:
                v = x.valuation()
                if v is not None and v < 0:
                    raise ResonanceUnresolved(
                        "shearing produced a negative-order entry")

    # Sylvester elimination of all positive orders
    c0 = _const_term_matrix(c_ser)
    if not need_gauge:
        eigen = []
        for root, mult in find_roots(linalg.cmat_char_poly(c0)):
            eigen.append((root, _jordan_lengths(c0, root, dim)))
        eigen.sort(key=lambda rl: (repr(rl[0]), rl[1]))
        return RSNormalForm(w=c0, gauge=gauge, eigen=eigen, step=step)
    order_coeffs = {}
    max_prec = prec
    for i, row in enumerate(c_ser):
        for j, x in enumerate(row):
            if x.prec is not None:
                max_prec = min(max_prec, x.prec)
            for k, v in x.coeffs.items():
                if k > 0:
                    order_coeffs.setdefault(k, {})[(i, j)] = v
    u_parts = {Fraction(0): linalg.cmat_identity(dim)}
    grid = Fraction(1, _ram_of(c_ser))
    o = grid
    while o < max_prec:
        rhs = [[ZERO] * dim for _ in range(dim)]
        nonzero = False
        for j_ord, entries in order_coeffs.items():
            f_ord = o - j_ord
            if f_ord < 0 or f_ord not in u_parts:
                continue
            u_f = u_parts[f_ord]
            qf = q_power(f_ord)
            for (i, j), val in entries.items():
                coeff = val * qf
                for l in range(dim):
                    node = u_f[j][l]
                    if not node.is_zero():
                        rhs[i][l] = rhs[i][l] - coeff * node
                        nonzero = True
        if nonzero:
            a_mat = linalg.cmat_scale(c0, q_power(o))
            u_o = _sylvester_solve(a_mat, c0, tuple(tuple(r) for r in rhs))
            u_parts[o] = u_o
        o += grid

    u_ser = tuple(tuple(
        PuiseuxSeries({k: u_parts[k][i][j] for k in u_parts
                       if not u_parts[k][i][j].is_zero()}, prec=max_prec)
        for j in range(dim)) for i in range(dim))
    gauge = linalg.mat_mul(gauge, u_ser)

    eigen = []
    for root, mult in find_roots(linalg.cmat_char_poly(c0)):
        eigen.append((root, _jordan_lengths(c0, root, dim)))
    eigen.sort(key=lambda rl: (repr(rl[0]), rl[1]))
    return RSNormalForm(w=c0, gauge=gauge, eigen=eigen, step=step)


def _ram_of(c_ser):
    ram = 1
    for row in c_ser:
        for x in row:
            ram = ram * x.ram // _gcd(ram, x.ram)
    return ram


def _floor(f: Fraction) -> int:
    return f.numerator // f.denominator


def _rs_reduce_module(module: DiffModule, step: Fraction, prec,
                      need_gauge=True) -> RSNormalForm:
    from .errors import SingularGauge
    c_ser = module.phi_matrix()
    pre_gauge = None
    direct = all(
        (x.valuation() is None or x.valuation() >= 0)
        for row in c_ser for x in row)
    if direct:
        c0 = _const_term_matrix(c_ser)
        try:
            linalg.cmat_inv(c0)
        except SingularGauge:
            direct = False
    if not direct:
        op, _, basis = cyclic_vector(module)
        poly = newton_polygon(op)
        if not (poly.is_pure() and poly.single_slope() == 0):
            raise NotRegularSingular(
                f"slopes {poly.slopes()} are not all zero")
        c_ser = companion_phi_matrix(op)
        pre_gauge = basis  # columns = PHI-iterates of the cyclic vector
    nf = reduce_regular_cmatrix(c_ser, step, prec, need_gauge=need_gauge)
    if need_gauge and pre_gauge is not None:
        nf = RSNormalForm(w=nf.w,
                          gauge=linalg.mat_mul(pre_gauge, nf.gauge),
                          eigen=nf.eigen, step=nf.step)
    return nf


def rs_normalize(module: DiffModule, prec=DEFAULT_PRECISION):
    """Normalize a regular singular module to a constant matrix.

    Returns an RSNormalForm whose w is the PHI-action constant matrix with
    all eigenvalue valuations in [0, 1); the gauge field is the series
    basis change V with V^-1 C phi(V) = w for the module's phi-matrix C.
    Raises NotRegularSingular when the module has a nonzero slope.
    """
    return _rs_reduce_module(module, Fraction(1), prec)


# ---------------------------------------------------------------------------
# formal decomposition


def _merge_types(types):
    merged = []
    for t in sorted(types, key=PureType.sort_key):
        for i, u in enumerate(merged):
            if (u.slope == t.slope and u.length == t.length
                    and u.class_value == t.class_value):
                merged[i] = PureType(u.slope, u.class_value, u.length,
                                     u.multiplicity + t.multiplicity)
                break
        else:
            merged.append(t)
    return merged


def _normalize_class(c: CoeffScalar, span: Fraction = Fraction(1)):
    """Multiply by an integer q-power so that w lands in [0, span)."""
    k = c.w() / span
    return c * q_power(-_floor(k) * span)


def decompose_pure_factor(factor: SkewOperator, slope: Fraction, prec):
    """PureTypes of a single monic pure factor."""
    d = factor.d_hi
    n = slope.denominator
    if d == 1:
        u = -factor.coefficient(0)
        lead = u.leading_coefficient()
        cls = _normalize_class(lead)
        return [PureType(slope, cls, 1, 1)]
    twist = PuiseuxSeries.monomial(-slope)
    c_ser = linalg.mat_scale(companion_phi_matrix(factor), twist)
    untwisted = DiffModule.from_phi_matrix(c_ser)
    nf = _rs_reduce_module(untwisted, Fraction(1, n), prec,
                           need_gauge=False)
    buckets = []
    for root, lengths in nf.eigen:
        cls = root ** n
        for length in lengths:
            for i, (c2, l2, count) in enumerate(buckets):
                if l2 == length and c2 == cls:
                    buckets[i] = (c2, l2, count + 1)
                    break
            else:
                buckets.append((cls, length, 1))
    types = []
    for cls, length, count in buckets:
        if count % n:
            raise EigenvalueNotInField(
                "ramified eigenvalue classes did not group into conjugacy "
                "orbits")
        types.append(PureType(slope, cls, length, count // n))
    return types


def formal_decompose(module: DiffModule, prec=DEFAULT_PRECISION):
    """Complete multiset of pure-type invariants over the formal field."""
    op, _, _ = cyclic_vector(module)
    return decompose_operator(op, prec)


def decompose_operator(op: SkewOperator, prec=DEFAULT_PRECISION):
    filt = slope_filtration(op, prec)
    types = []
    for f, lam in zip(filt.factors, filt.slopes):
        types.extend(decompose_pure_factor(f, lam, prec))
    return _merge_types(types)


# ---------------------------------------------------------------------------
# normal forms and the global lattice


def pure_normal_operator(slope: Fraction, class_value: CoeffScalar) \
        -> SkewOperator:
    """Canonical operator of the irreducible block with given invariants:
    PHI^n - class * q^(t(n-1)/2) * z^t."""
    t, n = slope.numerator, slope.denominator
    coeff = class_value * q_power(Fraction(t * (n - 1), 2))
    return SkewOperator({n: PuiseuxSeries.one(),
                         0: PuiseuxSeries.monomial(t, -coeff)})


def pure_block_matrix(ptype: PureType):
    """A-convention matrix of the canonical pure block (one copy)."""
    base = companion(pure_normal_operator(ptype.slope, ptype.class_value))
    if ptype.length == 1:
        return base.mat
    return linalg.kron(base.mat, unipotent_module(ptype.length).mat)


def split_normal_module(types) -> DiffModule:
    """Block-diagonal module realizing a multiset of pure types."""
    blocks = []
    for t in sorted(types, key=PureType.sort_key):
        for _ in range(t.multiplicity):
            blocks.append(pure_block_matrix(t))
    return DiffModule(linalg.block_diag(blocks), check=False)


def global_lattice(module: DiffModule, prec=DEFAULT_PRECISION) -> DiffModule:
    """Gauge-equivalent presentation with Laurent-polynomial entries.

    One slope: the canonical split normal form of the formal type multiset
    (valid over the convergent field since pure modules are split).  Two
    slopes: the two-block normal form with the reduced extension block.
    More: UnsupportedShape (documented non-goal).
    """
    types = formal_decompose(module, prec)
    slopes = sorted({t.slope for t in types})
    if len(slopes) == 1:
        return split_normal_module(types)
    if len(slopes) == 2:
        from .moduli import moduli_point
        return moduli_point(module, prec=prec).normalized
    raise UnsupportedShape(
        "global normal form implemented for at most two distinct slopes")
