"""Exact linear algebra over PuiseuxSeries matrices and CoeffScalar matrices.

Series matrices are tuples of tuples; Gaussian elimination pivots on the
entry of least known valuation so that precision loss from series inversion
stays minimal.  Scalar (constant) matrices get their own small toolkit:
characteristic polynomials via Faddeev-LeVerrier, kernels by reduced row
echelon form, all exact.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import SingularGauge
from .scalars import ONE, ZERO, CoeffScalar, scalar
from .series import PuiseuxSeries

# ---------------------------------------------------------------------------
# series matrices


def mat_from_rows(rows):
    return tuple(tuple(r) for r in rows)


def mat_dim(a):
    return len(a)


def identity_matrix(n):
    one = PuiseuxSeries.one()
    zero = PuiseuxSeries.zero()
    return tuple(tuple(one if i == j else zero for j in range(n))
                 for i in range(n))


def zero_matrix(n, m=None):
    zero = PuiseuxSeries.zero()
    m = n if m is None else m
    return tuple(tuple(zero for _ in range(m)) for _ in range(n))


def mat_add(a, b):
    return tuple(tuple(x + y for x, y in zip(ra, rb))
                 for ra, rb in zip(a, b))


def mat_sub(a, b):
    return tuple(tuple(x - y for x, y in zip(ra, rb))
                 for ra, rb in zip(a, b))


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = PuiseuxSeries.zero()
            for t in range(k):
                acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_vec(a, v):
    out = []
    for row in a:
        acc = PuiseuxSeries.zero()
        for x, y in zip(row, v):
            acc = acc + x * y
        out.append(acc)
    return tuple(out)


def mat_phi(a, p=1):
    return tuple(tuple(x.phi(p) for x in row) for row in a)


def mat_transpose(a):
    return tuple(zip(*a))


def mat_scale(a, f):
    return tuple(tuple(x * f for x in row) for row in a)


def kron(a, b):
    nb = len(b)
    out = []
    for i in range(len(a)):
        for k in range(nb):
            row = []
            for j in range(len(a)):
                for l in range(nb):
                    row.append(a[i][j] * b[k][l])
            out.append(tuple(row))
    return tuple(out)


def block_diag(blocks):
    n = sum(len(b) for b in blocks)
    zero = PuiseuxSeries.zero()
    out = [[zero] * n for _ in range(n)]
    offset = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[offset + i][offset + j] = x
        offset += len(b)
    return tuple(tuple(r) for r in out)


def _pivot_row(rows, col, start):
    best = None
    best_v = None
    for i in range(start, len(rows)):
        x = rows[i][col]
        v = x.valuation()
        if v is None:
            continue
        if best_v is None or v < best_v:
            best, best_v = i, v
    return best


def _adjugate(a):
    n = len(a)
    if n == 1:
        return ((PuiseuxSeries.one(),),)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            minor = tuple(tuple(a[r][c] for c in range(n) if c != i)
                          for r in range(n) if r != j)
            d = mat_det(minor)
            row.append(d if (i + j) % 2 == 0 else -d)
        out.append(tuple(row))
    return tuple(out)


def mat_inv(a):
    """Inverse by elimination with valuation pivoting.

    Exact (Laurent-polynomial) matrices whose determinant is a monomial are
    inverted exactly through the adjugate; otherwise Gaussian elimination
    with truncated series arithmetic is used.  Raises SingularGauge when no
    invertible pivot is available at the working precision.
    """
    if all(x.prec is None for row in a for x in row):
        det = mat_det(a)
        if det.is_zero():
            raise SingularGauge("matrix not invertible (zero determinant)")
        if det.is_monomial():
            dinv = det.inv()
            return tuple(tuple(x * dinv for x in row)
                         for row in _adjugate(a))
    n = len(a)
    work = [list(row) + list(identity_matrix(n)[i])
            for i, row in enumerate(a)]
    for col in range(n):
        piv = _pivot_row(work, col, col)
        if piv is None:
            raise SingularGauge("matrix not invertible to working precision")
        work[col], work[piv] = work[piv], work[col]
        inv_p = work[col][col].inv()
        work[col] = [x * inv_p for x in work[col]]
        for i in range(n):
            if i != col:
                f = work[i][col]
                if not f.is_zero():
                    work[i] = [x - f * y
                               for x, y in zip(work[i], work[col])]
    return tuple(tuple(row[n:]) for row in work)


def mat_det(a):
    n = len(a)
    if n == 1:
        return a[0][0]
    if n == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    # cofactor expansion along the first row: exact, no divisions
    det = PuiseuxSeries.zero()
    for j in range(n):
        x = a[0][j]
        if x.is_zero():
            continue
        minor = tuple(tuple(row[k] for k in range(n) if k != j)
                      for row in a[1:])
        term = x * mat_det(minor)
        det = det + term if j % 2 == 0 else det - term
    return det


def mat_solve(a, b):
    """Solve a * x = b for a column vector b of series."""
    if all(x.prec is None for row in a for x in row):
        det = mat_det(a)
        if not det.is_zero() and det.is_monomial():
            dinv = det.inv()
            inv = tuple(tuple(x * dinv for x in row) for row in _adjugate(a))
            return mat_vec(inv, b)
    n = len(a)
    work = [list(row) + [b[i]] for i, row in enumerate(a)]
    for col in range(n):
        piv = _pivot_row(work, col, col)
        if piv is None:
            raise SingularGauge("singular system at working precision")
        work[col], work[piv] = work[piv], work[col]
        inv_p = work[col][col].inv()
        work[col] = [x * inv_p for x in work[col]]
        for i in range(n):
            if i != col:
                f = work[i][col]
                if not f.is_zero():
                    work[i] = [x - f * y
                               for x, y in zip(work[i], work[col])]
    return tuple(work[i][n] for i in range(n))


def mat_is_zero(a):
    return all(x.is_zero() for row in a for x in row)


def mat_truncate(a, prec):
    return tuple(tuple(x.truncate(prec) for x in row) for row in a)


def mat_eq_to_precision(a, b):
    return mat_is_zero(mat_sub(a, b))


# ---------------------------------------------------------------------------
# constant matrices over CoeffScalar


def cmat_from_rows(rows):
    return tuple(tuple(r) for r in rows)


def cmat_identity(n):
    return tuple(tuple(ONE if i == j else ZERO for j in range(n))
                 for i in range(n))


def cmat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    return tuple(tuple(
        sum((a[i][t] * b[t][j] for t in range(k)), ZERO)
        for j in range(m)) for i in range(n))


def cmat_vec(a, v):
    return tuple(sum((x * y for x, y in zip(row, v)), ZERO) for row in a)


def cmat_add(a, b):
    return tuple(tuple(x + y for x, y in zip(ra, rb))
                 for ra, rb in zip(a, b))


def cmat_sub(a, b):
    return tuple(tuple(x - y for x, y in zip(ra, rb))
                 for ra, rb in zip(a, b))


def cmat_scale(a, c):
    return tuple(tuple(x * c for x in row) for row in a)


def cmat_transpose(a):
    return tuple(zip(*a))


def cmat_trace(a):
    return sum((a[i][i] for i in range(len(a))), ZERO)


def cmat_char_poly(a):
    """Characteristic polynomial coefficients [c_0, ..., c_n] low-to-high,
    monic, by the Faddeev-LeVerrier recursion."""
    n = len(a)
    coeffs = [ONE]  # leading
    m = cmat_identity(n)
    c = -cmat_trace(a)
    coeffs.append(c)
    for k in range(2, n + 1):
        m = cmat_add(cmat_mul(a, m), cmat_scale(cmat_identity(n), c))
        am = cmat_mul(a, m)
        c = -(cmat_trace(am) / scalar(k))
        coeffs.append(c)
    coeffs.reverse()
    return coeffs


def cmat_rref(a):
    """Reduced row echelon form; returns (rref, pivot columns)."""
    rows = [list(r) for r in a]
    n = len(rows)
    m = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for col in range(m):
        piv = None
        for i in range(r, n):
            if not rows[i][col].is_zero():
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv_p = rows[r][col].inv()
        rows[r] = [x * inv_p for x in rows[r]]
        for i in range(n):
            if i != r and not rows[i][col].is_zero():
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == n:
            break
    return tuple(tuple(row) for row in rows), pivots


def cmat_rank(a):
    _, pivots = cmat_rref(a)
    return len(pivots)


def cmat_kernel(a):
    """Basis of the right kernel, canonical from the RREF."""
    rref, pivots = cmat_rref(a)
    m = len(a[0]) if a else 0
    free = [j for j in range(m) if j not in pivots]
    basis = []
    for j in free:
        vec = [ZERO] * m
        vec[j] = ONE
        for r, col in enumerate(pivots):
            vec[col] = -rref[r][j]
        basis.append(tuple(vec))
    return basis


def cmat_inv(a):
    n = len(a)
    aug = tuple(tuple(list(row) + list(cmat_identity(n)[i]))
                for i, row in enumerate(a))
    rref, pivots = cmat_rref(aug)
    if pivots[:n] != list(range(n)):
        raise SingularGauge("constant matrix not invertible")
    return tuple(tuple(row[n:]) for row in rref)


def cmat_solve(a, b):
    """Solve a*x = b (b a vector); raises SingularGauge if singular."""
    n = len(a)
    aug = tuple(tuple(list(row) + [b[i]]) for i, row in enumerate(a))
    rref, pivots = cmat_rref(aug)
    if len(pivots) > 0 and pivots[-1] == n:
        raise SingularGauge("inconsistent linear system")
    if pivots != list(range(n)):
        raise SingularGauge("singular linear system")
    return tuple(rref[i][n] for i in range(n))


def poly_eval_matrix(coeffs, a):
    """Evaluate a scalar polynomial (low-to-high) at a constant matrix."""
    n = len(a)
    out = cmat_scale(cmat_identity(n), coeffs[-1])
    for c in reversed(coeffs[:-1]):
        out = cmat_add(cmat_mul(out, a), cmat_scale(cmat_identity(n), c))
    return out
