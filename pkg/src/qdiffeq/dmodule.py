"""Difference modules as matrix equations Y = A phi(Y).

Conventions, fixed once for the whole library:

* A DiffModule stores the invertible matrix A for which solution vectors
  satisfy Y = A phi(Y).
* The action of PHI on coordinate vectors of module elements is
  v |-> C phi(v) with C = (A^-1)^T, the "phi matrix".  In particular the
  rank-1 dictionary reads: PHI e = c e  <=>  A = (c^-1).
* Gauge transforms act by A |-> U^-1 A phi(U); on the phi matrix the same
  rule holds with the gauge (U^T)^-1.

companion() and cyclic_vector() translate between scalar operators and
matrix presentations; construct() realizes direct sums, tensor products,
internal homs and duals on the stored matrices.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import (
    NonMonic,
    PrecisionExhausted,
    SingularConstantTerm,
    SingularGauge,
)
from . import linalg
from .scalars import CoeffScalar, scalar
from .series import PuiseuxSeries
from .skew import SkewOperator


def _coerce_entry(x):
    if isinstance(x, PuiseuxSeries):
        return x
    if isinstance(x, CoeffScalar):
        return PuiseuxSeries.constant(x)
    if isinstance(x, (int, Fraction)):
        return PuiseuxSeries.constant(scalar(x))
    raise TypeError(f"bad matrix entry {x!r}")


class DiffModule:
    """A difference module presented by an invertible series matrix.

    Either presentation (the equation matrix A or the PHI-action matrix
    C = (A^-1)^T) is computed lazily from the other, so pipelines that only
    need one side never pay for the inversion.
    """

    __slots__ = ("_mat", "dim", "_phi")

    def __init__(self, mat, check=True):
        rows = tuple(tuple(_coerce_entry(x) for x in row) for row in mat)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        if check:
            det = linalg.mat_det(rows)
            if det.is_zero():
                raise SingularGauge(
                    "module matrix is singular to working precision")
        self._mat = rows
        self.dim = n
        self._phi = None

    # -- dictionaries --------------------------------------------------------

    @staticmethod
    def from_phi_scalar(u) -> "DiffModule":
        """Rank-1 module PHI e = u e (u a series or scalar)."""
        u = _coerce_entry(u)
        mod = DiffModule(((u.inv(),),), check=False)
        mod._phi = ((u,),)
        return mod

    @staticmethod
    def from_phi_matrix(c_mat) -> "DiffModule":
        """Module with a prescribed PHI-action matrix C (columns = images)."""
        rows = tuple(tuple(_coerce_entry(x) for x in row) for row in c_mat)
        mod = DiffModule.__new__(DiffModule)
        mod._mat = None
        mod._phi = rows
        mod.dim = len(rows)
        return mod

    @property
    def mat(self):
        if self._mat is None:
            self._mat = linalg.mat_transpose(linalg.mat_inv(self._phi))
        return self._mat

    def phi_matrix(self):
        """C = (A^-1)^T: PHI acts on coordinates by v -> C phi(v)."""
        if self._phi is None:
            self._phi = linalg.mat_transpose(linalg.mat_inv(self._mat))
        return self._phi

    def __eq__(self, other):
        if not isinstance(other, DiffModule):
            return NotImplemented
        return self.mat == other.mat

    def __repr__(self):
        return f"DiffModule({self.dim}x{self.dim})"

    def truncate(self, prec) -> "DiffModule":
        return DiffModule(linalg.mat_truncate(self.mat, prec), check=False)


def companion(op: SkewOperator) -> DiffModule:
    """Module of a monic operator PHI^m + a_(m-1) PHI^(m-1) + ... + a_0.

    The scalar relation is recovered by cyclic_vector; a_0 must be
    invertible (SingularConstantTerm) and the operator monic in polynomial
    position (NonMonic).
    """
    if op.is_zero() or op.d_lo < 0 or not op.is_monic_polynomial():
        raise NonMonic("companion needs a monic PHI-polynomial")
    m = op.d_hi
    if m < 1:
        raise NonMonic("companion needs degree >= 1")
    a0 = op.coefficient(0)
    if a0.is_zero():
        raise SingularConstantTerm("constant term must be invertible")
    a0_inv = a0.inv()
    zero = PuiseuxSeries.zero()
    rows = []
    top = [-(a0_inv * op.coefficient(k + 1)) for k in range(m - 1)]
    top.append(-a0_inv)
    rows.append(tuple(top))
    for j in range(1, m):
        rows.append(tuple(PuiseuxSeries.one() if k == j - 1 else zero
                          for k in range(m)))
    mod = DiffModule(rows, check=False)
    mod._phi = companion_phi_matrix(op)
    return mod


def companion_phi_matrix(op: SkewOperator):
    """PHI-action matrix of the companion module, built directly: ones on
    the subdiagonal, last column -a_0 ... -a_(m-1)."""
    m = op.d_hi
    zero = PuiseuxSeries.zero()
    rows = []
    for i in range(m):
        row = [PuiseuxSeries.one() if j == i - 1 else zero
               for j in range(m - 1)]
        row.append(-op.coefficient(i))
        rows.append(tuple(row))
    return tuple(rows)


def _candidate_vectors(n: int):
    """Deterministic cyclic vector candidates: standard basis vectors, then
    sum-of-basis vectors with exponent tuples enumerated by shells."""
    zero = PuiseuxSeries.zero()
    for i in range(n):
        yield tuple(PuiseuxSeries.one() if j == i else zero
                    for j in range(n))
    max_h = 2 if n <= 3 else 1
    for h in range(0, max_h + 1):
        tuples = [()]
        for _ in range(n):
            tuples = [t + (k,) for t in tuples for k in range(h + 1)]
        for t in tuples:
            if h and max(t) != h:
                continue  # already produced in a smaller shell
            yield tuple(PuiseuxSeries.z_power(k) for k in t)


def cyclic_vector(module: DiffModule, max_candidates: int = 200):
    """Monic operator L with M = K[PHI,PHI^-1] / (L), plus a certificate.

    Returns (op, vector, basis_matrix) where basis_matrix columns are the
    PHI-iterates of the vector.  The candidate search is deterministic;
    PrecisionExhausted is raised when no candidate certifies independence.
    """
    n = module.dim
    c = module.phi_matrix()
    count = 0
    for cand in _candidate_vectors(n):
        count += 1
        if count > max_candidates:
            break
        iterates = [cand]
        for _ in range(n):
            prev = iterates[-1]
            iterates.append(linalg.mat_vec(c, tuple(x.phi() for x in prev)))
        w = linalg.mat_transpose(tuple(iterates[:n]))  # columns = iterates
        det = linalg.mat_det(w)
        if det.is_zero():
            continue
        try:
            x = linalg.mat_solve(w, iterates[n])
        except SingularGauge:
            continue
        coeffs = {n: PuiseuxSeries.one()}
        for i, xi in enumerate(x):
            coeffs[i] = -xi
        return SkewOperator(coeffs), cand, w
    raise PrecisionExhausted(
        "no cyclic vector certified at working precision")


def construct(kind: str, m1: DiffModule, m2: DiffModule = None) -> DiffModule:
    """Linear-algebra constructions on stored matrices.

    dsum: block diagonal; tensor: Kronecker product; dual: (A^-1)^T;
    hom(M, N) = dual(M) tensor N.
    """
    if kind == "dsum":
        return DiffModule(linalg.block_diag([m1.mat, m2.mat]), check=False)
    if kind == "tensor":
        return DiffModule(linalg.kron(m1.mat, m2.mat), check=False)
    if kind == "dual":
        return DiffModule(linalg.mat_transpose(linalg.mat_inv(m1.mat)),
                          check=False)
    if kind == "hom":
        dual = linalg.mat_transpose(linalg.mat_inv(m1.mat))
        return DiffModule(linalg.kron(dual, m2.mat), check=False)
    raise ValueError(f"unknown construction kind {kind!r}")


def gauge_transform(module: DiffModule, u) -> DiffModule:
    """Basis change A -> U^-1 A phi(U); raises SingularGauge when U is not
    invertible at the working precision."""
    rows = tuple(tuple(_coerce_entry(x) for x in row) for row in u)
    u_inv = linalg.mat_inv(rows)
    new = linalg.mat_mul(u_inv, linalg.mat_mul(module.mat,
                                               linalg.mat_phi(rows)))
    return DiffModule(new, check=False)


def unipotent_module(m: int) -> DiffModule:
    """U_m: the length-m unipotent module (single Jordan block, eigenvalue 1)."""
    one = PuiseuxSeries.one()
    zero = PuiseuxSeries.zero()
    c = tuple(tuple(one if i == j or j == i + 1 else zero
                    for j in range(m)) for i in range(m))
    return DiffModule.from_phi_matrix(c)
