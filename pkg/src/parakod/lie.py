"""Structure constants of real Lie algebras, exactly.

Conventions (used by every other module):

* indices are 1-based, as in ``de^i = sum_{j<k} mu^i_{jk} e^j ^ e^k``;
* the bracket of the dual frame is ``[e_j, e_k] = -sum_i mu^i_{jk} e_i``.

Coefficient vectors passed to :func:`bracket` are 0-based Python sequences
of length ``n``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import linalg
from .gaussian import Gaussian, to_fraction


class LieError(ValueError):
    """Invalid structure-constant or matrix input."""


class NotClosed(LieError):
    """A commutator of basis matrices leaves their real span."""


class DependentBasis(LieError):
    """Basis matrices are linearly dependent over the reals."""


@dataclass(frozen=True)
class StructureConstants:
    """The tensor ``mu^i_{jk}`` for ``j < k``; absent entries are zero.

    Accepts a mapping ``(i, j, k) -> rational``.  Zero values are dropped so
    that equality of two instances is equality of the tensors.
    """

    dim: int
    table: Mapping[tuple, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if not isinstance(self.dim, int) or self.dim < 1:
            raise LieError(f"dimension must be a positive integer, got {self.dim!r}")
        clean = {}
        for key, value in dict(self.table).items():
            i, j, k = key
            for idx in key:
                if not 1 <= idx <= self.dim:
                    raise LieError(f"index {idx} out of range 1..{self.dim} in {key}")
            if j >= k:
                raise LieError(f"only j < k may be stored, got {key}")
            value = to_fraction(value)
            if value != 0:
                clean[(i, j, k)] = value
        object.__setattr__(self, "table", dict(sorted(clean.items())))

    def __hash__(self):
        return hash((self.dim, tuple(self.table.items())))

    def mu(self, i: int, j: int, k: int) -> Fraction:
        """``mu^i_{jk}`` extended antisymmetrically to all ``j, k``."""
        if j == k:
            return Fraction(0)
        if j < k:
            return self.table.get((i, j, k), Fraction(0))
        return -self.table.get((i, k, j), Fraction(0))

    def bracket_basis(self, j: int, k: int) -> list:
        """Coefficients of ``[e_j, e_k]`` (0-based list)."""
        return [-self.mu(i, j, k) for i in range(1, self.dim + 1)]

    def is_abelian(self) -> bool:
        return not self.table


def abelian(n: int) -> StructureConstants:
    return StructureConstants(n, {})


def _check_vec(sc, x):
    if len(x) != sc.dim:
        raise LieError(f"vector of length {len(x)} for a {sc.dim}-dimensional algebra")


def bracket(sc: StructureConstants, x: Sequence, y: Sequence) -> list:
    """Bilinear extension of ``[e_j, e_k] = -sum_i mu^i_{jk} e_i``."""
    _check_vec(sc, x)
    _check_vec(sc, y)
    out = [0] * sc.dim
    for (i, j, k), c in sc.table.items():
        # [e_j, e_k] and [e_k, e_j] both contribute
        w = x[j - 1] * y[k - 1] - x[k - 1] * y[j - 1]
        if w != 0:
            out[i - 1] = out[i - 1] - c * w
    return out


def _basis(n, a):
    v = [Fraction(0)] * n
    v[a - 1] = Fraction(1)
    return v


def jacobi_defect(sc: StructureConstants) -> dict:
    """Nonzero coefficients of ``e_i`` in the cyclic sum
    ``[[e_j,e_k],e_l] + [[e_k,e_l],e_j] + [[e_l,e_j],e_k]`` for ``j<k<l``.

    Keys are ``(i, j, k, l)``; an empty result means ``sc`` is a Lie algebra.
    """
    n = sc.dim
    basis = [_basis(n, a) for a in range(1, n + 1)]
    out = {}
    for j, k, l in itertools.combinations(range(1, n + 1), 3):
        total = [0] * n
        for a, b, c in ((j, k, l), (k, l, j), (l, j, k)):
            inner = bracket(sc, basis[a - 1], basis[b - 1])
            outer = bracket(sc, inner, basis[c - 1])
            total = [s + t for s, t in zip(total, outer)]
        for i, v in enumerate(total, start=1):
            if v != 0:
                out[(i, j, k, l)] = Fraction(v)
    return out


def is_lie_algebra(sc: StructureConstants) -> bool:
    return not jacobi_defect(sc)


def adjoint_matrix(sc: StructureConstants, i: int) -> list:
    """Matrix of ``ad(e_i)``; column ``j`` holds ``[e_i, e_j]``."""
    if not 1 <= i <= sc.dim:
        raise LieError(f"index {i} out of range 1..{sc.dim}")
    ei = _basis(sc.dim, i)
    cols = [bracket(sc, ei, _basis(sc.dim, j)) for j in range(1, sc.dim + 1)]
    return linalg.transpose(cols)


def adjoint_trace(sc: StructureConstants, i: int) -> Fraction:
    m = adjoint_matrix(sc, i)
    return Fraction(sum(m[a][a] for a in range(sc.dim)))


def is_unimodular(sc: StructureConstants) -> bool:
    """``tr ad(e_i) = 0`` for every basis vector, via the adjoint matrices."""
    return all(adjoint_trace(sc, i) == 0 for i in range(1, sc.dim + 1))


def unimodular_sum_condition(sc: StructureConstants) -> bool:
    """``sum_{i<k} mu^i_{ik} == sum_{k<i} mu^i_{ki}`` for all ``k``, straight
    from the table (no brackets involved)."""
    n = sc.dim
    for k in range(1, n + 1):
        left = sum((sc.table.get((i, i, k), 0) for i in range(1, k)), Fraction(0))
        right = sum((sc.table.get((i, k, i), 0) for i in range(k + 1, n + 1)), Fraction(0))
        if left != right:
            return False
    return True


@dataclass(frozen=True)
class BasisChange:
    """Invertible rational matrix ``P``; the new frame is
    ``e'_i = sum_j P[j][i] e_j`` (columns are the new vectors)."""

    matrix: tuple

    def __post_init__(self):
        rows = tuple(tuple(to_fraction(x) for x in row) for row in self.matrix)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise LieError("basis change must be a non-empty square matrix")
        if linalg.det([list(r) for r in rows]) == 0:
            raise linalg.SingularMatrixError("basis change matrix is singular")
        object.__setattr__(self, "matrix", rows)

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def inverse(self) -> "BasisChange":
        return BasisChange(linalg.inverse([list(r) for r in self.matrix]))

    @classmethod
    def identity(cls, n: int) -> "BasisChange":
        return cls(linalg.identity(n))

    @classmethod
    def permutation(cls, images: Sequence[int]) -> "BasisChange":
        """``e'_a = e_{images[a-1]}``."""
        n = len(images)
        m = [[0] * n for _ in range(n)]
        for a, t in enumerate(images):
            m[t - 1][a] = 1
        return cls(m)


def change_basis(sc: StructureConstants, p: BasisChange) -> StructureConstants:
    """Structure constants of the frame ``e'_i = sum_j P[j][i] e_j``."""
    if p.dim != sc.dim:
        raise LieError(f"basis change of size {p.dim} for a {sc.dim}-dimensional algebra")
    n = sc.dim
    cols = [[p.matrix[r][a] for r in range(n)] for a in range(n)]
    pinv = linalg.inverse([list(r) for r in p.matrix])
    table = {}
    for a, b in itertools.combinations(range(n), 2):
        br = bracket(sc, cols[a], cols[b])
        # express [e'_a, e'_b] in the new frame, then mu' = -coefficient
        for c in range(n):
            coeff = sum((pinv[c][i] * br[i] for i in range(n) if br[i] != 0), Fraction(0))
            if coeff != 0:
                table[(c + 1, a + 1, b + 1)] = -coeff
    return StructureConstants(n, table)


# -- matrix bases -------------------------------------------------------------

@dataclass(frozen=True)
class MatrixBasis:
    """``n`` square matrices of size ``d`` with Gaussian-rational entries."""

    matrices: tuple
    names: tuple = ()

    def __post_init__(self):
        mats = tuple(tuple(tuple(Gaussian.coerce(x) for x in row) for row in m)
                     for m in self.matrices)
        if not mats:
            raise LieError("empty matrix basis")
        d = len(mats[0])
        for m in mats:
            if len(m) != d or any(len(row) != d for row in m):
                raise LieError("basis matrices must all be square of the same size")
        object.__setattr__(self, "matrices", mats)

    @property
    def dim(self) -> int:
        return len(self.matrices)

    @property
    def ambient(self) -> int:
        return len(self.matrices[0])


def mat_mul(a, b):
    d = len(a)
    return tuple(tuple(sum((a[r][t] * b[t][c] for t in range(d)), Gaussian(0))
                       for c in range(d)) for r in range(d))


def commutator(a, b):
    ab = mat_mul(a, b)
    ba = mat_mul(b, a)
    return tuple(tuple(x - y for x, y in zip(r1, r2)) for r1, r2 in zip(ab, ba))


def _realify(m) -> list:
    flat = [x for row in m for x in row]
    return [x.re for x in flat] + [x.im for x in flat]


def structure_constants_from_matrices(basis: MatrixBasis) -> StructureConstants:
    """Solve ``[E_j, E_k] = sum_i c^i_{jk} E_i`` over Q and return
    ``mu^i_{jk} = -c^i_{jk}``.

    Linear algebra is done on the realification (real and imaginary parts of
    every entry), so the span is the *real* span and the constants are real.
    """
    n = basis.dim
    vecs = [_realify(m) for m in basis.matrices]
    a = linalg.transpose(vecs)  # columns are basis matrices
    if linalg.rank(a, n) != n:
        raise DependentBasis("basis matrices are linearly dependent over R")
    table = {}
    for j, k in itertools.combinations(range(n), 2):
        target = _realify(commutator(basis.matrices[j], basis.matrices[k]))
        c = linalg.solve(a, target)
        if c is None:
            raise NotClosed(f"[e_{j + 1}, e_{k + 1}] is not in the span of the basis")
        for i, ci in enumerate(c):
            if ci != 0:
                table[(i + 1, j + 1, k + 1)] = -Fraction(ci)
    return StructureConstants(n, table)


def bracket_matrix(basis: MatrixBasis, x: Sequence):
    """The matrix ``sum_i x_i E_i``."""
    d = basis.ambient
    out = [[Gaussian(0)] * d for _ in range(d)]
    for xi, m in zip(x, basis.matrices):
        if xi != 0:
            out = [[o + xi * v for o, v in zip(orow, mrow)] for orow, mrow in zip(out, m)]
    return tuple(tuple(r) for r in out)
