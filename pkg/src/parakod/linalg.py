"""Exact Gauss-Jordan elimination over any field whose elements support
``+ - * /`` and ``== 0`` (``Fraction`` and ``Gaussian`` in practice).

Matrices are lists of rows.  Nothing here mutates its arguments.
"""
from __future__ import annotations

from fractions import Fraction


class SingularMatrixError(ValueError):
    pass


def _copy(rows):
    return [list(r) for r in rows]


def rref(rows, ncols=None):
    """Reduced row echelon form.  Returns ``(reduced_rows, pivot_columns)``."""
    m = _copy(rows)
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c] if not isinstance(m[r][c], int) else Fraction(1, m[r][c])
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(rows, ncols=None) -> int:
    if not rows:
        return 0
    return len(rref(rows, ncols)[1])


def sparse_rank(columns) -> int:
    """Rank of a matrix given as a list of sparse columns ``{row_key: value}``.

    Columns are reduced one at a time against the pivots found so far, which
    keeps the work proportional to the fill-in rather than the full size.
    """
    pivots = {}  # pivot row key -> normalized column with 1 at that key
    for col in columns:
        v = {k: x for k, x in col.items() if x != 0}
        while v:
            key = min(v)
            if key not in pivots:
                inv = 1 / v[key]
                pivots[key] = {k: x * inv for k, x in v.items()}
                break
            f = v[key]
            for k, x in pivots[key].items():
                y = v.get(k, 0) - f * x
                if y == 0:
                    v.pop(k, None)
                else:
                    v[k] = y
    return len(pivots)


def solve(a, b):
    """Solve ``a x = b`` exactly.  Returns one solution (free variables set to
    zero) or ``None`` if the system is inconsistent."""
    n = len(a[0]) if a else 0
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    red, piv = rref(aug, n + 1)
    if n in piv:
        return None
    x = [0] * n
    for row, c in zip(red, piv):
        x[c] = row[n]
    return x


def det(a):
    m = _copy(a)
    n = len(m)
    out = 1
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return 0 * out
        if p != c:
            m[c], m[p] = m[p], m[c]
            out = -out
        piv = m[c][c]
        out = out * piv
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / piv if not isinstance(piv, int) else Fraction(m[i][c], piv)
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return out


def inverse(a):
    n = len(a)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    red, piv = rref(aug, n)
    if piv != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return [row[n:] for row in red]


def matmul(a, b):
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), 0 * row[0]) for col in bt] for row in a]


def transpose(a):
    return [list(r) for r in zip(*a)]


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
