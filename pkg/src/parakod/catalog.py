"""Built-in Lie algebras.

``su2``, ``sp2`` and ``su3`` are extracted from their matrix generators;
``so4`` is the printed bracket table; ``r4solv`` uses structure constants
derived from its group law; ``abelian`` takes a dimension parameter.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .gaussian import Gaussian
from .lie import (
    LieError,
    MatrixBasis,
    StructureConstants,
    abelian,
    jacobi_defect,
    structure_constants_from_matrices,
)

I = Gaussian(0, 1)
O = Gaussian(0)
U = Gaussian(1)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    sc: StructureConstants
    provenance: str
    basis: MatrixBasis | None = None

    @property
    def dim(self) -> int:
        return self.sc.dim


def su2_basis() -> MatrixBasis:
    return MatrixBasis((
        ((I, O), (O, -I)),
        ((O, U), (-U, O)),
        ((O, I), (I, O)),
    ))


# quaternion units as 2x2 complex blocks; i -> diag(i, -i) etc.
_QUAT = {
    "1": ((U, O), (O, U)),
    "i": ((I, O), (O, -I)),
    "j": ((O, U), (-U, O)),
    "k": ((O, I), (I, O)),
}
_QZERO = ((O, O), (O, O))


def _neg(q):
    return tuple(tuple(-x for x in row) for row in q)


def quaternion_matrix(blocks) -> tuple:
    """Expand a 2x2 array of quaternion blocks (each 2x2 complex) to 4x4."""
    out = []
    for brow in blocks:
        for r in range(2):
            out.append(tuple(x for b in brow for x in b[r]))
    return tuple(out)


def sp2_basis() -> MatrixBasis:
    q = _QUAT
    z = _QZERO
    mats = [
        [[q["i"], z], [z, z]],
        [[q["j"], z], [z, z]],
        [[q["k"], z], [z, z]],
        [[z, q["1"]], [_neg(q["1"]), z]],
        [[z, q["i"]], [q["i"], z]],
        [[z, q["j"]], [q["j"], z]],
        [[z, q["k"]], [q["k"], z]],
        [[z, z], [z, q["i"]]],
        [[z, z], [z, q["j"]]],
        [[z, z], [z, q["k"]]],
    ]
    return MatrixBasis(tuple(quaternion_matrix(m) for m in mats))


def su3_basis() -> MatrixBasis:
    def m(entries):
        a = [[O] * 3 for _ in range(3)]
        for (r, c), v in entries.items():
            a[r][c] = v
        return tuple(tuple(row) for row in a)

    return MatrixBasis((
        m({(0, 0): I, (2, 2): -I}),
        m({(1, 1): I, (2, 2): -I}),
        m({(0, 1): U, (1, 0): -U}),
        m({(0, 1): I, (1, 0): I}),
        m({(0, 2): U, (2, 0): -U}),
        m({(0, 2): I, (2, 0): I}),
        m({(1, 2): U, (2, 1): -U}),
        m({(1, 2): I, (2, 1): I}),
    ))


def _from_brackets(n, brackets) -> StructureConstants:
    """``brackets[(j, k)] = {i: c}`` means ``[e_j, e_k] = sum c e_i``."""
    table = {}
    for (j, k), rhs in brackets.items():
        for i, c in rhs.items():
            table[(i, j, k)] = -c
    return StructureConstants(n, table)


def so4_constants() -> StructureConstants:
    return _from_brackets(6, {
        (1, 2): {4: -1}, (1, 3): {5: -1}, (1, 4): {2: 1}, (1, 5): {3: 1},
        (2, 3): {6: -1}, (2, 4): {1: -1}, (2, 6): {3: 1},
        (3, 5): {1: -1}, (3, 6): {2: -1},
        (4, 5): {6: -1}, (4, 6): {5: 1}, (5, 6): {4: -1},
    })


def r4solv_constants() -> StructureConstants:
    # E^2 = e^{x1} dx2, E^3 = e^{x1} dx3 give dE^2 = E^1^E^2, dE^3 = E^1^E^3
    return StructureConstants(4, {(2, 1, 2): 1, (3, 1, 3): 1})


def r4solv_printed_constants() -> StructureConstants:
    """The structure equations exactly as displayed (dE^2 = E^1^E^3,
    dE^3 = E^2^E^3).  Kept for comparison only; not a catalog entry."""
    return StructureConstants(4, {(2, 1, 3): 1, (3, 2, 3): 1})


NAMES = ("su2", "so4", "sp2", "su3", "r4solv", "abelian")


@lru_cache(maxsize=None)
def _build(name: str, n: int) -> CatalogEntry:
    if name == "su2":
        basis = su2_basis()
        entry = CatalogEntry(name, structure_constants_from_matrices(basis),
                             "su(2) example, printed constants (extracted from the matrix generators)",
                             basis)
    elif name == "so4":
        entry = CatalogEntry(name, so4_constants(), "so(4) example, printed bracket table")
    elif name == "sp2":
        basis = sp2_basis()
        entry = CatalogEntry(name, structure_constants_from_matrices(basis),
                             "sp(2) example, extracted from quaternionic generators "
                             "as 2x2 complex blocks", basis)
    elif name == "su3":
        basis = su3_basis()
        entry = CatalogEntry(name, structure_constants_from_matrices(basis),
                             "su(3) example, extracted from the printed matrix generators", basis)
    elif name == "r4solv":
        entry = CatalogEntry(name, r4solv_constants(),
                             "non-unimodular R^4 example; constants derived from the group law "
                             "(corrected: dE^2 = E^1^E^2, dE^3 = E^1^E^3; the printed "
                             "dE^2 = E^1^E^3, dE^3 = E^2^E^3 is inconsistent with it)")
    elif name == "abelian":
        entry = CatalogEntry(name, abelian(n), f"abelian algebra R^{n} (parametric)")
    else:
        raise KeyError(name)
    defect = jacobi_defect(entry.sc)
    if defect:
        raise LieError(f"catalog entry {name} fails the Jacobi identity at {min(defect)}")
    return entry


def get(name: str, n: int = 2) -> CatalogEntry:
    """Look up a catalog entry; ``n`` is only used by ``abelian``."""
    if name not in NAMES:
        raise KeyError(f"unknown catalog entry {name!r}; known: {', '.join(NAMES)}")
    return _build(name, n if name == "abelian" else 0)


def entries(abelian_n: int = 2) -> list:
    return [get(name, abelian_n) for name in NAMES]
