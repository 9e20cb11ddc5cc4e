"""The standard almost complex structure on ``G x G`` and its obstruction data.

The real coframe is ``v^i = pi_1^* e^i``, ``w^i = pi_2^* e^i``; the
``(1,0)``-forms are ``phi^i = v^i + i w^i`` so that ``J v_i = w_i`` and
``J w_i = -v_i``.  All operators act on the finite-dimensional algebra of
invariant forms (see :mod:`parakod.forms`).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Mapping

from . import lie
from .forms import InvariantForm, apply_derivation, bidegree_monomials, psi
from .gaussian import Gaussian
from .linalg import sparse_rank

HALF = Fraction(1, 2)
QUARTER_1P = Gaussian(Fraction(1, 4), Fraction(1, 4))   # (1+i)/4
QUARTER_1M = Gaussian(Fraction(1, 4), Fraction(-1, 4))  # (1-i)/4

# bidegree shift of each component of d
SHIFTS = {"mu": (2, -1), "del": (1, 0), "delbar": (0, 1), "mubar": (-1, 2)}


def standard_j(n: int) -> list:
    """``2n x 2n`` matrix of ``J`` on the frame ``(v_1..v_n, w_1..w_n)``;
    column ``a`` holds the components of ``J f_a``."""
    size = 2 * n
    m = [[Fraction(0)] * size for _ in range(size)]
    for i in range(n):
        m[n + i][i] = Fraction(1)    # J v_i = w_i
        m[i][n + i] = Fraction(-1)   # J w_i = -v_i
    return m


@dataclass(frozen=True)
class AcxStructure:
    sc: lie.StructureConstants

    @property
    def n(self) -> int:
        return self.sc.dim

    @cached_property
    def j_matrix(self) -> list:
        return standard_j(self.n)

    def v(self, j) -> InvariantForm:
        return (InvariantForm.phi(self.n, j) + InvariantForm.phibar(self.n, j)) * HALF

    def w(self, j) -> InvariantForm:
        # w = (phi - phibar) / (2i)
        return (InvariantForm.phi(self.n, j) - InvariantForm.phibar(self.n, j)) * Gaussian(0, -HALF)

    @cached_property
    def _d_images(self) -> list:
        dphi = [d_phi(self, i) for i in range(1, self.n + 1)]
        return dphi + [f.conjugate() for f in dphi]

    @cached_property
    def _component_images(self) -> dict:
        n = self.n
        out = {}
        for name, (dp, dq) in SHIFTS.items():
            imgs = []
            for b, img in enumerate(self._d_images):
                p, q = (1, 0) if b < n else (0, 1)
                target = (p + dp, q + dq)
                imgs.append(img.component(*target) if min(target) >= 0 else None)
            out[name] = imgs
        # d of a (1,0)- or (0,1)-generator is a 2-form: nothing lands in (3,-1) or (-1,3)
        for b, img in enumerate(self._d_images):
            if any(p + q != 2 for p, q in img.bidegrees()):
                raise AssertionError("d of a generator must be a 2-form")
        return out

    def images(self, name: str) -> list:
        """Generator images of ``d`` (``name='d'``) or of one of its components."""
        if name == "d":
            return self._d_images
        return self._component_images[name]


def build(sc: lie.StructureConstants) -> AcxStructure:
    return AcxStructure(sc)


def d_phi(acx: AcxStructure, i: int) -> InvariantForm:
    """``d phi^i`` from ``dv^i = sum mu^i_{jk} v^j^v^k`` and the same for ``w``."""
    if not 1 <= i <= acx.n:
        raise IndexError(f"index {i} out of range 1..{acx.n}")
    out = InvariantForm.zero(acx.n)
    for (a, j, k), c in acx.sc.table.items():
        if a != i:
            continue
        vv = acx.v(j).wedge(acx.v(k))
        ww = acx.w(j).wedge(acx.w(k))
        out = out + (vv + ww * Gaussian(0, 1)) * c
    return out


def exterior_d(acx: AcxStructure, form: InvariantForm) -> InvariantForm:
    return apply_derivation(form, acx.images("d"))


def mu(acx, form):
    return apply_derivation(form, acx.images("mu"))


def delop(acx, form):
    return apply_derivation(form, acx.images("del"))


def delbar(acx, form):
    return apply_derivation(form, acx.images("delbar"))


def mubar(acx, form):
    return apply_derivation(form, acx.images("mubar"))


def bidegree_split(form: InvariantForm) -> dict:
    return form.bidegree_split()


# -- lambda, alpha, beta ------------------------------------------------------

@dataclass(frozen=True)
class LambdaTensor:
    """Constant coefficients with ``delbar phi^i = sum_{j,k} lambda^i_{jk} phi^j ^ phibar^k``."""

    n: int
    table: Mapping[tuple, Gaussian]

    def __post_init__(self):
        clean = {}
        for (i, j, k), c in dict(self.table).items():
            for idx in (i, j, k):
                if not 1 <= idx <= self.n:
                    raise IndexError(f"lambda index {idx} out of range 1..{self.n}")
            c = Gaussian.coerce(c)
            if c:
                clean[(i, j, k)] = c
        object.__setattr__(self, "table", dict(sorted(clean.items())))

    def __call__(self, i, j, k) -> Gaussian:
        return self.table.get((i, j, k), Gaussian(0))

    def __hash__(self):
        return hash((self.n, tuple(self.table.items())))

    def diagonal_vanishes(self) -> bool:
        return all(j != k for (_, j, k) in self.table)


def lambda_from_structure(sc: lie.StructureConstants) -> LambdaTensor:
    table = {}
    for (i, j, k), c in sc.table.items():
        table[(i, j, k)] = QUARTER_1P * c
        table[(i, k, j)] = -QUARTER_1P * c
    return LambdaTensor(sc.dim, table)


def lambda_from_forms(acx: AcxStructure) -> LambdaTensor:
    """Read ``lambda`` off the ``(1,1)`` part of ``d phi^i``."""
    n = acx.n
    table = {}
    for i in range(1, n + 1):
        part = d_phi(acx, i).component(1, 1)
        for (I, K), c in part.terms().items():
            table[(i, I[0], K[0])] = c
    return LambdaTensor(n, table)


@dataclass(frozen=True)
class AlphaForm:
    """Components ``alpha_k``; the form itself is ``-sum_k alpha_k phibar^k``."""

    components: tuple

    def __post_init__(self):
        object.__setattr__(self, "components",
                           tuple(Gaussian.coerce(c) for c in self.components))

    @property
    def n(self) -> int:
        return len(self.components)

    @property
    def form(self) -> InvariantForm:
        out = InvariantForm.zero(self.n)
        for k, a in enumerate(self.components, start=1):
            out = out - InvariantForm.phibar(self.n, k) * a
        return out

    @classmethod
    def from_form(cls, form: InvariantForm) -> "AlphaForm":
        n = form.n
        if form.bidegrees() - {(0, 1)}:
            raise ValueError("alpha must be a (0,1)-form")
        return cls(tuple(-form.coefficient(1 << (n + k)) for k in range(n)))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def norm2(self) -> Fraction:
        """``sum_k |alpha_k|^2``."""
        return sum((c.abs2() for c in self.components), Fraction(0))

    def scaled(self, m) -> "AlphaForm":
        return AlphaForm(tuple(c * m for c in self.components))


def alpha(lam: LambdaTensor) -> AlphaForm:
    comps = []
    for k in range(1, lam.n + 1):
        comps.append(sum((lam(i, i, k) for i in range(1, lam.n + 1)), Gaussian(0)))
    return AlphaForm(tuple(comps))


def alpha_closed_form(sc: lie.StructureConstants) -> AlphaForm:
    """``alpha_k = (1+i)/4 (sum_{i<k} mu^i_{ik} - sum_{k<i} mu^i_{ki})``."""
    n = sc.dim
    comps = []
    for k in range(1, n + 1):
        s = sum((sc.mu(i, i, k) for i in range(1, k)), Fraction(0))
        s -= sum((sc.mu(i, k, i) for i in range(k + 1, n + 1)), Fraction(0))
        comps.append(QUARTER_1P * s)
    return AlphaForm(tuple(comps))


@dataclass(frozen=True)
class BetaScalar:
    value: Gaussian

    def __post_init__(self):
        object.__setattr__(self, "value", Gaussian.coerce(self.value))

    @property
    def is_real(self) -> bool:
        return self.value.is_real()


def beta(lam: LambdaTensor, a: AlphaForm) -> BetaScalar:
    """``sum_{i,k} lambda^i_{kk} conj(alpha_i)`` (constant coefficients)."""
    if a.n != lam.n:
        raise ValueError("lambda and alpha have different sizes")
    total = Gaussian(0)
    for (i, j, k), c in lam.table.items():
        if j == k:
            total = total + c * a.components[i - 1].conjugate()
    return BetaScalar(total)


# -- the canonical section ----------------------------------------------------

@dataclass(frozen=True)
class DbarPsiResult:
    m: int
    coefficient: AlphaForm       # m * alpha, the coefficient of psi^{(x)m}
    dbar_psi: InvariantForm      # delbar psi computed by Leibniz
    matches: bool                # delbar psi == alpha ^ psi


def dbar_psi(acx: AcxStructure, m: int = 1) -> DbarPsiResult:
    if m < 1:
        raise ValueError("m must be a positive integer")
    p = psi(acx.n)
    lhs = delbar(acx, p)
    a = alpha(lambda_from_structure(acx.sc))
    return DbarPsiResult(m, a.scaled(m), lhs, lhs == a.form.wedge(p))


def is_integrable(acx: AcxStructure) -> bool:
    """Integrable iff every ``de^i`` vanishes."""
    return acx.sc.is_abelian()


def integrable_via_mubar(acx: AcxStructure) -> bool:
    return all(img is None or img.is_zero() for img in acx.images("mubar"))


def canonical_trivial(acx: AcxStructure) -> bool:
    """``delbar (phi^1 ^ ... ^ phi^n) == 0``, computed on forms."""
    return delbar(acx, psi(acx.n)).is_zero()


def canonical_sum_condition(sc: lie.StructureConstants) -> bool:
    n = sc.dim
    return all(
        sum((sc.mu(i, i, k) for i in range(1, k)), Fraction(0))
        == sum((sc.mu(i, k, i) for i in range(k + 1, n + 1)), Fraction(0))
        for k in range(1, n + 1)
    )


# -- invariant mubar-cohomology -------------------------------------------------

def _op_columns(acx, op, p, q):
    n = acx.n
    cols = []
    for mask in bidegree_monomials(n, p, q):
        img = apply_derivation(InvariantForm._raw(n, {mask: Gaussian(1)}), acx.images(op))
        cols.append(dict(img.items()))
    return cols


def mubar_matrix(acx: AcxStructure, p: int, q: int):
    """Sparse columns of ``mubar: L^{p,q} -> L^{p-1,q+2}`` (keys are target masks)."""
    return _op_columns(acx, "mubar", p, q)


def mubar_cohomology_ranks(acx: AcxStructure, p: int, q: int):
    """``(dim ker, dim im, dim H)`` of invariant mubar-cohomology at ``(p, q)``.

    The outgoing map is ``L^{p,q} -> L^{p-1,q+2}``, the incoming one
    ``L^{p+1,q-2} -> L^{p,q}``.
    """
    n = acx.n
    if not (0 <= p <= n and 0 <= q <= n):
        return (0, 0, 0)
    dim = len(bidegree_monomials(n, p, q))
    kernel = dim - sparse_rank(mubar_matrix(acx, p, q))
    image = sparse_rank(mubar_matrix(acx, p + 1, q - 2)) if q >= 2 and p + 1 <= n else 0
    return (kernel, image, kernel - image)


# -- frame changes ------------------------------------------------------------

def alpha_in_original_coframe(sc: lie.StructureConstants, p: lie.BasisChange) -> InvariantForm:
    """alpha of the changed frame, rewritten in the original coframe.

    With ``e'_i = sum_j P[j][i] e_j`` the coframe changes by ``P^{-1}``, and
    the same real matrix acts on ``phi`` and ``phibar``.
    """
    primed = lie.change_basis(sc, p)
    a = alpha(lambda_from_structure(primed))
    pinv = p.inverse().matrix
    n = sc.dim
    out = InvariantForm.zero(n)
    for k, ak in enumerate(a.components):
        if ak.is_zero():
            continue
        for j in range(n):
            if pinv[k][j] != 0:
                out = out - InvariantForm.phibar(n, j + 1) * (ak * pinv[k][j])
    return out


def alpha_basis_change_invariance(acx: AcxStructure, p: lie.BasisChange) -> bool:
    original = alpha(lambda_from_structure(acx.sc)).form
    return alpha_in_original_coframe(acx.sc, p) == original
