from fractions import Fraction
from math import comb

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from conftest import invertible_matrices, structure_tables
from parakod import acx, catalog, lie, relations
from parakod.forms import InvariantForm, psi
from parakod.gaussian import Gaussian
from parakod.linalg import matmul

QP = Gaussian(Fraction(1, 4), Fraction(1, 4))   # (1+i)/4
QM = Gaussian(Fraction(1, 4), Fraction(-1, 4))  # (1-i)/4

# mubar-cohomology of su2 as (ker, im, H), rows p = 0..3, columns q = 0..3
SU2_MUBAR = [
    [(1, 0, 1), (3, 0, 3), (3, 3, 0), (1, 1, 0)],
    [(0, 0, 0), (8, 0, 8), (9, 3, 6), (3, 3, 0)],
    [(0, 0, 0), (6, 0, 6), (9, 1, 8), (3, 3, 0)],
    [(0, 0, 0), (0, 0, 0), (3, 0, 3), (1, 0, 1)],
]


def expected_components(sc, i):
    """Bidegree parts of d phi^i from expanding v^j^v^k + i w^j^w^k by hand."""
    n = sc.dim
    phi = lambda a: InvariantForm.phi(n, a)        # noqa: E731
    phib = lambda a: InvariantForm.phibar(n, a)    # noqa: E731
    d20 = d11 = d02 = InvariantForm.zero(n)
    for (t, j, k), c in sc.table.items():
        if t != i:
            continue
        d20 = d20 + phi(j).wedge(phi(k)) * (QM * c)
        d11 = d11 + (phi(j).wedge(phib(k)) - phi(k).wedge(phib(j))) * (QP * c)
        d02 = d02 + phib(j).wedge(phib(k)) * (QM * c)
    return d20, d11, d02


def test_standard_j_squares_to_minus_one():
    for n in (1, 2, 3):
        j = acx.standard_j(n)
        minus = [[Fraction(-int(a == b)) for b in range(2 * n)] for a in range(2 * n)]
        assert matmul(j, j) == minus


def test_real_coframe():
    s = acx.build(catalog.get("su2").sc)
    for a in (1, 2, 3):
        assert s.v(a) + s.w(a) * Gaussian(0, 1) == InvariantForm.phi(3, a)
        assert s.v(a).conjugate() == s.v(a)
        assert s.w(a).conjugate() == s.w(a)


@pytest.mark.parametrize("name", catalog.NAMES)
def test_d_phi_bidegree_formulas(name):
    sc = catalog.get(name).sc
    s = acx.build(sc)
    for i in range(1, sc.dim + 1):
        d20, d11, d02 = expected_components(sc, i)
        split = acx.bidegree_split(acx.d_phi(s, i))
        zero = InvariantForm.zero(sc.dim)
        assert split.get((2, 0), zero) == d20
        assert split.get((1, 1), zero) == d11
        assert split.get((0, 2), zero) == d02
        assert acx.delbar(s, InvariantForm.phi(sc.dim, i)) == d11
        assert acx.mubar(s, InvariantForm.phi(sc.dim, i)) == d02
        assert acx.mu(s, InvariantForm.phi(sc.dim, i)).is_zero()


def test_r4_delbar_phi():
    n = 4
    s = acx.build(catalog.get("r4solv").sc)
    phi = lambda a: InvariantForm.phi(n, a)        # noqa: E731
    phib = lambda a: InvariantForm.phibar(n, a)    # noqa: E731
    assert acx.delbar(s, phi(1)).is_zero()
    assert acx.delbar(s, phi(4)).is_zero()
    for a in (2, 3):
        expected = (phi(1).wedge(phib(a)) - phi(a).wedge(phib(1))) * QP
        assert acx.delbar(s, phi(a)) == expected


def test_r4_alpha_beta():
    sc = catalog.get("r4solv").sc
    lam = acx.lambda_from_structure(sc)
    a = acx.alpha(lam)
    half = Gaussian(Fraction(1, 2), Fraction(1, 2))
    assert a.form == InvariantForm.phibar(4, 1) * half
    assert a.components == (-half, 0, 0, 0)
    assert a.norm2() == Fraction(1, 2)
    assert acx.beta(lam, a).value == 0


@pytest.mark.parametrize("name", catalog.NAMES)
def test_lambda_cross_check(name):
    s = acx.build(catalog.get(name).sc)
    assert acx.lambda_from_forms(s) == acx.lambda_from_structure(s.sc)


@given(structure_tables())
def test_lambda_shape(sc):
    lam = acx.lambda_from_structure(sc)
    assert lam.diagonal_vanishes()
    for (i, j, k), c in sc.table.items():
        assert lam(i, j, k) == QP * c
        assert lam(i, k, j) == -QP * c
    a = acx.alpha(lam)
    assert a == acx.alpha_closed_form(sc)
    assert acx.beta(lam, a).value == 0


@given(structure_tables())
def test_dbar_psi_is_alpha_wedge_psi(sc):
    s = acx.build(sc)
    res = acx.dbar_psi(s)
    assert res.matches
    assert res.coefficient == acx.alpha(acx.lambda_from_structure(sc))


@given(structure_tables())
def test_canonical_equivalences(sc):
    s = acx.build(sc)
    a = acx.alpha(acx.lambda_from_structure(sc))
    assert a.is_zero() == acx.canonical_trivial(s) == acx.canonical_sum_condition(sc) == lie.is_unimodular(sc)


@given(structure_tables())
def test_integrability_paths(sc):
    s = acx.build(sc)
    assert acx.is_integrable(s) == acx.integrable_via_mubar(s) == sc.is_abelian()


def test_dbar_psi_scaling():
    s = acx.build(catalog.get("r4solv").sc)
    res = acx.dbar_psi(s, 3)
    assert res.coefficient.components[0] == Gaussian(Fraction(-3, 2), Fraction(-3, 2))
    with pytest.raises(ValueError):
        acx.dbar_psi(s, 0)


@pytest.mark.parametrize("name", ["r4solv", "su2"])
def test_second_order_psi_identities(name):
    s = acx.build(catalog.get(name).sc)
    a = acx.alpha(acx.lambda_from_structure(s.sc)).form
    p = psi(s.n)
    assert acx.delbar(s, acx.delbar(s, p)) == acx.delbar(s, a).wedge(p)
    assert acx.mubar(s, a).is_zero()
    assert acx.mubar(s, acx.delbar(s, a)).is_zero()


def test_one_dimensional_group():
    s = acx.build(lie.abelian(1))
    assert acx.canonical_trivial(s)
    assert acx.is_integrable(s)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_abelian_mubar_cohomology(n):
    s = acx.build(lie.abelian(n))
    for p in range(n + 1):
        for q in range(n + 1):
            assert acx.mubar_cohomology_ranks(s, p, q) == (comb(n, p) * comb(n, q), 0, comb(n, p) * comb(n, q))


def _oracle_rank(s, p, q):
    """Rank of mubar on L^{p,q} via the numpy block builder and sympy."""
    n = s.n
    src = relations._bidegree_masks(n, p, q)
    tgt = relations._bidegree_masks(n, p - 1, q + 2)
    if len(src) == 0 or len(tgt) == 0:
        return 0
    ops, den, _, _ = relations._scaled_ops(s, ["mubar"])
    m = relations._block_matrix(ops["mubar"], n, src, tgt).toarray()
    i = sympy.I
    mat = sympy.Matrix(m.shape[0], m.shape[1],
                       lambda r, c: sympy.Integer(int(m[r, c].real)) + i * sympy.Integer(int(m[r, c].imag)))
    return mat.rank()


def test_su2_mubar_cohomology_against_oracle():
    s = acx.build(catalog.get("su2").sc)
    n = 3
    for p in range(n + 1):
        for q in range(n + 1):
            ker, im, h = acx.mubar_cohomology_ranks(s, p, q)
            dim = comb(n, p) * comb(n, q)
            assert ker == dim - _oracle_rank(s, p, q)
            assert im == (_oracle_rank(s, p + 1, q - 2) if q >= 2 and p < n else 0)
            assert (ker, im, h) == SU2_MUBAR[p][q]


def test_cohomology_out_of_range():
    s = acx.build(catalog.get("su2").sc)
    assert acx.mubar_cohomology_ranks(s, 4, 0) == (0, 0, 0)
    assert acx.mubar_cohomology_ranks(s, 0, -1) == (0, 0, 0)


@given(st.sampled_from(["su2", "r4solv", "abelian"]), st.data())
def test_alpha_frame_invariance(name, data):
    s = acx.build(catalog.get(name).sc)
    p = lie.BasisChange(data.draw(invertible_matrices(s.n, 2)))
    assert acx.alpha_basis_change_invariance(s, p)


def test_alpha_changes_componentwise_but_not_as_form():
    sc = catalog.get("r4solv").sc
    p = lie.BasisChange([[2, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [1, 0, 0, 1]])
    primed = acx.alpha(acx.lambda_from_structure(lie.change_basis(sc, p)))
    original = acx.alpha(acx.lambda_from_structure(sc))
    assert primed.components != original.components
    assert acx.alpha_in_original_coframe(sc, p) == original.form


def test_images_rejects_unknown_operator():
    s = acx.build(catalog.get("su2").sc)
    with pytest.raises((KeyError, ValueError)):
        s.images("nabla")
