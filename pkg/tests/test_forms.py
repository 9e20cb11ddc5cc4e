from itertools import combinations
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import gaussians
from parakod import acx, catalog
from parakod.forms import (
    InvariantForm,
    all_monomials,
    apply_derivation,
    bidegree_monomials,
    mono_wedge,
    popcount,
    psi,
    wedge_all,
)

N = 3


@st.composite
def homogeneous_forms(draw, n=N, degree=None):
    k = draw(st.integers(0, 3)) if degree is None else degree
    masks = [sum(1 << b for b in c) for c in combinations(range(2 * n), k)]
    chosen = draw(st.lists(st.sampled_from(masks), max_size=4, unique=True))
    return InvariantForm(n, {m: draw(gaussians(3, 2)) for m in chosen}), k


@given(homogeneous_forms(), homogeneous_forms(), homogeneous_forms())
def test_wedge_associative(a, b, c):
    (a, _), (b, _), (c, _) = a, b, c
    assert a.wedge(b).wedge(c) == a.wedge(b.wedge(c))


@given(homogeneous_forms(), homogeneous_forms())
def test_graded_commutative(a, b):
    (a, p), (b, q) = a, b
    sign = -1 if (p * q) % 2 else 1
    assert a.wedge(b) == b.wedge(a) * sign


@given(homogeneous_forms(), homogeneous_forms())
def test_conjugation(a, b):
    (a, _), (b, _) = a, b
    assert a.conjugate().conjugate() == a
    assert a.wedge(b).conjugate() == a.conjugate().wedge(b.conjugate())


def test_conjugate_of_generators():
    assert InvariantForm.phi(N, 2).conjugate() == InvariantForm.phibar(N, 2)
    mixed = InvariantForm.phi(N, 1).wedge(InvariantForm.phibar(N, 2))
    # conj(phi1 ^ phibar2) = phibar1 ^ phi2 = -phi2 ^ phibar1
    assert mixed.conjugate() == -InvariantForm.phi(N, 2).wedge(InvariantForm.phibar(N, 1))


@given(homogeneous_forms(), homogeneous_forms())
def test_derivation_leibniz(a, b):
    (a, p), (b, _) = a, b
    structure = acx.build(catalog.get("su2").sc)
    d = lambda f: acx.exterior_d(structure, f)  # noqa: E731
    sign = -1 if p % 2 else 1
    assert d(a.wedge(b)) == d(a).wedge(b) + a.wedge(d(b)) * sign


@pytest.mark.parametrize("name", ["su2", "r4solv", "so4"])
def test_d_squared_zero(name):
    structure = acx.build(catalog.get(name).sc)
    n = structure.n
    for mask in all_monomials(n, 3):
        f = InvariantForm(n, {mask: 1})
        assert acx.exterior_d(structure, acx.exterior_d(structure, f)).is_zero()


def test_mono_wedge_signs():
    assert mono_wedge(0b01, 0b10) == (1, 0b11)
    assert mono_wedge(0b10, 0b01) == (-1, 0b11)
    assert mono_wedge(0b01, 0b01) == (0, 0)


def test_monomial_ordering_sign():
    n = 2
    a = InvariantForm.monomial(n, (2, 1))
    assert a == -InvariantForm.monomial(n, (1, 2))
    assert InvariantForm.from_multi_indices(n, {((1, 2), ()): 1}) == InvariantForm.monomial(n, (1, 2))


def test_from_multi_indices_rejects_unsorted():
    with pytest.raises(ValueError):
        InvariantForm.from_multi_indices(2, {((2, 1), ()): 1})


def test_psi_is_wedge_of_phis():
    n = 4
    assert psi(n) == wedge_all([InvariantForm.phi(n, i) for i in range(1, n + 1)], n)
    assert psi(n).bidegrees() == {(n, 0)}


@pytest.mark.parametrize("n", [1, 2, 3])
def test_bidegree_monomial_counts(n):
    for p in range(n + 1):
        for q in range(n + 1):
            masks = bidegree_monomials(n, p, q)
            assert len(masks) == comb(n, p) * comb(n, q)
            assert masks == sorted(masks)
            assert all(InvariantForm(n, {m: 1}).bidegrees() == {(p, q)} for m in masks)
    assert bidegree_monomials(n, n + 1, 0) == []
    assert sum(1 for _ in all_monomials(n)) == 4 ** n


def test_bidegree_split_and_component():
    n = 2
    f = InvariantForm.phi(n, 1) + InvariantForm.phibar(n, 2) * 3
    split = f.bidegree_split()
    assert set(split) == {(1, 0), (0, 1)}
    assert f.component(0, 1) == InvariantForm.phibar(n, 2) * 3
    assert split[(1, 0)] + split[(0, 1)] == f


def test_string_form():
    n = 2
    f = InvariantForm.phibar(n, 1) * acx.QUARTER_1P * 2
    assert str(f) == "(1/2+1/2i)*phibar1"
    assert str(InvariantForm.zero(n)) == "0"
    assert str(-InvariantForm.monomial(n, (1,), (2,))) == "-phi1^phibar2"


def test_index_checks():
    with pytest.raises(IndexError):
        InvariantForm.phi(2, 3)
    with pytest.raises(ValueError):
        InvariantForm(2, {1 << 4: 1})
    with pytest.raises(ValueError):
        InvariantForm.phi(2, 1) + InvariantForm.phi(3, 1)


def test_apply_derivation_on_constants():
    n = 2
    images = [InvariantForm.phi(n, 1).wedge(InvariantForm.phi(n, 2))] * (2 * n)
    assert apply_derivation(InvariantForm.constant(n, 5), images).is_zero()
    assert popcount(0b1011) == 3
