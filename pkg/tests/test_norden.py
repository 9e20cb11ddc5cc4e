from fractions import Fraction
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

import randalg
from parakod import catalog, lie, norden
from parakod.acx import standard_j


def doubled(name):
    sc = catalog.get(name).sc
    return sc.dim, norden.doubled_frame_brackets(sc)


def koszul_oracle(b, g):
    """Dense Levi-Civita by solving for Gamma from the six-term Koszul sum."""
    size = g.size
    c = norden.dense(norden.bracket_coefficients(b), size)
    G = [[g(a, d) for d in range(size)] for a in range(size)]
    r = range(size)
    L = [[[sum(c[x][y][l] * G[l][z] for l in r) for z in r] for y in r] for x in r]
    ginv = g.inverse()
    out = {}
    for i in range(size):
        for j in range(size):
            for k in range(size):
                v = sum(ginv[k][z] * (L[i][j][z] - L[j][z][i] + L[z][i][j]) for z in range(size)) / 2
                if v:
                    out[(i, j, k)] = v
    return out


@st.composite
def connections(draw, size):
    keys = st.tuples(*(st.integers(0, size - 1),) * 3)
    vals = st.fractions(min_value=-3, max_value=3, max_denominator=4)
    return norden.ConnectionCoefficients(size, draw(st.dictionaries(keys, vals, max_size=12)))


ALGEBRAS = [doubled(name) for name in ("su2", "r4solv", "so4", "abelian")]


def test_neutral_metric_is_norden():
    for n in (2, 3, 5):
        g = norden.neutral_metric(n)
        assert [g(i, i) for i in range(2 * n)] == [-1] * n + [1] * n
        assert norden.norden_check(g, standard_j(n))
        assert not norden.norden_check(norden.identity_metric(2 * n), standard_j(n))


def test_small_frame_metric():
    j = standard_j(1)
    assert norden.norden_check(norden.FrameMetric(((-1, 0), (0, 1))), j)
    assert not norden.norden_check(norden.identity_metric(2), j)


def test_metric_validation():
    with pytest.raises(ValueError):
        norden.FrameMetric(((1, 2), (3, 4)))
    with pytest.raises(ValueError):
        norden.FrameMetric(((1, 1), (1, 1)))
    with pytest.raises(ValueError):
        norden.neutral_metric(1)
    with pytest.raises(ValueError):
        norden.doubled_frame_brackets(catalog.get("abelian", 1).sc)
    with pytest.raises(ValueError):
        norden.norden_check(norden.neutral_metric(2), standard_j(3))


def test_doubled_brackets_reject_non_lie():
    bad = lie.StructureConstants(3, {(3, 1, 2): -1, (1, 1, 3): -1})
    with pytest.raises(lie.LieError):
        norden.doubled_frame_brackets(bad)


def test_doubled_brackets_commute_across_factors():
    n, b = doubled("su2")
    c = norden.bracket_coefficients(b)
    assert all((i < n) == (j < n) == (k < n) for i, j, k in c)
    assert c[(0, 1, 2)] == c[(3, 4, 5)]


def test_twin_metric():
    for n in (2, 3):
        g, J = norden.neutral_metric(n), standard_j(n)
        tw = norden.twin_metric(g, J)
        assert all(tw(i, i) == 0 for i in range(2 * n))
        assert tw(0, n) == 1 and tw(n, 0) == 1
        # the twin of the twin is -g
        tt = norden.twin_metric(tw, J)
        assert all(tt(a, b) == -g(a, b) for a in range(2 * n) for b in range(2 * n))
    with pytest.raises(norden.NotNorden):
        norden.twin_metric(norden.identity_metric(4), standard_j(2))


@pytest.mark.parametrize("n,b", ALGEBRAS)
def test_levi_civita(n, b):
    g = norden.neutral_metric(n)
    lc = norden.levi_civita(b, g)
    assert lc.entries == koszul_oracle(b, g)
    assert norden.is_torsion_free(lc, b)
    assert norden.is_metric(lc, g)


def test_levi_civita_on_matrix_algebras():
    rng = random.Random(11)
    for _ in range(4):
        sc = lie.structure_constants_from_matrices(randalg.triangular_algebra(rng))
        b = norden.doubled_frame_brackets(sc)
        g = norden.neutral_metric(sc.dim)
        lc = norden.levi_civita(b, g)
        assert lc.entries == koszul_oracle(b, g)
        assert norden.is_torsion_free(lc, b) and norden.is_metric(lc, g)


def test_su2_levi_civita_values():
    _, b = doubled("su2")
    lc = norden.levi_civita(b, norden.neutral_metric(3))
    # bi-invariant metric: nabla_X Y = [X, Y] / 2, and [v1, v2] = 2 v3
    assert lc.nabla(0, [0, 1, 0, 0, 0, 0]) == [0, 0, 1, 0, 0, 0]
    assert lc.nabla(1, [1, 0, 0, 0, 0, 0]) == [0, 0, -1, 0, 0, 0]
    assert all(lc(i, j, k) == 0 for i in range(3) for j in range(3, 6) for k in range(6))


@given(st.integers(0, 5), st.integers(0, 5), st.integers(0, 5),
       st.fractions(min_value=-2, max_value=2).filter(bool))
def test_levi_civita_is_unique(i, j, k, eps):
    _, b = ALGEBRAS[0]
    g = norden.neutral_metric(3)
    c = norden.perturbed(norden.levi_civita(b, g), i, j, k, eps)
    assert not (norden.is_torsion_free(c, b) and norden.is_metric(c, g))


@pytest.mark.parametrize("n,b", ALGEBRAS)
def test_quasi_statistical_family(n, b):
    g, J = norden.neutral_metric(n), standard_j(n)
    lc = norden.levi_civita(b, g)
    for eta in norden.coframe_covectors(2 * n):
        qs = norden.quasi_statistical_connection(lc, J, eta)
        assert norden.kurose_defect(qs, g, b) == {}
        dual = norden.dual_connection(qs, g)
        assert norden.is_torsion_free(dual, b)
        assert norden.duality_residual(qs, dual, g) == {}
        assert norden.dual_connection(dual, g) == qs
        assert norden.satoh_equivalence_check(qs, g, b) == (True, True)


def test_abelian_torsion_picture():
    n, b = doubled("abelian")
    qs = norden.quasi_statistical_connection(norden.zero_connection(2 * n), standard_j(n), [1, 0, 0, 0])
    t = norden.torsion(qs, b)
    # T(v1, w1) = -eta(v1) J w1 = v1
    assert t[(0, 2, 0)] == 1 and t[(2, 0, 0)] == -1


def test_identity_metric_breaks_kurose():
    n, b = doubled("su2")
    g, J = norden.identity_metric(2 * n), standard_j(n)
    lc = norden.levi_civita(b, g)
    for eta in norden.coframe_covectors(2 * n):
        qs = norden.quasi_statistical_connection(lc, J, eta)
        assert norden.max_abs(norden.kurose_defect(qs, g, b)) == 2


def test_perturbations():
    n, b = doubled("su2")
    g, J = norden.neutral_metric(n), standard_j(n)
    qs = norden.quasi_statistical_connection(norden.levi_civita(b, g), J, norden.coframe_covectors(6)[0])
    for key in [(0, 0, 1), (0, 0, 2), (1, 0, 0), (3, 0, 0)]:
        c = norden.perturbed(qs, *key)
        assert norden.satoh_equivalence_check(c, g, b) == (False, False)
        assert norden.max_abs(norden.kurose_defect(c, g, b)) == 1
    # here the torsion change cancels the change in nabla g, so D stays zero
    for key in [(0, 0, 0), (0, 1, 0)]:
        assert norden.satoh_equivalence_check(norden.perturbed(qs, *key), g, b) == (True, True)


def test_zero_eta_rejected():
    lc = norden.zero_connection(4)
    with pytest.raises(ValueError):
        norden.quasi_statistical_connection(lc, standard_j(2), [0, 0, 0, 0])
    with pytest.raises(ValueError):
        norden.quasi_statistical_connection(lc, standard_j(2), [1, 0])


def test_coefficient_indices_checked():
    with pytest.raises(IndexError):
        norden.ConnectionCoefficients(2, {(0, 0, 2): 1})
    c = norden.ConnectionCoefficients(2, {(0, 0, 1): 0, (1, 1, 1): Fraction(1, 2)})
    assert c.entries == {(1, 1, 1): Fraction(1, 2)}
    assert c.gamma[1][1][1] == Fraction(1, 2)
    assert hash(c) == hash(norden.ConnectionCoefficients(2, {(1, 1, 1): Fraction(1, 2)}))


@given(connections(4))
def test_duality_for_any_connection(c):
    # holds for every connection, not just the quasi-statistical ones
    _, b = doubled("abelian")
    g = norden.neutral_metric(2)
    dual = norden.dual_connection(c, g)
    assert norden.duality_residual(c, dual, g) == {}
    assert norden.dual_connection(dual, g) == c
    kd, tf = norden.satoh_equivalence_check(c, g, b)
    assert kd == tf


@given(connections(6))
def test_defect_is_lowered_dual_torsion(c):
    _, b = doubled("su2")
    g = norden.neutral_metric(3)
    t = norden.torsion(norden.dual_connection(c, g), b)
    lowered = {}
    for (i, j, l), v in t.items():
        for k in range(6):
            if g(l, k):
                lowered[(i, j, k)] = lowered.get((i, j, k), 0) + v * g(l, k)
    lowered = {k: v for k, v in lowered.items() if v}
    assert norden.kurose_defect(c, g, b) == lowered


def test_summary_over_catalog():
    for entry in catalog.entries():
        s = norden.norden_summary(entry.sc)
        assert s.ok, entry.name
        d = s.as_dict()
        assert set(d["kurose_defect_max_abs"]) == {f"{p}{i}" for p in "vw" for i in range(1, entry.dim + 1)}
        assert set(d["kurose_defect_max_abs"].values()) == {"0"}
