"""Neutral Norden structure on the doubled frame and the connections built on it.

Everything lives on a global frame ``f_1..f_2n = (v_1..v_n, w_1..w_n)`` in
which the metric has constant coefficients, so covariant derivatives reduce
to finite tensor arithmetic over ``Fraction``.

Conventions (0-based in code):

* connection entry ``(i, j, k)`` is ``Gamma^k_{ij}``, i.e.
  ``nabla_{f_i} f_j = sum_k Gamma^k_{ij} f_k``;
* bracket entry ``(i, j, k)`` is ``c^k_{ij}`` with ``[f_i, f_j] = sum_k c^k_{ij} f_k``;
* ``J`` is a matrix whose column ``a`` holds ``J f_a``.

3-tensors are sparse dicts ``{(i, j, k): value}`` holding nonzero entries only.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import lie
from .acx import standard_j
from .linalg import SingularMatrixError, det, inverse

ZERO = Fraction(0)


class NotNorden(ValueError):
    pass


@dataclass(frozen=True)
class FrameMetric:
    matrix: tuple

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in row) for row in self.matrix)
        size = len(rows)
        if size == 0 or any(len(r) != size for r in rows):
            raise ValueError("metric must be a nonempty square matrix")
        for a in range(size):
            for b in range(a):
                if rows[a][b] != rows[b][a]:
                    raise ValueError(f"metric is not symmetric at ({a + 1},{b + 1})")
        if det([list(r) for r in rows]) == 0:
            raise SingularMatrixError("metric is degenerate")
        object.__setattr__(self, "matrix", rows)

    @property
    def size(self) -> int:
        return len(self.matrix)

    def __call__(self, a: int, b: int) -> Fraction:
        return self.matrix[a][b]

    def inverse(self) -> list:
        return inverse([list(r) for r in self.matrix])

    def pair(self, x: Sequence, y: Sequence) -> Fraction:
        g = self.matrix
        return sum((x[a] * g[a][b] * y[b] for a in range(self.size) for b in range(self.size)
                    if x[a] and y[b]), ZERO)


def neutral_metric(n: int) -> FrameMetric:
    """``g = -sum v^i (x) v^i + sum w^i (x) w^i``."""
    if n < 2:
        raise ValueError("the Norden construction needs n >= 2")
    size = 2 * n
    return FrameMetric(tuple(
        tuple(Fraction(-1 if a < n else 1) if a == b else ZERO for b in range(size))
        for a in range(size)))


def identity_metric(size: int) -> FrameMetric:
    return FrameMetric(tuple(tuple(Fraction(int(a == b)) for b in range(size)) for a in range(size)))


def doubled_frame_brackets(sc: lie.StructureConstants) -> lie.StructureConstants:
    """Brackets of ``(v_1..v_n, w_1..w_n)``: two commuting copies of ``sc``."""
    n = sc.dim
    if n < 2:
        raise ValueError("the Norden construction needs n >= 2")
    defect = lie.jacobi_defect(sc)
    if defect:
        raise lie.LieError(f"jacobi_defect nonzero at {min(defect)}")
    table = {}
    for (i, j, k), c in sc.table.items():
        table[(i, j, k)] = c
        table[(i + n, j + n, k + n)] = c
    return lie.StructureConstants(2 * n, table)


def bracket_coefficients(b: lie.StructureConstants) -> dict:
    """Sparse ``{(i, j, k): c^k_{ij}}`` with ``[f_i, f_j] = sum_k c^k_{ij} f_k`` (0-based)."""
    c = {}
    for (k, i, j), mu in b.table.items():
        c[(i - 1, j - 1, k - 1)] = -mu
        c[(j - 1, i - 1, k - 1)] = mu
    return c


def _as_matrix(J) -> list:
    return [[Fraction(x) for x in row] for row in J]


def norden_check(g: FrameMetric, J) -> bool:
    """``J^T g = g J``, i.e. ``g(JX, Y) = g(X, JY)``."""
    J = _as_matrix(J)
    size = g.size
    if len(J) != size:
        raise ValueError("J and g have different sizes")
    for a in range(size):
        for b in range(size):
            lhs = sum((J[c][a] * g(c, b) for c in range(size)), ZERO)
            rhs = sum((g(a, c) * J[c][b] for c in range(size)), ZERO)
            if lhs != rhs:
                return False
    return True


def twin_metric(g: FrameMetric, J) -> FrameMetric:
    """``gtilde(X, Y) = g(JX, Y)``."""
    if not norden_check(g, J):
        raise NotNorden("J is not g-symmetric")
    J = _as_matrix(J)
    size = g.size
    return FrameMetric(tuple(
        tuple(sum((J[c][a] * g(c, b) for c in range(size)), ZERO) for b in range(size))
        for a in range(size)))


def _accumulate(acc, key, value):
    s = acc.get(key, ZERO) + value
    if s:
        acc[key] = s
    else:
        acc.pop(key, None)


def dense(t: dict, size: int) -> list:
    """Nested ``size^3`` list view of a sparse 3-tensor."""
    out = [[[ZERO] * size for _ in range(size)] for _ in range(size)]
    for (i, j, k), v in t.items():
        out[i][j][k] = v
    return out


@dataclass(frozen=True)
class ConnectionCoefficients:
    """Sparse ``{(i, j, k): Gamma^k_{ij}}`` on a frame of the given size."""

    size: int
    entries: dict

    def __post_init__(self):
        clean = {}
        for (i, j, k), v in self.entries.items():
            if not all(0 <= x < self.size for x in (i, j, k)):
                raise IndexError(f"index {(i, j, k)} outside a {self.size}-frame")
            v = Fraction(v)
            if v:
                clean[(i, j, k)] = v
        object.__setattr__(self, "entries", clean)

    def __call__(self, i, j, k) -> Fraction:
        return self.entries.get((i, j, k), ZERO)

    @property
    def gamma(self) -> list:
        return dense(self.entries, self.size)

    def nabla(self, i: int, y: Sequence) -> list:
        """``nabla_{f_i} Y`` for a constant-coefficient vector ``Y``."""
        out = [ZERO] * self.size
        for (a, j, k), v in self.entries.items():
            if a == i and y[j]:
                out[k] += y[j] * v
        return out

    def __add__(self, other):
        acc = dict(self.entries)
        for key, v in other.entries.items():
            _accumulate(acc, key, v)
        return ConnectionCoefficients(self.size, acc)

    def __eq__(self, other):
        if not isinstance(other, ConnectionCoefficients):
            return NotImplemented
        return self.size == other.size and self.entries == other.entries

    def __hash__(self):
        return hash((self.size, frozenset(self.entries.items())))


def zero_connection(size: int) -> ConnectionCoefficients:
    return ConnectionCoefficients(size, {})


def _metric_rows(g: FrameMetric) -> list:
    return [[(b, v) for b, v in enumerate(row) if v] for row in g.matrix]


def levi_civita(b: lie.StructureConstants, g: FrameMetric) -> ConnectionCoefficients:
    """Koszul formula for constant ``g``:
    ``2 g(nabla_X Y, Z) = g([X,Y],Z) - g([Y,Z],X) + g([Z,X],Y)``."""
    size = g.size
    if b.dim != size:
        raise ValueError("bracket table and metric have different dimensions")
    c = bracket_coefficients(b)
    rows = _metric_rows(g)
    ginv_cols = _metric_rows(FrameMetric(tuple(tuple(r) for r in g.inverse())))
    # lowered[(x, y, z)] = g([f_x, f_y], f_z)
    lowered = {}
    for (x, y, l), v in c.items():
        for z, gv in rows[l]:
            _accumulate(lowered, (x, y, z), v * gv)
    half = Fraction(1, 2)
    koszul = {}
    for (x, y, z), v in lowered.items():
        # term g([X,Y],Z) with (X,Y,Z) = (x,y,z)
        _accumulate(koszul, (x, y, z), half * v)
        # term -g([Y,Z],X): here Y=x, Z=y, X=z
        _accumulate(koszul, (z, x, y), -half * v)
        # term g([Z,X],Y): here Z=x, X=y, Y=z
        _accumulate(koszul, (y, z, x), half * v)
    out = {}
    for (i, j, k), v in koszul.items():
        for l, gi in ginv_cols[k]:
            _accumulate(out, (i, j, l), gi * v)
    return ConnectionCoefficients(size, out)


def torsion(c: ConnectionCoefficients, b: lie.StructureConstants) -> dict:
    """``T^k_{ij} = Gamma^k_{ij} - Gamma^k_{ji} - c^k_{ij}`` (sparse)."""
    out = {}
    for (i, j, k), v in c.entries.items():
        _accumulate(out, (i, j, k), v)
        _accumulate(out, (j, i, k), -v)
    for key, v in bracket_coefficients(b).items():
        _accumulate(out, key, -v)
    return out


def metric_derivative(c: ConnectionCoefficients, g: FrameMetric) -> dict:
    """``(nabla_{f_i} g)(f_j, f_k) = -g(nabla_i f_j, f_k) - g(f_j, nabla_i f_k)`` (sparse)."""
    rows = _metric_rows(g)
    out = {}
    for (i, j, l), v in c.entries.items():
        for k, gv in rows[l]:
            _accumulate(out, (i, j, k), -v * gv)
            _accumulate(out, (i, k, j), -v * gv)
    return out


def is_torsion_free(c, b) -> bool:
    return not torsion(c, b)


def is_metric(c, g) -> bool:
    return not metric_derivative(c, g)


def coframe_covectors(size: int) -> list:
    """The ``2n`` covectors ``v^1..v^n, w^1..w^n`` as component lists."""
    return [[Fraction(int(a == b)) for a in range(size)] for b in range(size)]


def quasi_statistical_connection(lc: ConnectionCoefficients, J, eta: Sequence) -> ConnectionCoefficients:
    """``nabla_X Y + eta(Y) J X``: ``Gamma^k_{ij} + eta_j J^k_i``."""
    J = _as_matrix(J)
    eta = [Fraction(x) for x in eta]
    if len(eta) != lc.size:
        raise ValueError("covector has the wrong length")
    if not any(eta):
        raise ValueError("eta must be a nonzero 1-form")
    acc = dict(lc.entries)
    for j, e in enumerate(eta):
        if e:
            for i in range(lc.size):
                for k in range(lc.size):
                    if J[k][i]:
                        _accumulate(acc, (i, j, k), e * J[k][i])
    return ConnectionCoefficients(lc.size, acc)


def kurose_defect(c: ConnectionCoefficients, g: FrameMetric, b: lie.StructureConstants) -> dict:
    """``D(X,Y;Z) = (nabla_X g)(Y,Z) - (nabla_Y g)(X,Z) + g(T(X,Y), Z)`` (sparse)."""
    rows = _metric_rows(g)
    out = {}
    for (i, j, k), v in metric_derivative(c, g).items():
        _accumulate(out, (i, j, k), v)
        _accumulate(out, (j, i, k), -v)
    for (i, j, l), v in torsion(c, b).items():
        for k, gv in rows[l]:
            _accumulate(out, (i, j, k), v * gv)
    return out


def max_abs(t: dict) -> Fraction:
    return max((abs(x) for x in t.values()), default=ZERO)


def dual_connection(c: ConnectionCoefficients, g: FrameMetric) -> ConnectionCoefficients:
    """``nabla*_X Y = nabla_X Y + g^{-1}((nabla_X g)(Y, .))``."""
    ginv = _metric_rows(FrameMetric(tuple(tuple(r) for r in g.inverse())))
    acc = dict(c.entries)
    for (i, j, k), v in metric_derivative(c, g).items():
        for l, gi in ginv[k]:
            _accumulate(acc, (i, j, l), gi * v)
    return ConnectionCoefficients(c.size, acc)


def duality_residual(c: ConnectionCoefficients, dual: ConnectionCoefficients, g: FrameMetric) -> dict:
    """``g(nabla_i f_j, f_k) + g(f_j, nabla*_i f_k)`` on every frame triple (sparse)."""
    rows = _metric_rows(g)
    out = {}
    for (i, j, l), v in c.entries.items():
        for k, gv in rows[l]:
            _accumulate(out, (i, j, k), v * gv)
    for (i, k, l), v in dual.entries.items():
        for j, gv in rows[l]:
            _accumulate(out, (i, j, k), v * gv)
    return out


def satoh_equivalence_check(c: ConnectionCoefficients, g: FrameMetric, b: lie.StructureConstants):
    """``(kurose defect vanishes, dual connection is torsion-free)``."""
    return not kurose_defect(c, g, b), is_torsion_free(dual_connection(c, g), b)


def perturbed(c: ConnectionCoefficients, i: int, j: int, k: int, eps=1) -> ConnectionCoefficients:
    """``c`` with ``eps`` added to ``Gamma^k_{ij}`` (0-based)."""
    return c + ConnectionCoefficients(c.size, {(i, j, k): eps})


@dataclass
class NordenSummary:
    n: int
    norden: bool
    lc_torsion_free: bool
    lc_metric: bool
    defects: list          # max |D| per eta
    dual_torsion_free: list
    duality_holds: list
    involutive: list
    satoh_agree: list

    @property
    def ok(self) -> bool:
        return (self.norden and self.lc_torsion_free and self.lc_metric
                and all(d == 0 for d in self.defects) and all(self.dual_torsion_free)
                and all(self.duality_holds) and all(self.involutive) and all(self.satoh_agree))

    def as_dict(self) -> dict:
        from .gaussian import format_rational
        labels = [f"v{i}" for i in range(1, self.n + 1)] + [f"w{i}" for i in range(1, self.n + 1)]
        return {
            "norden": self.norden,
            "levi_civita_torsion_free": self.lc_torsion_free,
            "levi_civita_metric": self.lc_metric,
            "kurose_defect_max_abs": {lab: format_rational(d) for lab, d in zip(labels, self.defects)},
            "dual_torsion_free": all(self.dual_torsion_free),
            "duality_identity": all(self.duality_holds),
            "dual_involutive": all(self.involutive),
            "satoh_agreement": all(self.satoh_agree),
        }


def norden_summary(sc: lie.StructureConstants) -> NordenSummary:
    """Run the whole Norden / quasi-statistical suite for ``G x G``."""
    n = sc.dim
    b = doubled_frame_brackets(sc)
    g = neutral_metric(n)
    J = standard_j(n)
    lc = levi_civita(b, g)
    out = NordenSummary(n, norden_check(g, J), is_torsion_free(lc, b), is_metric(lc, g), [], [], [], [], [])
    for eta in coframe_covectors(2 * n):
        qs = quasi_statistical_connection(lc, J, eta)
        out.defects.append(max_abs(kurose_defect(qs, g, b)))
        dual = dual_connection(qs, g)
        out.dual_torsion_free.append(is_torsion_free(dual, b))
        out.duality_holds.append(not duality_residual(qs, dual, g))
        out.involutive.append(dual_connection(dual, g) == qs)
        kd, tf = satoh_equivalence_check(qs, g, b)
        out.satoh_agree.append(kd == tf)
    return out
