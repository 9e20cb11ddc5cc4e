"""Exhaustive checks of the identities satisfied by the components of ``d``.

Each operator ``mu, del, delbar, mubar`` is assembled as an exact sparse
integer matrix block by block (one block per bidegree ``(p, q)``), and the
compositions in

    mubar^2 = 0,   mubar delbar + delbar mubar = 0,
    del mubar + delbar^2 + mubar del = 0

are multiplied out on every basis monomial.  Coefficients are Gaussian
rationals; they are rescaled by a common denominator so that the matrices
have Gaussian *integer* entries, stored as complex128.  Every partial sum is
bounded below ``2**53`` (checked up front), so the floating-point products
are exact integer arithmetic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from itertools import combinations

import numpy as np
from scipy import sparse

from . import acx as acx_mod
from .forms import psi

IDENTITIES = {
    "mubar^2": (("mubar", "mubar"),),
    "mubar delbar + delbar mubar": (("mubar", "delbar"), ("delbar", "mubar")),
    "del mubar + delbar^2 + mubar del": (("del", "mubar"), ("delbar", "delbar"), ("mubar", "del")),
}

_LIMIT = 2 ** 53


def _subset_masks(n, p):
    if not 0 <= p <= n:
        return np.zeros(0, dtype=np.int64)
    out = np.fromiter((sum(1 << i for i in c) for c in combinations(range(n), p)), dtype=np.int64)
    return np.sort(out)


def _bidegree_masks(n, p, q):
    """Sorted monomial masks of bidegree ``(p, q)`` (phibar bits are the high ones)."""
    a = _subset_masks(n, p)
    b = _subset_masks(n, q)
    return ((b[:, None] << n) | a[None, :]).ravel()


@dataclass
class _Op:
    shift: tuple
    # per generator bit: list of (target mask, re, im) with integer re/im
    terms: list


def _scaled_ops(acx, names):
    den = 1
    for name in names:
        for img in acx.images(name):
            if img is None:
                continue
            for _, c in img.items():
                den = math.lcm(den, c.re.denominator, c.im.denominator)
    ops = {}
    cmax = 0
    tmax = 0
    for name in names:
        terms = []
        for img in acx.images(name):
            row = []
            if img is not None:
                for mask, c in img.items():
                    if bin(mask).count("1") != 2:
                        raise AssertionError("generator images must be 2-forms")
                    re = int(c.re * den)
                    im = int(c.im * den)
                    cmax = max(cmax, abs(re), abs(im))
                    row.append((mask, re, im))
            tmax = max(tmax, len(row))
            terms.append(row)
        ops[name] = _Op(acx_mod.SHIFTS[name], terms)
    return ops, den, cmax, tmax


def _block_matrix(op: _Op, n, src, tgt):
    """Sparse complex matrix of ``op`` from the monomials ``src`` to ``tgt``."""
    S = np.asarray(src, dtype=np.int64)
    T = np.asarray(tgt, dtype=np.int64)
    rows, cols, vals = [], [], []
    idx = np.arange(len(S))
    for b, row in enumerate(op.terms):
        if not row:
            continue
        g = np.int64(1 << b)
        has = (S & g) != 0
        if not has.any():
            continue
        Sb = S[has]
        ib = idx[has]
        R = Sb & ~g
        pos = np.bitwise_count(Sb & (g - 1)).astype(np.int64)
        for tmask, re, im in row:
            t = np.int64(tmask)
            ok = (R & t) == 0
            if not ok.any():
                continue
            Rk = R[ok]
            lo = tmask & -tmask
            hi = tmask ^ lo
            par = (pos[ok]
                   + np.bitwise_count(Rk & np.int64(lo - 1)).astype(np.int64)
                   + np.bitwise_count(Rk & np.int64(hi - 1)).astype(np.int64)) & 1
            sign = 1 - 2 * par
            out = Rk | t
            r = np.searchsorted(T, out)
            if np.any(r >= len(T)) or np.any(T[np.minimum(r, len(T) - 1)] != out):
                raise AssertionError("operator left its target bidegree")
            rows.append(r)
            cols.append(ib[ok])
            vals.append(sign * complex(re, im))
    shape = (len(T), len(S))
    if not rows:
        return sparse.csr_matrix(shape, dtype=np.complex128)
    return sparse.csr_matrix(
        (np.concatenate(vals).astype(np.complex128), (np.concatenate(rows), np.concatenate(cols))),
        shape=shape)


@dataclass
class RelationCheck:
    name: str
    holds: bool
    monomials: int
    first_failure: tuple | None = None  # (I, K) of a monomial where it fails


@dataclass
class RelationReport:
    n: int
    max_degree: int
    identities: list = field(default_factory=list)
    dbar2_psi: bool = False          # delbar^2 psi == delbar alpha ^ psi
    mubar_alpha: bool = False        # mubar alpha == 0
    mubar_dbar_alpha: bool = False   # mubar delbar alpha == 0
    dbar_alpha_zero: bool = False    # reported, not required

    @property
    def all_hold(self) -> bool:
        return (all(c.holds for c in self.identities)
                and self.dbar2_psi and self.mubar_alpha and self.mubar_dbar_alpha)

    def as_dict(self) -> dict:
        return {
            "max_degree": self.max_degree,
            "identities": {c.name: c.holds for c in self.identities},
            "monomials_checked": max((c.monomials for c in self.identities), default=0),
            "dbar2_psi_equals_dbar_alpha_psi": self.dbar2_psi,
            "mubar_alpha_zero": self.mubar_alpha,
            "mubar_dbar_alpha_zero": self.mubar_dbar_alpha,
            "dbar_alpha_zero": self.dbar_alpha_zero,
        }


# results keyed on the structure constants; the exhaustive run on a 10-dim
# algebra takes seconds and the result is a pure function of its input
_MEMO: dict = {}
_MEMO_SIZE = 16


def check_identities(acx, identities=IDENTITIES, max_degree=None) -> list:
    """Evaluate every identity ``sum A(B(m))`` on every monomial ``m`` of
    degree ``<= max_degree``.  Returns one :class:`RelationCheck` per identity."""
    n = acx.n
    if max_degree is None:
        max_degree = 2 * n
    key = (n, tuple(acx.sc.table.items()), tuple((k, v) for k, v in identities.items()), max_degree)
    if key not in _MEMO:
        if len(_MEMO) >= _MEMO_SIZE:
            _MEMO.pop(next(iter(_MEMO)))
        _MEMO[key] = _check(acx, identities, max_degree)
    return [replace(c) for c in _MEMO[key]]


def _check(acx, identities, max_degree) -> list:
    n = acx.n
    names = sorted({x for comps in identities.values() for pair in comps for x in pair})
    ops, den, cmax, tmax = _scaled_ops(acx, names)
    # each entry of a product is a sum of at most (2n * tmax)^2 terms
    widest = max(len(c) for c in identities.values())
    bound = (cmax ** 2) * 2 * (2 * n * max(tmax, 1)) ** 2 * widest
    if bound >= _LIMIT:
        raise OverflowError("coefficients too large for exact evaluation")
    blocks = {}

    def mons(p, q):
        if (p, q) not in blocks:
            blocks[(p, q)] = _bidegree_masks(n, p, q)
        return blocks[(p, q)]

    cache = {}

    def mat(name, p, q):
        key = (p, q, name)
        if key not in cache:
            dp, dq = ops[name].shift
            cache[key] = _block_matrix(ops[name], n, mons(p, q), mons(p + dp, q + dq))
        return cache[key]

    results = {label: RelationCheck(label, True, 0) for label in identities}
    for p in range(n + 1):
        for q in range(n + 1):
            if p + q > max_degree:
                continue
            src = mons(p, q)
            for label, composites in identities.items():
                res = results[label]
                if not res.holds:
                    continue
                res.monomials += len(src)
                left, right = [], []
                for a, b in composites:
                    sa, sb = ops[a].shift, ops[b].shift
                    mid = (p + sb[0], q + sb[1])
                    end = (mid[0] + sa[0], mid[1] + sa[1])
                    if min(mid + end) < 0 or max(mid + end) > n:
                        continue
                    left.append(mat(a, *mid))
                    right.append(mat(b, p, q))
                if not left:
                    continue
                # sum_k A_k B_k as one product [A_1 .. A_r] [B_1; ..; B_r]
                if len(left) == 1:
                    total = left[0] @ right[0]
                else:
                    total = sparse.hstack(left, format="csr") @ sparse.vstack(right, format="csr")
                bad = total.tocoo()
                bad.eliminate_zeros()
                if bad.nnz:
                    mask = src[int(bad.col[0])]
                    I = tuple(x + 1 for x in range(n) if mask >> x & 1)
                    K = tuple(x + 1 for x in range(n) if mask >> (n + x) & 1)
                    res.holds = False
                    res.first_failure = (I, K)
        # later sources only need blocks with first index >= p
        for key in [k for k in cache if k[0] < p]:
            del cache[key]
    return list(results.values())


def operator_relation_checks(acx, max_degree=None) -> RelationReport:
    """Run all three identities plus the identities for ``psi`` and ``alpha``."""
    n = acx.n
    report = RelationReport(n, 2 * n if max_degree is None else max_degree)
    report.identities = check_identities(acx, IDENTITIES, max_degree)
    a = acx_mod.alpha(acx_mod.lambda_from_structure(acx.sc)).form
    p = psi(n)
    dbar = lambda f: acx_mod.delbar(acx, f)  # noqa: E731
    dbar_a = dbar(a)
    report.dbar2_psi = dbar(dbar(p)) == dbar_a.wedge(p)
    report.mubar_alpha = acx_mod.mubar(acx, a).is_zero()
    report.mubar_dbar_alpha = acx_mod.mubar(acx, dbar_a).is_zero()
    report.dbar_alpha_zero = dbar_a.is_zero()
    return report
