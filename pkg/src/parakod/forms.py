"""Invariant forms on the complex coframe ``{phi^i, phibar^i}``.

A monomial is an ``int`` bitmask over the ``2n`` generators: bit ``i-1`` is
``phi^i`` and bit ``n+i-1`` is ``phibar^i``.  The canonical monomial for a
mask is the wedge of its generators in increasing bit order, i.e.
``phi^I ^ phibar^K`` with ``I`` and ``K`` increasing.  Its bidegree is
``(|I|, |K|)``.
"""
from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .gaussian import Gaussian, format_gaussian

_ZERO = Gaussian(0)


def popcount(x: int) -> int:
    return bin(x).count("1")


def bits(mask: int):
    b = 0
    while mask:
        if mask & 1:
            yield b
        mask >>= 1
        b += 1


def mono_wedge(a: int, b: int):
    """``(sign, mask)`` of ``mono(a) ^ mono(b)``; sign 0 when they overlap."""
    if a & b:
        return 0, 0
    swaps = 0
    for y in bits(b):
        swaps += popcount(a >> (y + 1))
    return (-1 if swaps & 1 else 1), a | b


class InvariantForm:
    """Sparse element of the exterior algebra with Gaussian-rational coefficients.

    Instances are treated as immutable values.
    """

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Mapping[int, object] | None = None):
        if n < 1:
            raise ValueError("need at least one complex generator")
        self.n = n
        full = (1 << (2 * n)) - 1
        clean = {}
        for mask, c in (terms or {}).items():
            if mask & ~full:
                raise ValueError(f"monomial {mask:#b} outside a {2 * n}-generator algebra")
            c = Gaussian.coerce(c)
            if not c.is_zero():
                clean[mask] = c
        self._terms = clean

    @classmethod
    def _raw(cls, n, terms):
        out = cls.__new__(cls)
        out.n = n
        out._terms = terms
        return out

    # construction -------------------------------------------------------
    @classmethod
    def zero(cls, n):
        return cls._raw(n, {})

    @classmethod
    def constant(cls, n, c):
        return cls(n, {0: c})

    @classmethod
    def phi(cls, n, i):
        _check_index(n, i)
        return cls._raw(n, {1 << (i - 1): Gaussian(1)})

    @classmethod
    def phibar(cls, n, i):
        _check_index(n, i)
        return cls._raw(n, {1 << (n + i - 1): Gaussian(1)})

    @classmethod
    def monomial(cls, n, I: Sequence[int] = (), K: Sequence[int] = (), coeff=1):
        """``coeff * phi^{I} ^ phibar^{K}`` in the order given (signs applied)."""
        out = cls.constant(n, coeff)
        for i in I:
            out = out.wedge(cls.phi(n, i))
        for k in K:
            out = out.wedge(cls.phibar(n, k))
        return out

    @classmethod
    def from_multi_indices(cls, n, terms: Mapping[tuple, object]):
        """From ``{(I, K): coeff}`` with ``I``, ``K`` strictly increasing."""
        out = {}
        for (I, K), c in terms.items():
            if list(I) != sorted(set(I)) or list(K) != sorted(set(K)):
                raise ValueError(f"multi-indices must be strictly increasing: {(I, K)}")
            mask = 0
            for i in I:
                _check_index(n, i)
                mask |= 1 << (i - 1)
            for k in K:
                _check_index(n, k)
                mask |= 1 << (n + k - 1)
            out[mask] = out.get(mask, _ZERO) + Gaussian.coerce(c)
        return cls(n, out)

    # inspection ---------------------------------------------------------
    def items(self):
        return self._terms.items()

    def coefficient(self, mask: int) -> Gaussian:
        return self._terms.get(mask, _ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def bidegree_of(self, mask: int):
        lo = (1 << self.n) - 1
        return popcount(mask & lo), popcount(mask >> self.n)

    def bidegrees(self) -> set:
        return {self.bidegree_of(m) for m in self._terms}

    def degrees(self) -> set:
        return {popcount(m) for m in self._terms}

    def multi_indices(self, mask: int):
        I = tuple(b + 1 for b in bits(mask & ((1 << self.n) - 1)))
        K = tuple(b + 1 for b in bits(mask >> self.n))
        return I, K

    def terms(self) -> dict:
        """``{(I, K): coeff}``, sorted by bidegree then indices."""
        keyed = {self.multi_indices(m): c for m, c in self._terms.items()}
        return dict(sorted(keyed.items(), key=lambda kv: (len(kv[0][0]), len(kv[0][1]), kv[0])))

    def bidegree_split(self) -> dict:
        out = {}
        for m, c in self._terms.items():
            out.setdefault(self.bidegree_of(m), {})[m] = c
        return {pq: InvariantForm._raw(self.n, t) for pq, t in sorted(out.items())}

    def component(self, p: int, q: int) -> "InvariantForm":
        t = {m: c for m, c in self._terms.items() if self.bidegree_of(m) == (p, q)}
        return InvariantForm._raw(self.n, t)

    # algebra ------------------------------------------------------------
    def _same(self, other):
        if not isinstance(other, InvariantForm):
            raise TypeError(f"expected InvariantForm, got {type(other).__name__}")
        if other.n != self.n:
            raise ValueError(f"forms over {self.n} and {other.n} generators")

    def __add__(self, other):
        self._same(other)
        t = dict(self._terms)
        for m, c in other._terms.items():
            s = t.get(m, _ZERO) + c
            if s.is_zero():
                t.pop(m, None)
            else:
                t[m] = s
        return InvariantForm._raw(self.n, t)

    def __neg__(self):
        return InvariantForm._raw(self.n, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, InvariantForm):
            return NotImplemented
        s = Gaussian.coerce(scalar)
        if s.is_zero():
            return InvariantForm.zero(self.n)
        return InvariantForm._raw(self.n, {m: c * s for m, c in self._terms.items()})

    __rmul__ = __mul__

    def wedge(self, other: "InvariantForm") -> "InvariantForm":
        self._same(other)
        t = {}
        for a, ca in self._terms.items():
            for b, cb in other._terms.items():
                sign, m = mono_wedge(a, b)
                if sign:
                    c = ca * cb
                    s = t.get(m, _ZERO) + (c if sign > 0 else -c)
                    if s.is_zero():
                        t.pop(m, None)
                    else:
                        t[m] = s
        return InvariantForm._raw(self.n, t)

    def conjugate(self) -> "InvariantForm":
        """Swap ``phi <-> phibar`` and conjugate coefficients.

        ``conj(phi^I ^ phibar^K) = phibar^I ^ phi^K = (-1)^{|I||K|} phi^K ^ phibar^I``.
        """
        n = self.n
        lo = (1 << n) - 1
        t = {}
        for m, c in self._terms.items():
            a, b = m & lo, m >> n
            sign = -1 if (popcount(a) * popcount(b)) & 1 else 1
            t[b | (a << n)] = c.conjugate() if sign > 0 else -c.conjugate()
        return InvariantForm._raw(n, t)

    def __eq__(self, other):
        if not isinstance(other, InvariantForm):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self):
        return hash((self.n, frozenset(self._terms.items())))

    def __repr__(self):
        return f"InvariantForm(n={self.n}, {self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for (I, K), c in self.terms().items():
            name = "^".join([f"phi{i}" for i in I] + [f"phibar{k}" for k in K])
            coeff = format_gaussian(c)
            if not name:
                parts.append(coeff)
            elif coeff == "1":
                parts.append(name)
            elif coeff == "-1":
                parts.append("-" + name)
            else:
                parts.append(f"({coeff})*{name}")
        return " + ".join(parts)


def _check_index(n, i):
    if not 1 <= i <= n:
        raise IndexError(f"generator index {i} out of range 1..{n}")


def wedge_all(forms: Iterable[InvariantForm], n: int) -> InvariantForm:
    out = InvariantForm.constant(n, 1)
    for f in forms:
        out = out.wedge(f)
    return out


def psi(n: int) -> InvariantForm:
    """``phi^1 ^ ... ^ phi^n``."""
    return InvariantForm._raw(n, {(1 << n) - 1: Gaussian(1)})


def apply_derivation(form: InvariantForm, images: Sequence[InvariantForm | None]) -> InvariantForm:
    """Extend generator images to an odd (anti)derivation and apply it.

    ``images[b]`` is the image of the generator with bit ``b`` (``None`` for
    zero).  For ``g_1 ^ ... ^ g_k`` the rule is
    ``sum_r (-1)^(r-1) g_1 ^ ... ^ D(g_r) ^ ... ^ g_k``; constants map to 0.
    """
    n = form.n
    acc: dict = {}
    for m, c in form.items():
        r = 0
        for b in bits(m):
            img = images[b]
            if img is not None and img:
                gbit = 1 << b
                prefix = m & (gbit - 1)
                suffix = m & ~((gbit << 1) - 1)
                outer = -c if r & 1 else c
                for t, ct in img.items():
                    s1, m1 = mono_wedge(prefix, t)
                    if not s1:
                        continue
                    s2, m2 = mono_wedge(m1, suffix)
                    if not s2:
                        continue
                    v = outer * ct
                    if s1 * s2 < 0:
                        v = -v
                    s = acc.get(m2, _ZERO) + v
                    if s.is_zero():
                        acc.pop(m2, None)
                    else:
                        acc[m2] = s
            r += 1
    return InvariantForm._raw(n, acc)


def all_monomials(n: int, max_degree: int | None = None):
    """Every monomial mask up to ``max_degree`` (default ``2n``), by degree."""
    total = 2 * n
    if max_degree is None:
        max_degree = total
    from itertools import combinations
    for k in range(0, min(max_degree, total) + 1):
        for combo in combinations(range(total), k):
            m = 0
            for b in combo:
                m |= 1 << b
            yield m


def bidegree_monomials(n: int, p: int, q: int) -> list:
    """Sorted masks of all monomials of bidegree ``(p, q)``."""
    from itertools import combinations
    if not (0 <= p <= n and 0 <= q <= n):
        return []
    out = []
    for I in combinations(range(n), p):
        a = sum(1 << i for i in I)
        for K in combinations(range(n), q):
            out.append(a | sum(1 << (n + k) for k in K))
    return sorted(out)
