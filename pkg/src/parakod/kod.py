"""Pluricanonical sections: the real PDE system, the operator ``L_m`` and the
plurigenus / Kodaira verdicts, all for constant coefficients.

A section ``f psi^{(x)m}`` with ``f = u + i v`` is pseudoholomorphic iff

    v_k(u) - w_k(v) = 2m (Re(alpha_k) u - Im(alpha_k) v)
    v_k(v) + w_k(u) = 2m (Re(alpha_k) v + Im(alpha_k) u)

for every ``k``.  Everything here is exact; the floating-point section
checks live in :mod:`parakod.section`.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .acx import AlphaForm, BetaScalar, LambdaTensor
from .gaussian import Gaussian, format_rational


@dataclass(frozen=True)
class Equation:
    """``sum coeff * slot = 0``.

    First-order slots are ``(field, k, unknown)`` with ``field`` in
    ``{"v", "w"}``; zero-order slots are ``"u"`` and ``"v"``.
    """

    k: int
    family: int
    first_order: tuple   # ((field, k, unknown), coeff) pairs
    zero_order: tuple    # (unknown, coeff) pairs

    def coeffs(self) -> dict:
        d = {slot: c for slot, c in self.first_order}
        d.update({u: c for u, c in self.zero_order})
        return {s: c for s, c in d.items() if c != 0}

    def render(self) -> str:
        parts = []
        for slot, c in list(self.first_order) + list(self.zero_order):
            if c == 0:
                continue
            name = f"{slot[0]}{slot[1]}({slot[2]})" if isinstance(slot, tuple) else slot
            mag = abs(c)
            coeff = "" if mag == 1 else f"{format_rational(mag)}*"
            sign = "-" if c < 0 else "+"
            parts.append((sign, coeff + name))
        if not parts:
            return "0 = 0"
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, term in parts[1:]:
            text += f" {sign} {term}"
        return text + " = 0"


@dataclass(frozen=True)
class RealSystemSpec:
    n: int
    m: int
    equations: tuple

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "equations": [
                {"k": e.k, "family": e.family, "text": e.render(),
                 "coefficients": {_slot_name(s): format_rational(c) for s, c in sorted(
                     e.coeffs().items(), key=lambda kv: _slot_name(kv[0]))}}
                for e in self.equations
            ],
        }


def _slot_name(slot) -> str:
    return f"{slot[0]}{slot[1]}({slot[2]})" if isinstance(slot, tuple) else slot


def real_system(a: AlphaForm, m: int) -> RealSystemSpec:
    if m < 1:
        raise ValueError("m must be a positive integer")
    eqs = []
    for k, ak in enumerate(a.components, start=1):
        re, im = ak.re, ak.im
        eqs.append(Equation(
            k, 1,
            ((("v", k, "u"), Fraction(1)), (("w", k, "v"), Fraction(-1))),
            (("u", -2 * m * re), ("v", 2 * m * im)),
        ))
        eqs.append(Equation(
            k, 2,
            ((("v", k, "v"), Fraction(1)), (("w", k, "u"), Fraction(1))),
            (("u", -2 * m * im), ("v", -2 * m * re)),
        ))
    return RealSystemSpec(a.n, m, tuple(eqs))


def rotate_unknowns(system: RealSystemSpec) -> RealSystemSpec:
    """Substitute ``(u, v) -> (-v, u)``, i.e. ``f -> i f``."""
    swap = {"u": ("v", -1), "v": ("u", 1)}
    eqs = []
    for e in system.equations:
        first = tuple(((fld, k, swap[unk][0]), c * swap[unk][1]) for (fld, k, unk), c in e.first_order)
        zero = tuple((swap[unk][0], c * swap[unk][1]) for unk, c in e.zero_order)
        eqs.append(Equation(e.k, e.family, first, zero))
    return RealSystemSpec(system.n, system.m, tuple(eqs))


def same_equations_up_to_sign(a: RealSystemSpec, b: RealSystemSpec) -> bool:
    """Every equation of ``a`` is +- an equation of ``b`` and vice versa."""
    def keyset(sys):
        out = set()
        for e in sys.equations:
            c = e.coeffs()
            out.add(frozenset(c.items()))
            out.add(frozenset((s, -v) for s, v in c.items()))
        return out

    def plain(sys):
        return {frozenset(e.coeffs().items()) for e in sys.equations}

    ka, kb = keyset(a), keyset(b)
    return all(x in kb for x in plain(a)) and all(x in ka for x in plain(b))


def evaluate_system(system: RealSystemSpec, values: dict) -> list:
    """Residual of every equation for given slot values (exact or float)."""
    out = []
    for e in system.equations:
        out.append(sum((c * values.get(slot, 0) for slot, c in e.coeffs().items()), 0))
    return out


def complex_residual(a: AlphaForm, m: int, k: int, values: dict) -> Gaussian:
    """``Xbar_k(f) - m alpha_k f`` with ``Xbar_k = (v_k + i w_k) / 2``."""
    g = lambda slot: Gaussian.coerce(values.get(slot, 0))  # noqa: E731
    f = g("u") + g("v") * Gaussian(0, 1)
    vk_f = g(("v", k, "u")) + g(("v", k, "v")) * Gaussian(0, 1)
    wk_f = g(("w", k, "u")) + g(("w", k, "v")) * Gaussian(0, 1)
    xbar = (vk_f + wk_f * Gaussian(0, 1)) * Fraction(1, 2)
    return xbar - a.components[k - 1] * f * m


@dataclass(frozen=True)
class EllipticOperatorSpec:
    """``L_m = sum_k (v_k v_k + w_k w_k) + sum_j (c_v[j] v_j + c_w[j] w_j)`` and
    the zero-order data of the coupled system

        L_m(v) + s v - t u = 0,   -L_m(u) - s u - t v = 0.
    """

    n: int
    m: int
    c_v: tuple
    c_w: tuple
    s: Fraction
    t: Fraction

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "second_order": "sum_k (v_k v_k + w_k w_k)",
            "first_order": {
                **{f"v{j}": format_rational(c) for j, c in enumerate(self.c_v, start=1)},
                **{f"w{j}": format_rational(c) for j, c in enumerate(self.c_w, start=1)},
            },
            "s": format_rational(self.s),
            "t": format_rational(self.t),
            "system": ["L_m(v) + s*v - t*u = 0", "-L_m(u) - s*u - t*v = 0"],
        }


def elliptic_operator(a: AlphaForm, lam: LambdaTensor, m: int,
                      b: BetaScalar | None = None) -> EllipticOperatorSpec:
    if m < 1:
        raise ValueError("m must be a positive integer")
    from .acx import beta as _beta
    if b is None:
        b = _beta(lam, a)
    n = a.n
    diag_re = [Fraction(0)] * n
    diag_im = [Fraction(0)] * n
    for (i, j, k), c in lam.table.items():
        if j == k:
            diag_re[i - 1] += c.re
            diag_im[i - 1] += c.im
    c_v = tuple(-4 * m * a.components[j].re - 2 * diag_re[j] for j in range(n))
    c_w = tuple(-4 * m * a.components[j].im - 2 * diag_im[j] for j in range(n))
    s = 4 * m * m * a.norm2() + 4 * m * b.value.re
    t = 4 * m * b.value.im
    return EllipticOperatorSpec(n, m, c_v, c_w, Fraction(s), Fraction(t))


def decouples(b: BetaScalar) -> bool:
    return b.value.im == 0


def constant_solution_criterion(a: AlphaForm, b: BetaScalar, m: int) -> bool:
    """``Im(beta) = 0`` and ``Re(beta) + m sum|alpha_k|^2 <= 0``."""
    if m < 1:
        raise ValueError("m must be a positive integer")
    return b.value.im == 0 and b.value.re + m * a.norm2() <= 0


class Plurigenus(str, enum.Enum):
    KNOWN_ZERO = "KnownZero"
    KNOWN_ONE = "KnownOne"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class PlurigenusVerdict:
    m: int
    status: Plurigenus
    justification: str
    note: str = ""

    def as_dict(self) -> dict:
        d = {"m": self.m, "status": self.status.value, "justification": self.justification}
        if self.note:
            d["note"] = self.note
        return d


def plurigenera_table(a: AlphaForm, b: BetaScalar, m_max: int) -> list:
    if m_max < 1:
        raise ValueError("m_max must be a positive integer")
    out = []
    zero_ms = []
    for m in range(1, m_max + 1):
        if a.is_zero():
            out.append(PlurigenusVerdict(m, Plurigenus.KNOWN_ONE, "delbar-psi-zero",
                                         "alpha = 0: f psi^m is pseudoholomorphic iff f is constant"))
        elif constant_solution_criterion(a, b, m):
            zero_ms.append(m)
            out.append(PlurigenusVerdict(m, Plurigenus.KNOWN_ZERO, "constant-solution",
                                         "beta real, beta + m|alpha|^2 <= 0 and alpha != 0"))
        else:
            divisors = [d for d in zero_ms if m % d == 0]
            note = ""
            if divisors:
                note = (f"multiple of m={divisors[-1]} where P_m = 0; powers of sections "
                        f"carry no information here")
            out.append(PlurigenusVerdict(m, Plurigenus.UNKNOWN, "no-criterion", note))
    return out


class Kodaira(str, enum.Enum):
    ZERO = "Zero"
    UNDETERMINED = "Undetermined"


@dataclass(frozen=True)
class KodairaVerdict:
    status: Kodaira
    explanation: str

    def as_dict(self) -> dict:
        return {"status": self.status.value, "explanation": self.explanation}


def kodaira_verdict(a: AlphaForm, table: list) -> KodairaVerdict:
    if a.is_zero():
        return KodairaVerdict(Kodaira.ZERO, "delbar psi = 0, so P_m = 1 for all m >= 1 and kod = 0")
    zero_ms = [v.m for v in table if v.status is Plurigenus.KNOWN_ZERO]
    if zero_ms:
        detail = f"P_m = 0 is known only for m in {zero_ms}; finitely many vanishing plurigenera decide nothing"
    else:
        detail = "no criterion applies for any m in the table"
    return KodairaVerdict(
        Kodaira.UNDETERMINED,
        f"alpha != 0 (compatible with both kod = 0 and kod = -inf); {detail}",
    )
