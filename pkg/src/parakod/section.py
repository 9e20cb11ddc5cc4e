"""Numerical check of candidate m-canonical sections on the R^4 x R^4 model.

Coordinates are ordered ``(x1, y1, x2, y2, x3, y3, x4, y4)``.  The frame is
``v_k = a_k(x) d/dx_k`` and ``w_k = a_k(y) d/dy_k`` with
``a_1 = a_4 = 1`` and ``a_2(x) = a_3(x) = exp(-x1)`` (same on ``y``).

This is the only module that uses floating point.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .kod import RealSystemSpec

DIM = 8
FHAT_CHOICES = ("1", "z1", "z2", "z4", "z1sq")


class NonFiniteEvaluation(ValueError):
    pass


def x_index(k: int) -> int:
    return 2 * (k - 1)


def y_index(k: int) -> int:
    return 2 * (k - 1) + 1


@dataclass
class CandidateSection:
    """``f = u + i v`` as a function of the 8 real coordinates.

    ``func(p) -> (u, v)``.  If ``grad(p) -> (du, dv)`` is supplied (two
    length-8 sequences) it is used; otherwise central differences with step
    ``h``.
    """

    func: Callable
    grad: Optional[Callable] = None
    name: str = ""

    def value(self, p):
        u, v = self.func(np.asarray(p, dtype=float))
        return float(u), float(v)

    def partials(self, p, h: float = 1e-4):
        p = np.asarray(p, dtype=float)
        if self.grad is not None:
            du, dv = self.grad(p)
            return np.asarray(du, dtype=float), np.asarray(dv, dtype=float)
        if not h > 0:
            raise ValueError("finite-difference step must be positive")
        du = np.empty(DIM)
        dv = np.empty(DIM)
        for c in range(DIM):
            e = np.zeros(DIM)
            e[c] = h
            up, vp = self.func(p + e)
            um, vm = self.func(p - e)
            du[c] = (up - um) / (2 * h)
            dv[c] = (vp - vm) / (2 * h)
        return du, dv


def frame_factor(k: int, t: float) -> float:
    """``a_k`` evaluated with ``t`` the first coordinate of the factor."""
    return math.exp(-t) if k in (2, 3) else 1.0


def slot_values(s: CandidateSection, p, h: float = 1e-4) -> dict:
    p = np.asarray(p, dtype=float)
    u, v = s.value(p)
    du, dv = s.partials(p, h)
    vals = {"u": u, "v": v}
    x1, y1 = p[0], p[1]
    for k in range(1, 5):
        ax = frame_factor(k, x1)
        ay = frame_factor(k, y1)
        vals[("v", k, "u")] = ax * du[x_index(k)]
        vals[("v", k, "v")] = ax * dv[x_index(k)]
        vals[("w", k, "u")] = ay * du[y_index(k)]
        vals[("w", k, "v")] = ay * dv[y_index(k)]
    return vals


def residuals(system: RealSystemSpec, s: CandidateSection, p, h: float = 1e-4) -> list:
    vals = slot_values(s, p, h)
    out = []
    for e in system.equations:
        r = 0.0
        for slot, c in e.coeffs().items():
            r += float(c) * vals[slot]
        out.append(r)
    return out


def verify_candidate_section(system: RealSystemSpec, s: CandidateSection, samples, h: float = 1e-4) -> float:
    """Max absolute residual of all equations of ``system`` over ``samples``."""
    if system.n != 4:
        raise ValueError("the coordinate model has n = 4")
    worst = 0.0
    for p in samples:
        rs = residuals(system, s, p, h)
        for r in rs:
            if not math.isfinite(r):
                raise NonFiniteEvaluation(f"non-finite residual at {list(p)}")
            worst = max(worst, abs(r))
    return worst


def sample_points(count: int = 100, seed: int = 0, box: float = 1.0) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return rng.uniform(-box, box, size=(count, DIM))


def _fhat(name: str):
    """Holomorphic ``F(Z)`` and the index of the one ``Z`` it depends on."""
    if name == "1":
        return lambda z: 1 + 0j, None
    if name == "z1":
        return lambda z: z[0], (0, lambda z: 1 + 0j)
    if name == "z2":
        return lambda z: z[1], (1, lambda z: 1 + 0j)
    if name == "z4":
        return lambda z: z[3], (3, lambda z: 1 + 0j)
    if name == "z1sq":
        return lambda z: z[0] ** 2, (0, lambda z: 2 * z[0])
    raise KeyError(f"unknown fhat {name!r}; choose from {', '.join(FHAT_CHOICES)}")


def model_coordinates(p):
    """``Z = (x1 + i y1, e^x1 x2 + i e^y1 y2, e^x1 x3 + i e^y1 y3, x4 + i y4)``
    and their partials in the 8 real coordinates."""
    x1, y1 = p[0], p[1]
    ex, ey = math.exp(x1), math.exp(y1)
    z = []
    dz = []
    for k in range(1, 5):
        xk, yk = p[x_index(k)], p[y_index(k)]
        g = np.zeros(DIM, dtype=complex)
        if k in (2, 3):
            z.append(complex(ex * xk, ey * yk))
            g[0] = ex * xk
            g[1] = 1j * ey * yk
            g[x_index(k)] = ex
            g[y_index(k)] = 1j * ey
        else:
            z.append(complex(xk, yk))
            g[x_index(k)] = 1
            g[y_index(k)] = 1j
        dz.append(g)
    return z, dz


def model_section(fhat: str, m: int, analytic: bool = True) -> CandidateSection:
    """``f = exp(-m (x1 + y1)) * F(Z)`` with ``Z`` from :func:`model_coordinates`."""
    F, dF = _fhat(fhat)

    def func(p):
        z, _ = model_coordinates(p)
        f = math.exp(-m * (p[0] + p[1])) * F(z)
        return f.real, f.imag

    def grad(p):
        z, dz = model_coordinates(p)
        e = math.exp(-m * (p[0] + p[1]))
        f = e * F(z)
        g = np.zeros(DIM, dtype=complex)
        g[0] = -m * f
        g[1] = -m * f
        if dF is not None:
            j, dfun = dF
            g = g + e * dfun(z) * dz[j]
        return g.real, g.imag

    return CandidateSection(func, grad if analytic else None, name=f"fhat={fhat}")


def coordinate_section(c: int = 0) -> CandidateSection:
    """``f = p[c]`` (real), e.g. ``f = x1``; not of the solution form."""
    def func(p):
        return p[c], 0.0

    def grad(p):
        du = np.zeros(DIM)
        du[c] = 1.0
        return du, np.zeros(DIM)

    return CandidateSection(func, grad, name=f"coordinate {c}")
