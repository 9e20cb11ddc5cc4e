"""Exact scalars: rationals (``fractions.Fraction``) and Gaussian rationals.

Every real quantity in the package is a ``Fraction``; complex quantities are
``Gaussian`` values, i.e. elements of Q(i).  The string forms produced by
:func:`format_rational` and :func:`format_gaussian` are canonical and are
accepted back by the matching parsers.
"""
from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Union

Scalar = Union[int, Fraction, "Gaussian"]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def parse_rational(text: str) -> Fraction:
    """Parse ``p`` or ``p/q``.  Zero denominators raise ``ValueError``."""
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ValueError(f"not a rational literal: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class Gaussian:
    """An element ``re + im*i`` of Q(i).  Immutable and hashable."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", to_fraction(re))
        object.__setattr__(self, "im", to_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("Gaussian is immutable")

    def __reduce__(self):
        return (Gaussian, (self.re, self.im))

    @classmethod
    def coerce(cls, x) -> "Gaussian":
        if isinstance(x, Gaussian):
            return x
        if isinstance(x, complex):
            raise TypeError("floating complex values are not exact")
        return cls(x, 0)

    def conjugate(self) -> "Gaussian":
        return Gaussian(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self):
        return not self.is_zero()

    def __add__(self, other):
        try:
            o = Gaussian.coerce(other)
        except TypeError:
            return NotImplemented
        return Gaussian(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return Gaussian(-self.re, -self.im)

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            o = Gaussian.coerce(other)
        except TypeError:
            return NotImplemented
        return Gaussian(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return Gaussian.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, Gaussian):
            return Gaussian(self.re * other.re - self.im * other.im,
                            self.re * other.im + self.im * other.re)
        try:
            r = to_fraction(other)
        except TypeError:
            return NotImplemented
        return Gaussian(self.re * r, self.im * r)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = Gaussian.coerce(other)
        n = o.abs2()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        p = self * o.conjugate()
        return Gaussian(p.re / n, p.im / n)

    def __rtruediv__(self, other):
        return Gaussian.coerce(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return Gaussian(1) / (self ** (-k))
        out = Gaussian(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Gaussian):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"Gaussian({format_gaussian(self)!r})"

    def __str__(self):
        return format_gaussian(self)


ZERO = Gaussian(0)
ONE = Gaussian(1)
I = Gaussian(0, 1)


def format_gaussian(z: Gaussian) -> str:
    """Canonical ``p/q+r/s i`` form: ``0``, ``1/2``, ``-1/2i``, ``1/2+1/2i``."""
    z = Gaussian.coerce(z)
    if z.im == 0:
        return format_rational(z.re)
    im = format_rational(abs(z.im)) + "i"
    if z.re == 0:
        return ("-" if z.im < 0 else "") + im
    return format_rational(z.re) + ("-" if z.im < 0 else "+") + im


_GAUSS_RE = re.compile(
    r"^\s*(?:(?P<re>[+-]?\d+(?:/\d+)?)(?=[+-]|\s*$))?"
    r"\s*(?:(?P<im>[+-]?(?:\d+(?:/\d+)?)?)\s*i)?\s*$"
)


def parse_gaussian(text: str) -> Gaussian:
    m = _GAUSS_RE.match(text)
    if not m or (m.group("re") is None and m.group("im") is None):
        raise ValueError(f"not a Gaussian rational literal: {text!r}")
    re_part = parse_rational(m.group("re")) if m.group("re") else Fraction(0)
    im_text = m.group("im")
    if im_text is None:
        im_part = Fraction(0)
    elif im_text in ("", "+"):
        im_part = Fraction(1)
    elif im_text == "-":
        im_part = Fraction(-1)
    else:
        im_part = parse_rational(im_text)
    return Gaussian(re_part, im_part)
