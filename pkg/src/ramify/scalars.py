"""Scalar backends: exact Gaussian rationals and double-precision complex.

Exact values are :class:`GaussianRational` instances. Anything that touches a
``float`` or ``complex`` is downgraded to Python ``complex``; the two never mix
silently in the other direction.
"""
from __future__ import annotations

import math
import numbers
from fractions import Fraction
from typing import Union

Scalar = Union["GaussianRational", complex]

_LIMIT_DENOMINATOR = 10**6


class GaussianRational:
    """Immutable element ``re + im*i`` of Q(i)."""

    __slots__ = ("_re", "_im")

    def __init__(self, re=0, im=0):
        re = Fraction(re)
        im = Fraction(im)
        object.__setattr__(self, "_re", re)
        object.__setattr__(self, "_im", im)

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @property
    def real(self) -> Fraction:
        return self._re

    @property
    def imag(self) -> Fraction:
        return self._im

    @classmethod
    def coerce(cls, x):
        """Return ``x`` as a GaussianRational, or NotImplemented for inexact input."""
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
            return cls(x, 0)
        if isinstance(x, numbers.Rational):
            return cls(Fraction(x.numerator, x.denominator), 0)
        return NotImplemented

    # arithmetic -----------------------------------------------------------
    def _binary(self, other, op):
        o = GaussianRational.coerce(other)
        if o is NotImplemented:
            if isinstance(other, (float, complex)):
                return op(complex(self), complex(other))
            return NotImplemented
        return op(self, o)

    def __add__(self, other):
        return self._binary(other, _add)

    def __radd__(self, other):
        return self._binary(other, lambda a, b: _add(b, a))

    def __sub__(self, other):
        return self._binary(other, _sub)

    def __rsub__(self, other):
        return self._binary(other, lambda a, b: _sub(b, a))

    def __mul__(self, other):
        return self._binary(other, _mul)

    def __rmul__(self, other):
        return self._binary(other, lambda a, b: _mul(b, a))

    def __truediv__(self, other):
        return self._binary(other, _div)

    def __rtruediv__(self, other):
        return self._binary(other, lambda a, b: _div(b, a))

    def __neg__(self):
        return GaussianRational(-self._re, -self._im)

    def __pos__(self):
        return self

    def __pow__(self, k):
        if not isinstance(k, int):
            return complex(self) ** k
        if k < 0:
            return GaussianRational(1) / (self ** (-k))
        result = GaussianRational(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self._re, -self._im)

    def norm(self) -> Fraction:
        """Squared modulus, exactly."""
        return self._re * self._re + self._im * self._im

    def __abs__(self) -> float:
        return math.sqrt(self.norm())

    def __bool__(self):
        return bool(self._re) or bool(self._im)

    def __complex__(self):
        return complex(float(self._re), float(self._im))

    def __eq__(self, other):
        o = GaussianRational.coerce(other)
        if o is NotImplemented:
            if isinstance(other, (float, complex)):
                c = complex(other)
                if not (math.isfinite(c.real) and math.isfinite(c.imag)):
                    return False
                return self._re == Fraction(c.real) and self._im == Fraction(c.imag)
            return NotImplemented
        return self._re == o._re and self._im == o._im

    def __hash__(self):
        if self._im == 0:
            return hash(self._re)
        return hash((self._re, self._im))

    def __repr__(self):
        return f"GaussianRational({self._re!s}, {self._im!s})"

    def __str__(self):
        if self._im == 0:
            return str(self._re)
        if self._re == 0:
            return f"{self._im}i"
        sign = "+" if self._im > 0 else "-"
        return f"{self._re}{sign}{abs(self._im)}i"


def _add(a, b):
    if isinstance(a, GaussianRational):
        return GaussianRational(a._re + b._re, a._im + b._im)
    return a + b


def _sub(a, b):
    if isinstance(a, GaussianRational):
        return GaussianRational(a._re - b._re, a._im - b._im)
    return a - b


def _mul(a, b):
    if isinstance(a, GaussianRational):
        return GaussianRational(a._re * b._re - a._im * b._im, a._re * b._im + a._im * b._re)
    return a * b


def _div(a, b):
    if isinstance(a, GaussianRational):
        n = b.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        num = _mul(a, b.conjugate())
        return GaussianRational(num._re / n, num._im / n)
    return a / b


I = GaussianRational(0, 1)
ZERO = GaussianRational(0)
ONE = GaussianRational(1)


def is_exact(x) -> bool:
    return GaussianRational.coerce(x) is not NotImplemented


def exact(x) -> GaussianRational:
    """Coerce an exact Python number to GaussianRational; reject floats."""
    g = GaussianRational.coerce(x)
    if g is NotImplemented:
        raise TypeError(f"{x!r} is not an exact scalar")
    return g


def approx(x) -> complex:
    return complex(x)


def normalize(x) -> Scalar:
    """Canonical scalar: GaussianRational when exact, else complex."""
    g = GaussianRational.coerce(x)
    if g is not NotImplemented:
        return g
    c = complex(x)
    if not (math.isfinite(c.real) and math.isfinite(c.imag)):
        raise ValueError(f"non-finite scalar {x!r}")
    return c


def rationalize(z: complex, max_denominator: int = _LIMIT_DENOMINATOR) -> GaussianRational:
    """Nearest Gaussian rational with bounded denominators (a candidate only)."""
    return GaussianRational(
        Fraction(z.real).limit_denominator(max_denominator),
        Fraction(z.imag).limit_denominator(max_denominator),
    )


def exact_cube_root(x: GaussianRational) -> GaussianRational | None:
    """Principal cube root of ``x`` if it lies in Q(i), else None."""
    c = complex(x)
    if c == 0:
        return ZERO
    guess = c ** (1.0 / 3.0)
    for denom in (1, 10**3, _LIMIT_DENOMINATOR):
        cand = rationalize(guess, denom)
        if cand**3 == x:
            return cand
    return None


def format_fraction(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def parse_fraction(s) -> Fraction:
    if isinstance(s, str):
        return Fraction(s.strip())
    return Fraction(s)
