"""Text input: rational maps in z and lists of sphere points.

Grammar: arithmetic over ``z`` with ``+ - * /``, integer powers written ``^``
or ``**``, parentheses, integer, decimal and rational literals, and the
imaginary unit ``i`` (so ``2+3i`` and ``1/2i`` both work). A point may also
be ``inf``.
"""
from __future__ import annotations

import ast
import os
import re
from fractions import Fraction

from .polynomial import Polynomial
from .rational_map import RationalMap
from .scalars import GaussianRational
from .sphere import INF, SpherePoint

_NUM = r"\d+(?:\.\d+)?(?:[eE][-+]?\d+)?(?:/\d+)?"
_IMAG_LITERAL = re.compile(rf"(?<![\w.])({_NUM})\s*i\b")
_BARE_I = re.compile(r"\bi\b")


def default_backend() -> str:
    """Scalar backend chosen by the RAMIFY_BACKEND environment variable."""
    b = os.environ.get("RAMIFY_BACKEND", "exact").strip().lower()
    if b not in ("exact", "approx"):
        raise ValueError(f"RAMIFY_BACKEND must be 'exact' or 'approx', got {b!r}")
    return b


def _prepare(text: str) -> str:
    s = text.replace("^", "**")
    s = _IMAG_LITERAL.sub(r"((\1)*I)", s)
    return _BARE_I.sub("I", s)


class _Frac:
    """num / den during evaluation."""

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial | None = None):
        self.num = num
        self.den = den if den is not None else Polynomial([1])

    def __add__(self, o):
        return _Frac(self.num * o.den + o.num * self.den, self.den * o.den)

    def __sub__(self, o):
        return _Frac(self.num * o.den - o.num * self.den, self.den * o.den)

    def __mul__(self, o):
        return _Frac(self.num * o.num, self.den * o.den)

    def __truediv__(self, o):
        if o.num.is_zero():
            raise ZeroDivisionError("division by zero in map expression")
        return _Frac(self.num * o.den, self.den * o.num)

    def __neg__(self):
        return _Frac(-self.num, self.den)

    def power(self, k: int):
        if k < 0:
            return (_Frac(Polynomial([1])) / self).power(-k)
        return _Frac(self.num ** k, self.den ** k)


def _constant(x) -> _Frac:
    return _Frac(Polynomial([x]))


def _eval(node, allow_z: bool) -> _Frac:
    if isinstance(node, ast.Expression):
        return _eval(node.body, allow_z)
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)) and not isinstance(node.value, bool):
        # decimals are read as the rational they spell, e.g. 1.5 -> 3/2
        v = node.value
        return _constant(GaussianRational(v if isinstance(v, int) else Fraction(repr(v))))
    if isinstance(node, ast.Name):
        if node.id == "z" and allow_z:
            return _Frac(Polynomial.z())
        if node.id == "I":
            return _constant(GaussianRational(0, 1))
        raise ValueError(f"unknown name {node.id!r}")
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval(node.operand, allow_z)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            k = _int_exponent(node.right)
            return _eval(node.left, allow_z).power(k)
        a, b = _eval(node.left, allow_z), _eval(node.right, allow_z)
        ops = {ast.Add: a.__add__, ast.Sub: a.__sub__, ast.Mult: a.__mul__, ast.Div: a.__truediv__}
        for t, fn in ops.items():
            if isinstance(node.op, t):
                return fn(b)
    raise ValueError(f"unsupported syntax: {ast.dump(node)[:60]}")


def _int_exponent(node) -> int:
    sign = 1
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        sign, node = -1, node.operand
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        if node.value > 64:
            raise ValueError("exponent too large")
        return sign * node.value
    raise ValueError("exponents must be integer literals")


def _parse(text: str, allow_z: bool) -> _Frac:
    try:
        tree = ast.parse(_prepare(text.strip()), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse {text!r}: {exc.msg}") from None
    return _eval(tree, allow_z)


def parse_map(text: str, backend: str | None = None) -> RationalMap:
    """``'(z-1)^3*(z+3)/z'`` -> RationalMap; approx backend converts to floats."""
    backend = backend or default_backend()
    fr = _parse(text, True)
    if fr.den.is_zero():
        raise ValueError("map has a zero denominator")
    f = RationalMap(fr.num, fr.den)
    return f.to_complex() if backend == "approx" else f


def parse_scalar(text: str, backend: str | None = None):
    backend = backend or default_backend()
    fr = _parse(text, False)
    zero = GaussianRational(0)
    val = fr.num(zero) / fr.den(zero)
    return complex(val) if backend == "approx" else val


def parse_point(text: str, backend: str | None = None) -> SpherePoint:
    if text.strip().lower() in ("inf", "oo", "infinity"):
        return INF
    return SpherePoint(parse_scalar(text, backend))


def parse_points(text: str, backend: str | None = None) -> list[SpherePoint]:
    """Semicolon-separated points, e.g. ``'0;16;inf'``."""
    parts = [p for p in text.split(";") if p.strip()]
    if not parts:
        raise ValueError("empty point list")
    return [parse_point(p, backend) for p in parts]
