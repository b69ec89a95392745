"""Points of the Riemann sphere, the chordal metric and Moebius transforms."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateTriple
from .scalars import GaussianRational, Scalar, is_exact, normalize

#: default point-equality tolerance, in chordal distance
TAU_PT = 1e-9


@dataclass(frozen=True)
class SpherePoint:
    """A point of C u {oo}. ``z is None`` encodes the point at infinity."""

    z: Scalar | None = None

    def __post_init__(self):
        if self.z is not None:
            object.__setattr__(self, "z", normalize(self.z))

    @property
    def is_inf(self) -> bool:
        return self.z is None

    @property
    def is_exact(self) -> bool:
        return self.z is None or isinstance(self.z, GaussianRational)

    def to_complex(self) -> complex:
        if self.z is None:
            raise ValueError("the point at infinity has no finite coordinate")
        return complex(self.z)

    def __repr__(self):
        return "SpherePoint(inf)" if self.z is None else f"SpherePoint({self.z})"

    def __str__(self):
        return "inf" if self.z is None else str(self.z)


INF = SpherePoint(None)


def pt(x) -> SpherePoint:
    """Convenience constructor: numbers, ``"inf"``, ``None`` or an existing point."""
    if isinstance(x, SpherePoint):
        return x
    if x is None or (isinstance(x, str) and x.strip().lower() in ("inf", "oo", "infinity")):
        return INF
    if isinstance(x, float) and math.isinf(x):
        return INF
    return SpherePoint(x)


def chordal_distance(p: SpherePoint, q: SpherePoint) -> float:
    """Chordal distance on the unit-diameter-2 sphere; values lie in [0, 2]."""
    p, q = pt(p), pt(q)
    if p.is_inf and q.is_inf:
        return 0.0
    if p.is_inf or q.is_inf:
        a = q.to_complex() if p.is_inf else p.to_complex()
        return 2.0 / math.hypot(1.0, abs(a))
    if p.is_exact and q.is_exact and p.z == q.z:
        return 0.0
    a, b = p.to_complex(), q.to_complex()
    # hypot keeps huge coordinates from overflowing
    return min(2.0, 2.0 * abs(a - b) / math.hypot(1.0, abs(a)) / math.hypot(1.0, abs(b)))


def same_point(p: SpherePoint, q: SpherePoint, tol: float = TAU_PT) -> bool:
    """Exact equality for two exact points, chordal closeness otherwise."""
    p, q = pt(p), pt(q)
    if p.is_exact and q.is_exact:
        return p == q
    return chordal_distance(p, q) <= tol


@dataclass(frozen=True, eq=False)
class MobiusTransform:
    """z -> (a z + b) / (c z + d) with ad - bc != 0."""

    a: Scalar
    b: Scalar
    c: Scalar
    d: Scalar

    def __post_init__(self):
        coeffs = [normalize(x) for x in (self.a, self.b, self.c, self.d)]
        if not all(isinstance(x, GaussianRational) for x in coeffs):
            coeffs = [complex(x) for x in coeffs]
        for name, x in zip("abcd", coeffs):
            object.__setattr__(self, name, x)
        det = self.determinant
        if det == 0:
            raise ValueError("degenerate Moebius transform (ad - bc = 0)")

    @classmethod
    def identity(cls, exact: bool = True) -> MobiusTransform:
        one, zero = (GaussianRational(1), GaussianRational(0)) if exact else (1 + 0j, 0j)
        return cls(one, zero, zero, one)

    @property
    def determinant(self):
        return self.a * self.d - self.b * self.c

    @property
    def is_exact(self) -> bool:
        return isinstance(self.a, GaussianRational)

    def __call__(self, p) -> SpherePoint:
        return mobius_apply(self, p)

    def __matmul__(self, other: MobiusTransform) -> MobiusTransform:
        """Composition ``self @ other`` = self after other."""
        return MobiusTransform(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> MobiusTransform:
        return MobiusTransform(self.d, -self.b, -self.c, self.a)

    def coefficients(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    def equals(self, other: MobiusTransform, tol: float = 1e-12) -> bool:
        """Proportional coefficient quadruples define the same transform."""
        u, v = self.coefficients(), other.coefficients()
        if self.is_exact and other.is_exact:
            return all(u[i] * v[j] == u[j] * v[i] for i in range(4) for j in range(i + 1, 4))
        cu = [complex(x) for x in u]
        cv = [complex(x) for x in v]
        scale = max(abs(x) for x in cu) * max(abs(x) for x in cv)
        return all(
            abs(cu[i] * cv[j] - cu[j] * cv[i]) <= tol * scale
            for i in range(4)
            for j in range(i + 1, 4)
        )

    def __eq__(self, other):
        if not isinstance(other, MobiusTransform):
            return NotImplemented
        return self.equals(other)

    __hash__ = None

    def __repr__(self):
        return f"MobiusTransform(a={self.a}, b={self.b}, c={self.c}, d={self.d})"


def _lift_scalars(T: MobiusTransform, z):
    # keep exact arithmetic only when both sides are exact
    if T.is_exact and is_exact(z):
        return T.a, T.b, T.c, T.d, z
    return complex(T.a), complex(T.b), complex(T.c), complex(T.d), complex(z)


def mobius_apply(T: MobiusTransform, p) -> SpherePoint:
    p = pt(p)
    if p.is_inf:
        if T.c == 0:
            return INF
        return SpherePoint(T.a / T.c)
    a, b, c, d, z = _lift_scalars(T, p.z)
    den = c * z + d
    if den == 0:
        return INF
    return SpherePoint((a * z + b) / den)


def _to_zero_one_inf(z1: SpherePoint, z2: SpherePoint, z3: SpherePoint) -> MobiusTransform:
    """Cross-ratio transform sending z1, z2, z3 to 0, 1, oo."""
    if z1.is_inf:
        return MobiusTransform(0, z2.z - z3.z, 1, -z3.z)
    if z2.is_inf:
        return MobiusTransform(1, -z1.z, 1, -z3.z)
    if z3.is_inf:
        return MobiusTransform(1, -z1.z, 0, z2.z - z1.z)
    return MobiusTransform(z2.z - z3.z, -z1.z * (z2.z - z3.z), z2.z - z1.z, -z3.z * (z2.z - z1.z))


def _check_distinct(triple, tol: float):
    for i in range(3):
        for j in range(i + 1, 3):
            if same_point(triple[i], triple[j], tol):
                raise DegenerateTriple(f"repeated point in triple {tuple(map(str, triple))}")


def mobius_sending_three(src, dst, tol: float = TAU_PT) -> MobiusTransform:
    """The unique transform with src[k] -> dst[k] for k = 0, 1, 2."""
    src = tuple(pt(p) for p in src)
    dst = tuple(pt(p) for p in dst)
    if len(src) != 3 or len(dst) != 3:
        raise ValueError("need exactly three source and three target points")
    _check_distinct(src, tol)
    _check_distinct(dst, tol)
    S = _to_zero_one_inf(*src)
    D = _to_zero_one_inf(*dst)
    return D.inverse() @ S


def random_point(rng, scale: float = 2.0) -> SpherePoint:
    """A random finite point with Gaussian coordinates; used by samplers."""
    return SpherePoint(complex(rng.normal(0, scale), rng.normal(0, scale)))
