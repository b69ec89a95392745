"""Rational self-maps of the Riemann sphere and their branch data."""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ConstantMap
from .polynomial import Polynomial, gcd, homogeneous_compose, roots
from .scalars import GaussianRational
from .sphere import INF, TAU_PT, MobiusTransform, SpherePoint, chordal_distance, pt, same_point

MAX_DEGREE = 64
#: relative size below which a conjugated Taylor coefficient counts as zero
TAU_VANISH = 1e-8


def _cancel_common_roots(num: Polynomial, den: Polynomial, tol: float):
    """Approximate-mode reduction: strip roots shared by num and den."""
    if num.degree < 1 or den.degree < 1:
        return num, den
    rn = [[complex(z), m] for z, m in roots(num)]
    rd = [[complex(z), m] for z, m in roots(den)]
    cancelled = False
    for a in rn:
        for b in rd:
            if a[1] and b[1] and chordal_distance(SpherePoint(a[0]), SpherePoint(b[0])) <= tol:
                k = min(a[1], b[1])
                a[1] -= k
                b[1] -= k
                cancelled = True
    if not cancelled:
        return num, den
    new_num = Polynomial.from_roots([z for z, m in rn for _ in range(m)], lead=num.leading)
    new_den = Polynomial.from_roots([z for z, m in rd for _ in range(m)], lead=den.leading)
    return new_num, new_den


class RationalMap:
    """f = num / den in lowest terms, normalized so that den is monic.

    Reduction happens at construction: exact maps divide out the polynomial
    GCD, approximate maps cancel numerator/denominator roots closer than
    ``tol`` in chordal distance.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, reduce: bool = True, tol: float = TAU_PT):
        num = num if isinstance(num, Polynomial) else Polynomial(num)
        den = Polynomial([1]) if den is None else (den if isinstance(den, Polynomial) else Polynomial(den))
        if den.is_zero():
            raise ZeroDivisionError("rational map with zero denominator")
        if not (num.exact and den.exact):
            num, den = num.to_complex(), den.to_complex()
        if num.is_zero():
            # 0 / den is the constant 0 map
            den = Polynomial([den.leading])
        elif reduce:
            if num.exact:
                g = gcd(num, den)
                if g.degree > 0:
                    num, den = num // g, den // g
            else:
                num, den = _cancel_common_roots(num, den, tol)
        lead = den.leading
        num, den = num.scale(1 / lead) if not num.is_zero() else num, den.scale(1 / lead)
        if max(num.degree, den.degree) > MAX_DEGREE:
            raise ValueError(f"degree above the supported maximum {MAX_DEGREE}")
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalMap is immutable")

    @classmethod
    def from_polynomial(cls, p: Polynomial) -> RationalMap:
        return cls(p, Polynomial([1]))

    @classmethod
    def from_mobius(cls, T: MobiusTransform) -> RationalMap:
        return cls(Polynomial([T.b, T.a]), Polynomial([T.d, T.c]))

    @property
    def exact(self) -> bool:
        return self.num.exact and self.den.exact

    @property
    def raw_degree(self) -> int:
        return max(self.num.degree, self.den.degree, 0)

    def __call__(self, p) -> SpherePoint:
        return evaluate(self, p)

    def __eq__(self, other):
        if not isinstance(other, RationalMap):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RationalMap(({self.num}) / ({self.den}))"

    def to_complex(self) -> RationalMap:
        return RationalMap(self.num.to_complex(), self.den.to_complex(), reduce=False)

    def post_compose(self, T: MobiusTransform) -> RationalMap:
        """T o f."""
        return RationalMap(self.num.scale(T.a) + self.den.scale(T.b),
                           self.num.scale(T.c) + self.den.scale(T.d), reduce=False)

    def pre_compose(self, T: MobiusTransform) -> RationalMap:
        """f o T."""
        n = self.raw_degree
        return RationalMap(homogeneous_compose(self.num, n, T.a, T.b, T.c, T.d),
                           homogeneous_compose(self.den, n, T.a, T.b, T.c, T.d), reduce=False)


def evaluate(f: RationalMap, p) -> SpherePoint:
    p = pt(p)
    if p.is_inf:
        dn, dd = f.num.degree, f.den.degree
        if dn > dd:
            return INF
        if dn == dd:
            return SpherePoint(f.num.leading / f.den.leading)
        return SpherePoint(GaussianRational(0) if f.exact else 0j)
    d = f.den(p.z)
    if d == 0:
        return INF
    return SpherePoint(f.num(p.z) / d)


def degree(f: RationalMap) -> int:
    d = f.raw_degree
    if d == 0:
        raise ConstantMap("constant map has no degree")
    return d


def derivative(f: RationalMap) -> RationalMap:
    """Formal derivative (num' den - num den') / den^2, reduced."""
    w = f.num.derivative() * f.den - f.num * f.den.derivative()
    return RationalMap(w, f.den * f.den)


def wronskian(f: RationalMap) -> Polynomial:
    """num' den - num den'; vanishes to order (local degree - 1) at every finite point."""
    return f.num.derivative() * f.den - f.num * f.den.derivative()


def _chart_to(p: SpherePoint) -> MobiusTransform:
    """A transform sending 0 to p."""
    if p.is_inf:
        return MobiusTransform(0, 1, 1, 0)
    return MobiusTransform(1, p.z, 0, 1)


def _chart_from(q: SpherePoint) -> MobiusTransform:
    """A transform sending q to 0."""
    if q.is_inf:
        return MobiusTransform(0, 1, 1, 0)
    return MobiusTransform(1, -q.z, 0, 1)


def local_degree(f: RationalMap, p, tol: float = TAU_VANISH) -> int:
    """1 + branch order of f at p: the vanishing order at 0 of the numerator of
    the map conjugated so that p and f(p) both sit at 0."""
    degree(f)
    p = pt(p)
    q = evaluate(f, p)
    g = f.pre_compose(_chart_to(p)).post_compose(_chart_from(q))
    return g.num.valuation(tol)


def _sort_key(item):
    point = item[0]
    if point.is_inf:
        return (1, 0.0, 0.0)
    c = point.to_complex()
    return (0, round(c.real, 9), round(c.imag, 9))


def fiber(f: RationalMap, y) -> list[tuple[SpherePoint, int]]:
    """All solutions of f(z) = y on the sphere with local degrees (sum = deg f)."""
    d = degree(f)
    y = pt(y)
    if y.is_inf:
        P = f.den
    elif f.exact and y.is_exact:
        P = f.num - f.den.scale(y.z)
    else:
        P = f.to_complex().num - f.to_complex().den.scale(complex(y.z))
    out = [(SpherePoint(z), m) for z, m in roots(P)]
    at_inf = d - P.degree
    if at_inf > 0:
        out.append((INF, at_inf))
    return sorted(out, key=_sort_key)


def critical_points(f: RationalMap) -> list[tuple[SpherePoint, int]]:
    """Points with local degree >= 2 together with their branch orders."""
    degree(f)
    out = [(SpherePoint(z), m) for z, m in roots(wronskian(f))]
    beta_inf = local_degree(f, INF) - 1
    if beta_inf > 0:
        out.append((INF, beta_inf))
    return sorted(out, key=_sort_key)


def branch_values(f: RationalMap, tol: float = TAU_PT) -> list[SpherePoint]:
    vals: list[SpherePoint] = []
    for p, _ in critical_points(f):
        v = evaluate(f, p)
        if not any(same_point(v, u, tol) for u in vals):
            vals.append(v)
    return vals


@dataclass(frozen=True)
class PassportEntry:
    value: SpherePoint
    local_degrees: tuple[int, ...]
    points: tuple[SpherePoint, ...] | None = field(default=None, compare=False)

    @property
    def branch_orders(self) -> tuple[int, ...]:
        return tuple(k - 1 for k in self.local_degrees)


@dataclass(frozen=True)
class Passport:
    """Local-degree multisets of a degree-``map_degree`` covering over chosen values."""

    map_degree: int
    entries: tuple[PassportEntry, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))

    def entry(self, y, tol: float = TAU_PT) -> PassportEntry:
        for e in self.entries:
            if same_point(e.value, pt(y), tol):
                return e
        raise KeyError(str(y))

    def shape(self) -> list[tuple[int, ...]]:
        return [e.local_degrees for e in self.entries]

    def is_well_formed(self) -> bool:
        return all(sum(e.local_degrees) == self.map_degree and min(e.local_degrees) >= 1
                   for e in self.entries)

    @property
    def preimage_count(self) -> int:
        return sum(len(e.local_degrees) for e in self.entries)

    @property
    def total_branching(self) -> int:
        return sum(sum(e.branch_orders) for e in self.entries)


def make_entry(value, fiber_points) -> PassportEntry:
    ordered = sorted(fiber_points, key=lambda t: -t[1])
    return PassportEntry(pt(value), tuple(m for _, m in ordered), tuple(p for p, _ in ordered))


def passport_over(f: RationalMap, Y) -> Passport:
    Y = [pt(y) for y in Y]
    if not Y:
        raise ValueError("passport needs at least one target value")
    for i in range(len(Y)):
        for j in range(i + 1, len(Y)):
            if same_point(Y[i], Y[j]):
                raise ValueError("target values must be pairwise distinct")
    d = degree(f)
    return Passport(d, tuple(make_entry(y, fiber(f, y)) for y in Y))


def riemann_hurwitz_total(f: RationalMap) -> int:
    """Total branching sum(beta) over the sphere; equals 2 deg f - 2."""
    return sum(b for _, b in critical_points(f))


