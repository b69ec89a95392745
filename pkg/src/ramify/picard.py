"""The degree-4 covering with three ramified fibers, and its converse checker.

For a nonzero finite ``w`` put ``x1 = (w/16)^(1/3)`` (principal branch) and

    f(z) = (z - x1)^3 (z + 3 x1) / z.

Over each of 0, w and oo the fiber of f has exactly two points, one of local
degree 3 and one unramified, so f restricted to the complement of the six
points X = {0, oo, x1, -3 x1, -x1, 3 x1} is an unbranched degree-4 covering of
the sphere minus {0, w, oo}.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DegenerateW, MalformedPassport, VerificationFailure
from .polynomial import Polynomial
from .rational_map import Passport, RationalMap, degree, passport_over
from .scalars import GaussianRational, exact_cube_root
from .sphere import INF, TAU_PT, MobiusTransform, SpherePoint, mobius_sending_three, pt, same_point

EXPECTED_FIBER = (3, 1)


def picard_map(x1) -> RationalMap:
    """(z - x1)^3 (z + 3 x1) / z."""
    z = Polynomial.z()
    return RationalMap((z - x1) ** 3 * (z + 3 * x1), z)


@dataclass(frozen=True)
class PicardConfig:
    w: SpherePoint
    x1: SpherePoint
    x2: SpherePoint
    y1: SpherePoint
    y2: SpherePoint
    map: RationalMap
    passport: Passport = field(repr=False)

    @property
    def exact(self) -> bool:
        return self.map.exact

    @property
    def Y(self) -> tuple[SpherePoint, ...]:
        return (SpherePoint(self.w.z * 0), self.w, INF)

    @property
    def X(self) -> tuple[SpherePoint, ...]:
        return (SpherePoint(self.w.z * 0), INF, self.x1, self.x2, self.y1, self.y2)

    def expected_fibers(self) -> dict:
        """value -> (ramified point, unramified point), as stated by the construction."""
        zero = SpherePoint(self.w.z * 0)
        return {zero: (self.x1, self.x2), self.w: (self.y1, self.y2), INF: (INF, zero)}


def principal_cube_root(x):
    """Exact principal cube root when it lies in Q(i); otherwise complex."""
    if isinstance(x, GaussianRational):
        r = exact_cube_root(x)
        if r is not None:
            return r
    return complex(x) ** (1.0 / 3.0)


def _verify(cfg: PicardConfig, tol: float) -> None:
    pp = cfg.passport
    if pp.map_degree != 4:
        raise VerificationFailure(f"degree {pp.map_degree} != 4")
    for entry in pp.entries:
        if entry.local_degrees != EXPECTED_FIBER:
            raise VerificationFailure(f"fiber over {entry.value} is {entry.local_degrees}, expected (3, 1)")
    if pp.total_branching != 6:
        raise VerificationFailure("branching over {0, w, oo} does not total 6")
    expected = cfg.expected_fibers()
    for entry in pp.entries:
        ram, unram = next(v for k, v in expected.items() if same_point(k, entry.value, tol))
        got_ram, got_unram = entry.points
        if not (same_point(got_ram, ram, tol) and same_point(got_unram, unram, tol)):
            raise VerificationFailure(f"fiber over {entry.value} is at unexpected points")


def construct(w, tol: float = TAU_PT) -> PicardConfig:
    """Build and verify the configuration for a finite nonzero ``w``."""
    w = pt(w)
    if w.is_inf or w.z == 0:
        raise DegenerateW(f"w must be finite and nonzero, got {w}")
    x1 = principal_cube_root(w.z / 16)
    if not isinstance(x1, GaussianRational):
        w = SpherePoint(complex(w.z))
    f = picard_map(x1)
    zero = SpherePoint(w.z * 0)
    cfg = PicardConfig(
        w=w,
        x1=SpherePoint(x1),
        x2=SpherePoint(-3 * x1),
        y1=SpherePoint(-x1),
        y2=SpherePoint(3 * x1),
        map=f,
        passport=passport_over(f, (zero, w, INF)),
    )
    _verify(cfg, tol)
    return cfg


@dataclass(frozen=True)
class TargetedPicard:
    """A degree-4 covering whose three ramified fibers lie over given targets."""

    config: PicardConfig
    psi: MobiusTransform
    composite: RationalMap
    targets: tuple[SpherePoint, ...]
    passport: Passport = field(repr=False)


def construct_for_targets(Y, tol: float = TAU_PT) -> TargetedPicard:
    """psi sends Y to (0, 1, oo); the composite psi^-1 o f has its three
    ramified fibers over Y."""
    Y = tuple(pt(y) for y in Y)
    if len(Y) != 3:
        raise ValueError("exactly three target values are required")
    psi = mobius_sending_three(Y, (0, 1, INF), tol)
    cfg = construct(1, tol)
    composite = cfg.map.post_compose(psi.inverse())
    pp = passport_over(composite, Y)
    if pp.shape() != cfg.passport.shape() or pp.total_branching != 6:
        raise VerificationFailure("composite passport differs from the normalized configuration")
    return TargetedPicard(cfg, psi, composite, Y, pp)


@dataclass(frozen=True)
class ConverseReport:
    m: int
    degree: int
    n_Y0: int
    branch_point_count: int
    branch_total: int
    preimage_count: int
    derived_lhs: int
    derived_rhs: int
    printed_lhs: int
    printed_rhs: int
    branching_over_Y0: bool
    surjectivity_proxy: bool
    single_unramified_over_Y0: bool
    complete_branching: bool

    @property
    def derived_holds(self) -> bool:
        return self.derived_lhs == self.derived_rhs

    @property
    def printed_holds(self) -> bool:
        return self.printed_lhs == self.printed_rhs

    @property
    def degree_is_4(self) -> bool:
        return self.degree == 4

    @property
    def branch_count_is_3(self) -> bool:
        return self.branch_point_count == 3

    @property
    def branch_orders_all_2(self) -> bool:
        return self.branch_total == 2 * self.branch_point_count

    @property
    def preimage_count_matches(self) -> bool:
        return self.preimage_count == 6 + 4 * self.m

    @property
    def verdict(self) -> str:
        ok = (self.branching_over_Y0 and self.surjectivity_proxy and self.derived_holds
              and self.degree_is_4 and self.branch_count_is_3 and self.branch_orders_all_2
              and self.preimage_count_matches)
        return "CONSISTENT" if ok else "INCONSISTENT"


def _entries_over(passport: Passport, values, tol):
    out = []
    for y in values:
        try:
            out.append(passport.entry(y, tol))
        except KeyError:
            raise MalformedPassport(f"passport has no entry over {y}") from None
    return out


def check_converse(passport: Passport, Y0, Y1=(), tol: float = TAU_PT) -> ConverseReport:
    """Evaluate the conclusions forced on a covering whose branching lies over Y0.

    Both forms of the counting identity are reported: the one obtained by
    subtracting Riemann-Hurwitz, (|Y0| - 2)(deg - 1) = #B, and the variant
    (|Y0| - 2)(deg - 1) = #B + beta(B). Only the first enters the verdict.
    """
    for e in passport.entries:
        if sum(e.local_degrees) != passport.map_degree or min(e.local_degrees, default=0) < 1:
            raise MalformedPassport(f"local degrees over {e.value} do not sum to {passport.map_degree}")
    Y0 = [pt(y) for y in Y0]
    Y1 = [pt(y) for y in Y1]
    e0 = _entries_over(passport, Y0, tol)
    e1 = _entries_over(passport, Y1, tol)
    d = passport.map_degree
    ramified0 = [k for e in e0 for k in e.local_degrees if k >= 2]
    ramified1 = [k for e in e1 for k in e.local_degrees if k >= 2]
    n_b = len(ramified0) + len(ramified1)
    beta_b = sum(k - 1 for k in ramified0 + ramified1)
    lhs = (len(Y0) - 2) * (d - 1)
    return ConverseReport(
        m=len(Y1),
        degree=d,
        n_Y0=len(Y0),
        branch_point_count=n_b,
        branch_total=beta_b,
        preimage_count=sum(len(e.local_degrees) for e in e0 + e1),
        derived_lhs=lhs,
        derived_rhs=n_b,
        printed_lhs=lhs,
        printed_rhs=n_b + beta_b,
        branching_over_Y0=not ramified1,
        surjectivity_proxy=all(1 in e.local_degrees for e in e0 + e1),
        single_unramified_over_Y0=all(e.local_degrees.count(1) == 1 for e in e0),
        complete_branching=beta_b == 2 * d - 2,
    )
