"""Permutation monodromy of a rational map by numerical path lifting.

Each sheet of the fiber is continued along a discretized path of target
values with an Euler predictor and Newton corrector applied to
``num(z) - y den(z) = 0``. Sheets with ``|z| > 2`` are carried in the chart
``u = 1/z`` so that preimages near or at infinity are handled uniformly.

Loops are lassos based at a common regular value ``b``: a straight spoke out
to a small counter-clockwise circle around the puncture and back. The puncture
at infinity is encircled positively in the chart ``w = 1/y``, i.e. by a large
clockwise circle in the ``y`` plane reached along the ray from ``b`` through
the widest angular gap between the finite punctures. Ordering the finite
punctures by the angle of ``p - b`` measured from that ray and appending
infinity gives lassos whose product is trivial.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import CycleTypeMismatch, PathThroughBranchValue, TrackingCollision
from .rational_map import Passport, RationalMap, branch_values, degree, fiber
from .sphere import INF, TAU_PT, SpherePoint, chordal_distance, pt, same_point

TAU_RES = 1e-10
TAU_COLLISION = 10 * TAU_PT
MAX_BISECTIONS = 32
DEFAULT_SAMPLES = 64
DEFAULT_RADIUS_SCALE = 0.3
_MATCH_TOL = 1e-6
_CHART_SWITCH = 2.0


# ---------------------------------------------------------------------------
# permutations (0-based image tuples: perm[i] is the image of sheet i)
def compose(*perms, n: int | None = None):
    """Action of following ``perms[0]`` first, then ``perms[1]``, ..."""
    n = len(perms[0]) if n is None else n
    out = list(range(n))
    for p in perms:
        out = [p[i] for i in out]
    return tuple(out)


def cycles(perm) -> list[tuple[int, ...]]:
    seen = set()
    out = []
    for start in range(len(perm)):
        if start in seen:
            continue
        cyc = []
        i = start
        while i not in seen:
            seen.add(i)
            cyc.append(i)
            i = perm[i]
        out.append(tuple(cyc))
    return out


def cycle_type(perm) -> tuple[int, ...]:
    return tuple(sorted((len(c) for c in cycles(perm)), reverse=True))


def cycle_notation(perm) -> str:
    """1-based cycle notation, fixed points included, e.g. ``(1 2 3)(4)``."""
    return "".join("(" + " ".join(str(i + 1) for i in c) + ")" for c in cycles(perm))


def orbit(perms, start: int = 0) -> set[int]:
    seen = {start}
    frontier = [start]
    while frontier:
        i = frontier.pop()
        for p in perms:
            j = p[i]
            if j not in seen:
                seen.add(j)
                frontier.append(j)
    return seen


# ---------------------------------------------------------------------------
# tracking
class _Equation:
    """num(z) - y den(z) in the z chart and its reversal in the u = 1/z chart."""

    def __init__(self, f: RationalMap):
        d = degree(f)
        g = f.to_complex()
        self.num = g.num.complex_array()
        self.den = g.den.complex_array()
        self.rnum = g.num.reversed(d).complex_array()
        self.rden = g.den.reversed(d).complex_array()
        self.dnum = _deriv(self.num)
        self.dden = _deriv(self.den)
        self.drnum = _deriv(self.rnum)
        self.drden = _deriv(self.rden)

    def parts(self, inverted: bool):
        if inverted:
            return self.rnum, self.rden, self.drnum, self.drden
        return self.num, self.den, self.dnum, self.dden


def _deriv(cs):
    return np.array([k * c for k, c in enumerate(cs)][1:], dtype=complex)


def _horner(cs, x):
    acc = 0j
    for c in reversed(cs):
        acc = acc * x + c
    return acc


def _to_state(p: SpherePoint):
    if p.is_inf:
        return (True, 0j)
    z = p.to_complex()
    if abs(z) > _CHART_SWITCH:
        return (True, 1 / z)
    return (False, z)


def _to_point(state) -> SpherePoint:
    inverted, c = state
    if inverted:
        return INF if c == 0 else SpherePoint(1 / c)
    return SpherePoint(c)


def _rechart(state):
    inverted, c = state
    if not inverted and abs(c) > _CHART_SWITCH:
        return (True, 1 / c)
    if inverted and c != 0 and abs(c) > _CHART_SWITCH:
        return (False, 1 / c)
    return state


def _min_separation(points: list[SpherePoint]) -> list[float]:
    n = len(points)
    out = [2.0] * n
    for i in range(n):
        for j in range(i + 1, n):
            d = chordal_distance(points[i], points[j])
            out[i] = min(out[i], d)
            out[j] = min(out[j], d)
    return out


def _step_sheet(eq: _Equation, state, ya: complex, yb: complex, tau_res: float):
    inverted, c = state
    num, den, dnum, dden = eq.parts(inverted)
    hz = _horner(dnum, c) - ya * _horner(dden, c)
    if hz == 0:
        return None
    pred = c + _horner(den, c) / hz * (yb - ya)
    x = pred
    for _ in range(8):
        h = _horner(num, x) - yb * _horner(den, x)
        hx = _horner(dnum, x) - yb * _horner(dden, x)
        if hx == 0 or not cmath.isfinite(hx):
            return None
        step = h / hx
        x -= step
        if not cmath.isfinite(x):
            return None
        if abs(step) <= tau_res * max(1.0, abs(x)):
            return (inverted, x), (inverted, pred)
    return None


def _advance(eq, states, ya, yb, depth, tau_res, tau_collision):
    points = [_to_point(s) for s in states]
    seps = _min_separation(points) if len(points) > 1 else [2.0]
    new_states = []
    reason = None
    for s, sep in zip(states, seps):
        res = _step_sheet(eq, s, ya, yb, tau_res)
        if res is None:
            reason = "newton"
            break
        ns, pred = res
        # a corrector that travels a sizeable share of the sheet gap may have jumped sheets
        if chordal_distance(_to_point(ns), _to_point(pred)) > 0.1 * sep:
            reason = "jump"
            break
        new_states.append(_rechart(ns))
    if reason is None and len(new_states) > 1:
        if min(_min_separation([_to_point(s) for s in new_states])) < tau_collision:
            reason = "collision"
    if reason is None:
        return new_states
    if depth >= MAX_BISECTIONS:
        if reason == "collision":
            raise TrackingCollision(f"sheets merged while moving from {ya} to {yb}")
        raise PathThroughBranchValue(f"step from {ya} to {yb} could not be resolved")
    ym = 0.5 * (ya + yb)
    mid = _advance(eq, states, ya, ym, depth + 1, tau_res, tau_collision)
    return _advance(eq, mid, ym, yb, depth + 1, tau_res, tau_collision)


def _path_values(path) -> list[complex]:
    vals = []
    for p in path:
        p = pt(p)
        if p.is_inf:
            raise PathThroughBranchValue("paths must stay in the finite chart of the target")
        vals.append(p.to_complex())
    return vals


def track_fiber(f: RationalMap, path, start_fiber, tau_res: float = TAU_RES,
                tau_collision: float = TAU_COLLISION) -> list[SpherePoint]:
    """Continue every point of ``start_fiber`` along ``path``; returns the fiber
    over the last path value in the original sheet order."""
    eq = _Equation(f)
    ys = _path_values(path)
    states = [_to_state(pt(p)) for p in start_fiber]
    for ya, yb in zip(ys, ys[1:]):
        if ya == yb:
            continue
        states = _advance(eq, states, ya, yb, 0, tau_res, tau_collision)
    return [_to_point(s) for s in states]


def match_fibers(end, start, tol: float = _MATCH_TOL) -> tuple[int, ...]:
    """perm[i] = index of the start point that end[i] landed on."""
    perm = []
    for e in end:
        dists = [chordal_distance(e, s) for s in start]
        j = int(np.argmin(dists))
        if dists[j] > tol:
            raise TrackingCollision(f"tracked point {e} does not return to the base fiber")
        perm.append(j)
    if len(set(perm)) != len(perm):
        raise TrackingCollision("two sheets returned to the same base point")
    return tuple(perm)


# ---------------------------------------------------------------------------
# loops
@dataclass(frozen=True)
class LoopSpec:
    """A circle of ``radius`` about ``target`` starting at ``base``.

    For ``target`` at infinity the radius is measured in the chart ``w = 1/y``.
    """

    base: SpherePoint
    target: SpherePoint
    radius: float
    samples: int = DEFAULT_SAMPLES

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError("loop radius must be positive")
        if self.samples < 16:
            raise ValueError("a loop needs at least 16 samples")

    def points(self) -> list[complex]:
        ts = np.linspace(0.0, 2 * math.pi, self.samples + 1)
        start = self.base.to_complex()
        if self.target.is_inf:
            # positive circle around w = 0 in w = 1/y is clockwise in y
            return [start * cmath.exp(-1j * t) for t in ts]
        c = self.target.to_complex()
        return [c + (start - c) * cmath.exp(1j * t) for t in ts]


def _segment(a: complex, b: complex, n: int) -> list[complex]:
    return [a + (b - a) * t for t in np.linspace(0.0, 1.0, n + 1)]


@dataclass
class MonodromyRep:
    base: SpherePoint
    base_fiber: tuple[SpherePoint, ...]
    perms: dict
    order: tuple[SpherePoint, ...]
    loops: dict = field(default_factory=dict, repr=False)
    local_degrees: dict = field(default_factory=dict, repr=False)

    @property
    def degree(self) -> int:
        return len(self.base_fiber)

    def perm(self, y) -> tuple[int, ...]:
        y = pt(y)
        for k, v in self.perms.items():
            if same_point(k, y):
                return v
        raise KeyError(str(y))

    def ordered_perms(self) -> list[tuple[int, ...]]:
        return [self.perms[y] for y in self.order]

    def product(self) -> tuple[int, ...]:
        return compose(*self.ordered_perms(), n=self.degree)

    @property
    def relation_holds(self) -> bool:
        return self.product() == tuple(range(self.degree))

    @property
    def transitive(self) -> bool:
        return self.subgroup_index == self.degree

    @property
    def subgroup_index(self) -> int:
        """Index of the image of the upstairs fundamental group (= orbit size)."""
        return len(orbit(list(self.perms.values())))

    def cycle_types(self) -> dict:
        return {y: cycle_type(p) for y, p in self.perms.items()}

    @property
    def cycle_types_match(self) -> bool:
        return all(cycle_type(self.perms[y]) == tuple(sorted(self.local_degrees[y], reverse=True))
                   for y in self.perms)


def _angle_from(b: complex, p: complex) -> float:
    return cmath.phase(p - b)


def _widest_gap_direction(angles: list[float]) -> float:
    if not angles:
        return 0.0
    a = sorted(x % (2 * math.pi) for x in angles)
    gaps = [((a[(i + 1) % len(a)] - a[i]) % (2 * math.pi)) or 2 * math.pi for i in range(len(a))]
    i = int(np.argmax(gaps))
    return (a[i] + gaps[i] / 2) % (2 * math.pi)


def _angles_distinct(b: complex, finite: list[complex], min_sep: float = 0.05) -> bool:
    angs = sorted(_angle_from(b, p) % (2 * math.pi) for p in finite)
    if len(angs) < 2:
        return True
    diffs = [(angs[(i + 1) % len(angs)] - angs[i]) % (2 * math.pi) for i in range(len(angs))]
    return min(diffs) >= min_sep


def _base_candidates(finite: list[complex]):
    # grids around the mean and the coordinatewise median, at the full and the
    # typical spread, so an outlying puncture does not hide a tight cluster
    arr = np.array(finite) if finite else np.zeros(1, dtype=complex)
    centres = [complex(arr.mean()), complex(np.median(arr.real), np.median(arr.imag))]
    for centre in centres:
        dists = np.abs(arr - centre)
        for spread in (max(float(dists.max()), 1.0), max(float(np.median(dists)), 1e-3)):
            for rho in (0.05, 0.12, 0.21, 0.31, 0.53, 0.77, 1.13):
                for k in range(24):
                    yield centre + spread * rho * cmath.exp(1j * (0.37 + 2 * math.pi * k / 24))
    # near each puncture at the scale of its nearest neighbour, for tight clusters
    for c in finite:
        sep = min([abs(c - q) for q in finite if q != c] + [1.0])
        for rho in (0.5, 1.0, 2.0):
            for k in range(12):
                yield c + sep * rho * cmath.exp(1j * (0.37 + 2 * math.pi * k / 12))


def _spoke_clearance(b: complex, finite: list[complex]) -> float:
    """Smallest distance from a puncture to a straight spoke b -> q aimed at
    another puncture, in units of that puncture's nearest-neighbour separation."""
    worst = math.inf
    for p in finite:
        sep = min([abs(p - q) for q in finite if q != p] + [abs(p - b)])
        for q in finite:
            if q == p:
                continue
            d = q - b
            t = min(max(((p - b) * d.conjugate()).real / abs(d) ** 2, 0.0), 1.0)
            worst = min(worst, abs(b + t * d - p) / sep)
    return worst


#: spokes must clear other punctures by more than the default loop radius
_MIN_CLEARANCE = 0.35
_GOOD_CLEARANCE = 0.5


def choose_base(punctures) -> SpherePoint:
    """A deterministic base value away from the punctures whose spokes to the
    punctures stay clear of the other punctures' loops."""
    finite = [p.to_complex() for p in punctures if not p.is_inf]
    best, best_key = None, None
    for b in _base_candidates(finite):
        if not _angles_distinct(b, finite, 1e-3):
            continue
        clearance = _spoke_clearance(b, finite)
        if clearance < _MIN_CLEARANCE:
            continue
        score = min([chordal_distance(SpherePoint(b), p) for p in punctures] + [2.0])
        key = (min(clearance, _GOOD_CLEARANCE), score)
        if best_key is None or key > best_key:
            best, best_key = b, key
    if best is None:
        raise ValueError("could not find a base value with clear spokes to every puncture")
    return SpherePoint(best)


def build_loops(punctures, base: SpherePoint, radius_scale: float = DEFAULT_RADIUS_SCALE,
                samples: int = DEFAULT_SAMPLES):
    """Lasso paths and loop specs for every puncture, plus the relation order."""
    b = base.to_complex()
    finite = [p for p in punctures if not p.is_inf]
    has_inf = any(p.is_inf for p in punctures)
    fz = [p.to_complex() for p in finite]
    phi0 = _widest_gap_direction([_angle_from(b, p) for p in fz])
    paths, specs = {}, {}
    for p, c in zip(finite, fz):
        sep = min([abs(c - q) for q in fz if q != c] + [abs(c - b)])
        r = radius_scale * sep
        start = c + r * (b - c) / abs(b - c)
        loop = LoopSpec(SpherePoint(start), p, r, samples)
        spoke = _segment(b, start, 16)
        paths[p] = spoke + loop.points()[1:] + spoke[::-1][1:]
        specs[p] = loop
    if has_inf:
        reach = max([abs(b)] + [abs(q) for q in fz])
        R = max((2 * reach + 1) * DEFAULT_RADIUS_SCALE / radius_scale, 1.1 * reach + 1)
        d = cmath.exp(1j * phi0)
        # solve |b + t d| = R for t > 0
        bd = (b.conjugate() * d).real
        t = -bd + math.sqrt(bd * bd - abs(b) ** 2 + R * R)
        start = b + t * d
        loop = LoopSpec(SpherePoint(start), INF, 1 / R, samples)
        spoke = _segment(b, start, 32)
        paths[INF] = spoke + loop.points()[1:] + spoke[::-1][1:]
        specs[INF] = loop
    order = sorted(finite, key=lambda p: (_angle_from(b, p.to_complex()) - phi0) % (2 * math.pi))
    if has_inf:
        order.append(INF)
    return paths, specs, tuple(order)


def monodromy_rep(f: RationalMap, punctures, base=None, radius_scale: float = DEFAULT_RADIUS_SCALE,
                  samples: int = DEFAULT_SAMPLES, check: bool = True) -> MonodromyRep:
    """Monodromy permutations of ``f`` around each puncture.

    ``punctures`` must contain every branch value of ``f``.
    """
    d = degree(f)
    punctures = [pt(p) for p in punctures]
    for v in branch_values(f):
        if not any(same_point(v, p, 1e-7) for p in punctures):
            raise ValueError(f"branch value {v} is not among the punctures")
    base = choose_base(punctures) if base is None else pt(base)
    if base.is_inf or any(same_point(base, p, 1e-7) for p in punctures):
        raise ValueError("base must be a finite regular value away from the punctures")
    base_fiber = [p for p, m in fiber(f.to_complex(), base) for _ in range(m)]
    if len(base_fiber) != d:
        raise ValueError("base value is not regular")
    paths, specs, order = build_loops(punctures, base, radius_scale, samples)
    perms, local = {}, {}
    for p in order:
        end = track_fiber(f, paths[p], base_fiber)
        perms[p] = match_fibers(end, base_fiber)
        local[p] = [m for _, m in fiber(f, p)]
    rep = MonodromyRep(base, tuple(base_fiber), perms, order, specs, local)
    if check and not rep.cycle_types_match:
        raise CycleTypeMismatch(f"cycle types {rep.cycle_types()} disagree with local degrees {local}")
    return rep


# ---------------------------------------------------------------------------
def surjectivity_criterion(passport: Passport) -> bool:
    """True when every value of the passport has an unramified preimage."""
    return all(1 in e.local_degrees for e in passport.entries)


@dataclass(frozen=True)
class ProbeReport:
    degree: int
    trials: int
    min_cardinality: int
    max_cardinality: int
    all_simple: bool

    @property
    def regular(self) -> bool:
        return self.min_cardinality == self.max_cardinality == self.degree and self.all_simple


def regularity_probe(f: RationalMap, excluded=(), trials: int = 200, seed: int = 0,
                     exclusion_radius: float = 1e-3) -> ProbeReport:
    """Sample ``trials`` values away from ``excluded`` and inspect their fibers."""
    d = degree(f)
    excluded = [pt(p) for p in excluded]
    rng = np.random.default_rng(seed)
    scale = 1.0 + max([abs(p.to_complex()) for p in excluded if not p.is_inf] + [0.0])
    g = f.to_complex()
    cards, simple, done = [], True, 0
    while done < trials:
        y = SpherePoint(complex(rng.normal(0, scale), rng.normal(0, scale)))
        if any(chordal_distance(y, p) < exclusion_radius for p in excluded):
            continue
        fb = fiber(g, y)
        cards.append(len(fb))
        simple = simple and all(m == 1 for _, m in fb)
        done += 1
    return ProbeReport(d, trials, min(cards), max(cards), simple)
