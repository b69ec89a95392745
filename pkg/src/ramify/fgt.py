"""Integer bookkeeping for surfaces of finite geometric type.

A record stores the discrete data of a complete immersed surface whose Gauss
map G extends to a branched covering of the compactification M̄ onto the
sphere: the genus, the ends (each with geometric index I and branch order
beta), the total branching at non-end points, the degree n = |deg G| and the
set Y of values omitted by G on the open surface, with ell = #Y.

The ends over Y form E_inf, the others E_0. Three identities bind the data:

    RH            2n = chi + beta(interior) + sum_E beta
    TC            2n = -chi + #E + sum_E I
    missed fiber  ell * n = #E_inf + beta(E_inf), and n = sum of (1 + beta)
                  over the ends of each omitted value

The degree is stored positive; orientation conventions that make deg G
negative are dropped.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache

from .errors import BoundsTooLarge, InvariantViolation, PreconditionViolated, UnknownValueClass
from .lifting import FeasibilityReport, c0_extension_divisibility, passport_lift_feasibility
from .sphere import INF, SpherePoint

MISSED = "missed"
REGULAR = "regular"
DEFAULT_NODE_BUDGET = 10**7


def missed_class(y: str) -> str:
    return f"{MISSED}:{y}"


def parse_class(cls: str) -> tuple[str, str | None]:
    """``"missed:y"`` -> ("missed", "y"); ``"regular"`` -> ("regular", None)."""
    kind, _, ident = cls.partition(":")
    if kind not in (MISSED, REGULAR):
        raise ValueError(f"unknown end class {cls!r}")
    if kind == MISSED and not ident:
        raise ValueError("a missed-value class needs an id")
    return kind, (ident or None)


@dataclass(frozen=True, order=True)
class EndRecord:
    index: int
    branch_order: int
    cls: str = REGULAR

    def __post_init__(self):
        if not isinstance(self.index, int) or self.index < 1:
            raise ValueError(f"geometric index must be an integer >= 1, got {self.index!r}")
        if not isinstance(self.branch_order, int) or self.branch_order < 0:
            raise ValueError(f"branch order must be an integer >= 0, got {self.branch_order!r}")
        parse_class(self.cls)

    @property
    def kind(self) -> str:
        return parse_class(self.cls)[0]

    @property
    def value_id(self) -> str | None:
        return parse_class(self.cls)[1]

    @property
    def is_missed(self) -> bool:
        return self.kind == MISSED

    @property
    def embedded(self) -> bool:
        return self.index == 1


class _RecordMixin:
    """Derived quantities shared by Gauss-map records and lifted records."""

    @property
    def euler(self) -> int:
        return 2 - 2 * self.genus

    @property
    def ell(self) -> int:
        return len(self.missed)

    @property
    def ends_missed(self) -> tuple[EndRecord, ...]:
        return tuple(e for e in self.ends if e.is_missed)

    @property
    def ends_regular(self) -> tuple[EndRecord, ...]:
        return tuple(e for e in self.ends if not e.is_missed)

    @property
    def index_total(self) -> int:
        return sum(e.index for e in self.ends)

    @property
    def end_branch_total(self) -> int:
        return sum(e.branch_order for e in self.ends)

    @property
    def branch_total(self) -> int:
        """beta over all of M̄."""
        return self.interior_branch_total + self.end_branch_total

    def ends_over(self, y: str) -> tuple[EndRecord, ...]:
        return tuple(e for e in self.ends if e.is_missed and e.value_id == y)

    def classes(self) -> set[str]:
        return {e.cls for e in self.ends}

    def uncovered_missed(self) -> list[str]:
        return [y for y in self.missed if not self.ends_over(y)]


def _check_common(r) -> None:
    if not isinstance(r.genus, int) or r.genus < 0:
        raise ValueError(f"genus must be a nonnegative integer, got {r.genus!r}")
    if not r.ends:
        raise ValueError("a record needs at least one end")
    if not isinstance(r.interior_branch_total, int) or r.interior_branch_total < 0:
        raise ValueError("interior branch total must be a nonnegative integer")
    if len(set(r.missed)) != len(r.missed):
        raise ValueError("missed ids must be distinct")
    for e in r.ends:
        if e.is_missed and e.value_id not in r.missed:
            raise ValueError(f"end class {e.cls} refers to a value outside the missed set")


@dataclass(frozen=True)
class FgtRecord(_RecordMixin):
    genus: int
    ends: tuple[EndRecord, ...]
    interior_branch_total: int
    degree: int
    missed: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "ends", tuple(self.ends))
        object.__setattr__(self, "missed", tuple(sorted(str(y) for y in self.missed)))
        _check_common(self)
        if not isinstance(self.degree, int) or self.degree < 1:
            raise ValueError(f"degree must be an integer >= 1, got {self.degree!r}")
        bad = self.uncovered_missed()
        if bad:
            raise ValueError(f"missed values {bad} are not the class of any end")


@dataclass(frozen=True)
class LiftedRecord(_RecordMixin):
    """Record of a lift through a covering; may carry a fractional degree and
    omitted values with no end over them."""

    genus: int
    ends: tuple[EndRecord, ...]
    interior_branch_total: int
    degree: Fraction
    missed: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "ends", tuple(self.ends))
        object.__setattr__(self, "missed", tuple(sorted(str(y) for y in self.missed)))
        object.__setattr__(self, "degree", Fraction(self.degree))
        _check_common(self)
        if self.degree <= 0:
            raise ValueError("degree must be positive")


# ---------------------------------------------------------------------------
# identity reports

_RELATIONS = {
    "==": lambda a, b: a == b,
    "<=": lambda a, b: a <= b,
    ">": lambda a, b: a > b,
}


@dataclass(frozen=True)
class Identity:
    name: str
    lhs: object
    rhs: object
    relation: str = "=="

    @property
    def holds(self) -> bool:
        return _RELATIONS[self.relation](self.lhs, self.rhs)

    def __str__(self):
        mark = "holds" if self.holds else "fails"
        return f"{self.name}: {self.lhs} {self.relation} {self.rhs} ({mark})"


@dataclass(frozen=True)
class CheckReport:
    name: str
    identities: tuple[Identity, ...]

    @property
    def verdict(self) -> bool:
        return all(i.holds for i in self.identities)

    def identity(self, name: str) -> Identity:
        return next(i for i in self.identities if i.name == name)


def check_rh(r) -> CheckReport:
    n = r.degree
    return CheckReport("riemann-hurwitz", (
        Identity("2n = chi + beta(interior) + beta(E)", 2 * n,
                 r.euler + r.interior_branch_total + r.end_branch_total),
    ))


def check_tc(r) -> CheckReport:
    n = r.degree
    return CheckReport("total-curvature", (
        Identity("2n = -chi + #E + I(E)", 2 * n, -r.euler + len(r.ends) + r.index_total),
    ))


def check_missed_fiber(r) -> CheckReport:
    n = r.degree
    e_inf = r.ends_missed
    ids = [Identity("ell*n = #E_inf + beta(E_inf)", r.ell * n,
                    len(e_inf) + sum(e.branch_order for e in e_inf))]
    for y in r.missed:
        over = r.ends_over(y)
        ids.append(Identity(f"fiber[{y}]: n = sum(1 + beta)", n,
                            sum(1 + e.branch_order for e in over)))
    return CheckReport("missed-fiber", tuple(ids))


def check_all(r) -> tuple[CheckReport, CheckReport, CheckReport]:
    return check_rh(r), check_tc(r), check_missed_fiber(r)


def base_identities_hold(r) -> bool:
    return all(rep.verdict for rep in check_all(r))


# ---------------------------------------------------------------------------
# consequences of the identities

@dataclass(frozen=True)
class ConsequenceReport:
    ell: int
    euler: int
    identities: tuple[Identity, ...]
    rigidity: tuple[Identity, ...] = ()

    @property
    def bound_holds(self) -> bool:
        return self.ell <= 3

    @property
    def verdict(self) -> bool:
        return all(i.holds for i in self.identities + self.rigidity)


def omitted_value_consequences(r: FgtRecord) -> ConsequenceReport:
    """Evaluate what the three base identities force on a record.

    Summing RH and TC gives 4n = #E + beta(M̄) + I(E); subtracting the
    missed-fiber identity gives (4 - ell) n = #E_0 + beta(M u E_0) + I(E),
    which is positive, hence ell <= 3. For ell = 3 the Euler characteristic
    is at most 0, and for ell = 3, chi = 0 the record is rigid: no E_0, no
    interior branching, beta(E) = 2n, n = #E = I(E) and every end embedded.
    """
    if not base_identities_hold(r):
        raise PreconditionViolated("record does not satisfy the base identities")
    n, ell, chi = r.degree, r.ell, r.euler
    e0 = r.ends_regular
    rest = len(e0) + r.interior_branch_total + sum(e.branch_order for e in e0) + r.index_total
    ids = [
        Identity("4n = #E + beta(M̄) + I(E)", 4 * n, len(r.ends) + r.branch_total + r.index_total),
        Identity("(4-ell)n = #E_0 + beta(M u E_0) + I(E)", (4 - ell) * n, rest),
        Identity("(4-ell)n > 0", (4 - ell) * n, 0, ">"),
        Identity("ell <= 3", ell, 3, "<="),
    ]
    rigidity: list[Identity] = []
    if ell == 3:
        ids.append(Identity("chi <= 0", chi, 0, "<="))
        if chi == 0:
            rigidity = [
                Identity("#E_0 = 0", len(e0), 0),
                Identity("beta(interior) = 0", r.interior_branch_total, 0),
                Identity("beta(E) = 2n", r.end_branch_total, 2 * n),
                Identity("n = #E", n, len(r.ends)),
                Identity("n = I(E)", n, r.index_total),
                Identity("all ends embedded", sum(not e.embedded for e in r.ends), 0),
            ]
    return ConsequenceReport(ell, chi, tuple(ids), tuple(rigidity))


def check_branched_covering(r) -> CheckReport:
    """Identities for an arbitrary branched covering F of M̄ with omitted set Y.

    Checks 2 deg F = -chi + #E + I(E), 2 deg F = chi + beta_F(M̄), and
    (4 - #Y) deg F = #(E \\ E_inf) + beta_F(M̄ \\ E_inf) + I(E) > 0, and
    reports the bound #Y <= 3 that the last one implies.
    """
    n, ell = r.degree, r.ell
    e0 = r.ends_regular
    rest = len(e0) + r.interior_branch_total + sum(e.branch_order for e in e0) + r.index_total
    return CheckReport("branched-covering", (
        Identity("2 deg F = -chi + #E + I(E)", 2 * n, -r.euler + len(r.ends) + r.index_total),
        Identity("2 deg F = chi + beta_F(M̄)", 2 * n, r.euler + r.branch_total),
        Identity("(4-#Y) deg F = #E_0 + beta_F(M̄ \\ E_inf) + I(E)", (4 - ell) * n, rest),
        Identity("#E_0 + beta_F(M̄ \\ E_inf) + I(E) > 0", rest, 0, ">"),
        Identity("#Y <= 3", ell, 3, "<="),
    ))


# ---------------------------------------------------------------------------
# coverings without interior branching

@dataclass(frozen=True)
class Classification:
    kind: str
    ell: int
    euler_lhs: int
    euler_rhs: int
    note: str = ""

    @property
    def euler_identity_holds(self) -> bool:
        return self.euler_lhs == self.euler_rhs


def classify_covering(r: FgtRecord) -> Classification:
    """Classify a record whose Gauss map is an honest covering of S^2 minus Y.

    Then chi(M̄) = #E + n(2 - ell). One omitted value forces M = S^2 minus a
    point with #E = n = 1; two force genus 0 and #E = 2; three admit no
    example.
    """
    if r.interior_branch_total != 0:
        raise PreconditionViolated("interior branching present: the Gauss map is not a covering")
    if r.ends_regular:
        raise PreconditionViolated("ends over non-omitted values: the Gauss map is not a covering of S^2 minus Y")
    n, ell = r.degree, r.ell
    lhs, rhs = r.euler, len(r.ends) + n * (2 - ell)
    if ell == 3:
        return Classification("NoExample", ell, lhs, rhs, "three omitted values are obstructed")
    if lhs != rhs:
        return Classification("Infeasible", ell, lhs, rhs, "chi(M̄) != #E + n(2 - ell)")
    if ell == 1:
        return Classification("SphereMinusPoint", ell, lhs, rhs, "#E = n = 1")
    if ell == 2:
        return Classification("CoveringOfTwicePuncturedSphere", ell, lhs, rhs, "genus 0, #E = 2")
    return Classification("Unconstrained", ell, lhs, rhs)


def is_unbranched_covering(r: FgtRecord) -> bool:
    """Precondition of classify_covering."""
    return r.interior_branch_total == 0 and not r.ends_regular


# ---------------------------------------------------------------------------
# bending

def _verdicts(r):
    return tuple(rep.verdict for rep in check_all(r))


def bend(r: FgtRecord, from_cls: str, to_id: str) -> FgtRecord:
    """Move every end of class ``from_cls`` onto the fresh value ``to_id``.

    The value kind is kept: bending an omitted value gives another omitted
    value. All discrete invariants are asserted unchanged.
    """
    if from_cls not in r.classes():
        raise UnknownValueClass(from_cls)
    kind, old = parse_class(from_cls)
    to_id = str(to_id)
    to_cls = f"{kind}:{to_id}"
    if to_cls in r.classes() or to_id in r.missed or (kind == REGULAR and to_id == old):
        raise PreconditionViolated(f"target {to_id!r} is not fresh")
    ends = tuple(replace(e, cls=to_cls) if e.cls == from_cls else e for e in r.ends)
    missed = tuple(to_id if y == old else y for y in r.missed) if kind == MISSED else r.missed
    out = FgtRecord(r.genus, ends, r.interior_branch_total, r.degree, missed)
    if out.ell != r.ell:
        raise InvariantViolation("bend changed the number of omitted values")
    if [e.index for e in out.ends] != [e.index for e in r.ends]:
        raise InvariantViolation("bend changed a geometric index")
    if [e.branch_order for e in out.ends] != [e.branch_order for e in r.ends]:
        raise InvariantViolation("bend changed a branch order")
    if _verdicts(out) != _verdicts(r):
        raise InvariantViolation("bend changed an identity verdict")
    return out


# ---------------------------------------------------------------------------
# enumeration

class _Budget:
    def __init__(self, limit: int):
        self.limit, self.used = limit, 0

    def tick(self):
        self.used += 1
        if self.used > self.limit:
            raise BoundsTooLarge(f"search exceeded the node budget of {self.limit}")


def _fibers(n: int, b_max: int, max_parts: int, max_isum: int, budget: _Budget):
    """All fibers of an omitted value: non-increasing tuples of (beta, I) with
    sum (1 + beta) = n, at most max_parts ends and sum I <= max_isum."""
    out = []

    def rec(left, cap, parts, isum, acc):
        budget.tick()
        if left == 0:
            out.append(tuple(acc))
            return
        if parts == max_parts:
            return
        for beta in range(min(b_max, left - 1), -1, -1):
            for idx in range(max_isum - isum, 0, -1):
                pair = (beta, idx)
                if cap is not None and pair > cap:
                    continue
                # the remaining ends each need index >= 1
                rem = left - (1 + beta)
                if isum + idx + (1 if rem else 0) > max_isum:
                    continue
                acc.append(pair)
                rec(rem, pair, parts + 1, isum + idx, acc)
                acc.pop()

    rec(n, None, 0, 0, [])
    return sorted(out, reverse=True)


def _regular_ends(count: int, isum: int, beta_cap: int, b_max: int, budget: _Budget):
    """Non-increasing tuples of ``count`` (beta, I) pairs with sum I = isum
    and sum beta <= beta_cap."""

    def rec(k, left_i, left_b, cap, acc):
        budget.tick()
        if k == 0:
            if left_i == 0:
                yield tuple(acc)
            return
        for beta in range(min(b_max, left_b), -1, -1):
            for idx in range(left_i - (k - 1), 0, -1):
                pair = (beta, idx)
                if cap is not None and pair > cap:
                    continue
                # remaining k-1 ends take at most idx each under the ordering
                if idx * k < left_i:
                    break
                acc.append(pair)
                yield from rec(k - 1, left_i - idx, left_b - beta, pair, acc)
                acc.pop()

    yield from rec(count, isum, beta_cap, None, [])


def _missed_sequences(fibers, ell, parts_cap, isum_cap, budget):
    """Non-increasing sequences (by fiber order) of ell fibers."""

    def rec(k, start, parts, isum, acc):
        budget.tick()
        if k == 0:
            yield tuple(acc), parts, isum
            return
        for i in range(start, len(fibers)):
            fb = fibers[i]
            p = len(fb)
            s = sum(idx for _, idx in fb)
            if parts + p > parts_cap or isum + s > isum_cap:
                continue
            acc.append(fb)
            yield from rec(k - 1, i, parts + p, isum + s, acc)
            acc.pop()

    yield from rec(ell, 0, 0, 0, [])


def enumerate_admissible(g_max: int, n_max: int, m_max: int, b_max: int,
                         node_budget: int = DEFAULT_NODE_BUDGET):
    """Yield every record, up to relabelling of ends and omitted values,
    satisfying RH, TC and the missed-fiber identities within the bounds.

    Bounds apply to the genus, the degree, the number of ends and the branch
    order of each end; the interior branching is then determined by RH.
    Records come out ordered by genus, degree, number of ends and ell, then
    by end data in decreasing lexicographic order. Omitted values are named
    "1", "2", ...; ends over non-omitted values have class "regular".
    """
    if g_max < 0 or n_max < 1 or m_max < 1 or b_max < 0:
        raise ValueError("bounds must satisfy g_max >= 0, n_max >= 1, m_max >= 1, b_max >= 0")
    budget = _Budget(node_budget)
    for g in range(g_max + 1):
        chi = 2 - 2 * g
        for n in range(1, n_max + 1):
            for m in range(1, m_max + 1):
                S = 2 * n + chi - m  # forced by TC
                if S < m:
                    continue
                fibers = _fibers(n, b_max, m, S, budget)
                for ell in range(0, m + 1):
                    for seq, parts, isum in _missed_sequences(fibers, ell, m, S, budget):
                        m0 = m - parts
                        if (m0 == 0) != (isum == S) or S - isum < m0:
                            continue
                        beta_inf = sum(b for fb in seq for b, _ in fb)
                        cap = 2 * n - chi - beta_inf  # interior + E_0 branching, by RH
                        if cap < 0:
                            continue
                        for e0 in _regular_ends(m0, S - isum, cap, b_max, budget):
                            ends = [EndRecord(idx, b, missed_class(str(j + 1)))
                                    for j, fb in enumerate(seq) for b, idx in fb]
                            ends += [EndRecord(idx, b, REGULAR) for b, idx in e0]
                            k = cap - sum(b for b, _ in e0)
                            yield FgtRecord(g, tuple(ends), k, n,
                                            tuple(str(j + 1) for j in range(ell)))


# ---------------------------------------------------------------------------
# lifting through the degree-4 covering

_TARGET_POINTS = (SpherePoint(0j), SpherePoint(1 + 0j), INF)


def sheet_id(y: str, local_degree: int) -> str:
    """Name of the preimage of omitted value ``y`` with the given local degree."""
    return f"{y}@{local_degree}"


@lru_cache(maxsize=1)
def _normalized_covering():
    from .picard import construct_for_targets

    return construct_for_targets(_TARGET_POINTS)


@dataclass(frozen=True)
class ObstructionReport:
    exit: str
    values: tuple[str, ...]
    targets: dict = field(repr=False)
    passport_shape: tuple
    divisibility: bool
    feasibility: FeasibilityReport = field(repr=False)
    lifted: LiftedRecord | None = None
    lifted_check: CheckReport | None = None
    missed_after_lift: int | None = None
    hypothesis: str = ""

    @property
    def rejected(self) -> bool:
        return self.exit in ("NoC0Extension", "MissedValueContradiction")


NO_C0 = ("the Gauss map of a finite-geometric-type surface extends continuously to M̄ "
         "by definition, so the failing divisibility already contradicts the record")
MISSED_CONTRADICTION = ("the omitted-value bound is applied to the continuous extension "
                        "of the lift, whose existence the divisibility test guarantees locally")


def _lift_pipeline(r: FgtRecord, values, ends_by_value, interior_over, extra_missed) -> ObstructionReport:
    """Shared steps: normalized covering over three values, forced-ramified
    lift feasibility, lifted record and its identities."""
    tp = _normalized_covering()
    targets = dict(zip(values, _TARGET_POINTS))
    passport = tp.passport
    ends_over = {targets[y]: [e.branch_order for e in ends_by_value[y]] + interior_over.get(y, [])
                 for y in values}
    feas = passport_lift_feasibility(passport, ends_over, forced_ramified=True)
    orders = [b for bs in ends_over.values() for b in bs]
    divisible = c0_extension_divisibility(orders, 3)
    shape = tuple(tuple(s) for s in passport.shape())
    if not (divisible and feas.feasible):
        return ObstructionReport("NoC0Extension", tuple(values), targets, shape, divisible, feas,
                                 hypothesis=NO_C0)
    # every end over a value of Y goes through its ramified preimage
    new_ends = []
    for e in r.ends:
        if e.is_missed or e.cls in {f"{REGULAR}:{y}" for y in values}:
            y = e.value_id
            k = (1 + e.branch_order) // 3
            kind = MISSED if y in extra_missed else REGULAR
            new_ends.append(EndRecord(e.index, k - 1, f"{kind}:{sheet_id(y, 3)}"))
        else:
            new_ends.append(e)
    missed = [sheet_id(y, d) for y in extra_missed for d in (3, 1)]
    # interior points over Y drop from order b to (1 + b) / 3 - 1
    dropped = sum(b - ((1 + b) // 3 - 1) for bs in interior_over.values() for b in bs)
    lifted = LiftedRecord(r.genus, tuple(new_ends), r.interior_branch_total - dropped,
                          Fraction(r.degree, 4), tuple(missed))
    check = check_branched_covering(lifted)
    return ObstructionReport("MissedValueContradiction", tuple(values), targets, shape, True, feas,
                             lifted, check, lifted.ell, MISSED_CONTRADICTION)


def obstruct_three_missed(r: FgtRecord) -> ObstructionReport:
    """Rule out a record with three omitted values.

    The degree-4 covering h branched over the three omitted values is pulled
    back along G. If some end over an omitted value has 1 + beta not divisible
    by 3 the lift has no continuous extension (exit NoC0Extension). Otherwise
    the lift omits the six preimages of Y, contradicting #Y <= 3 for the lift
    (exit MissedValueContradiction).
    """
    if r.ell != 3:
        raise PreconditionViolated(f"needs exactly three omitted values, got {r.ell}")
    if not base_identities_hold(r):
        raise PreconditionViolated("record does not satisfy the base identities")
    values = list(r.missed)
    by_value = {y: r.ends_over(y) for y in values}
    return _lift_pipeline(r, values, by_value, {}, values)


def _interior_over_fresh(r: FgtRecord, over_ends: int) -> list[int] | None:
    """Most favourable branch orders for the interior points over a fresh value.

    The remaining multiplicity n - over_ends is carried by interior points.
    Local degree 3 everywhere is the only way to pass the divisibility test;
    it needs 3 | remainder and enough interior branching. Returns None when
    no choice passes, else the orders used.
    """
    rem = r.degree - over_ends
    if rem == 0:
        return []
    if rem % 3 == 0 and 2 * (rem // 3) <= r.interior_branch_total:
        return [2] * (rem // 3)
    return None


def no_extension_two_missed(r: FgtRecord, w_choice: str) -> ObstructionReport:
    """For two omitted values and an extra value w, no continuous extension of
    the lift through the covering branched over Y = missed u {w} exists.

    ``w_choice`` is either a fresh id (a generic value) or the id of a
    regular end class ``regular:<id>``; the ends of that class then lie over w.
    """
    if r.ell != 2:
        raise PreconditionViolated(f"needs exactly two omitted values, got {r.ell}")
    if not base_identities_hold(r):
        raise PreconditionViolated("record does not satisfy the base identities")
    w = str(w_choice)
    if w in r.missed:
        raise PreconditionViolated("the extra value must not be omitted")
    w_ends = tuple(e for e in r.ends if e.cls == f"{REGULAR}:{w}")
    interior = _interior_over_fresh(r, sum(1 + e.branch_order for e in w_ends))
    values = list(r.missed) + [w]
    by_value = {y: r.ends_over(y) for y in r.missed}
    by_value[w] = w_ends
    # one unramified interior point stands in for an impossible remainder
    report = _lift_pipeline(r, values, by_value, {w: interior if interior is not None else [0]},
                            list(r.missed))
    return report


def fiber_counts(r) -> dict[str, int]:
    return {y: sum(1 + e.branch_order for e in r.ends_over(y)) for y in r.missed}


__all__ = [
    "EndRecord", "FgtRecord", "LiftedRecord", "Identity", "CheckReport", "ConsequenceReport",
    "Classification", "ObstructionReport", "check_rh", "check_tc", "check_missed_fiber",
    "check_all", "base_identities_hold", "omitted_value_consequences", "check_branched_covering",
    "classify_covering", "is_unbranched_covering", "bend", "enumerate_admissible",
    "obstruct_three_missed", "no_extension_two_missed", "missed_class", "parse_class", "sheet_id",
    "fiber_counts",
]
