"""Local lifting through a branched covering and the divisibility test for
continuous extension of a lift.

Near a branch point, a map of local degree 1 + beta_F lifts through a covering
of local degree 1 + beta_f exactly when the second divides the first; the lift
then has local degree k = (1 + beta_F) / (1 + beta_f).
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import UnknownValue
from .rational_map import Passport
from .sphere import TAU_PT, SpherePoint, pt


@dataclass(frozen=True)
class LocalLiftProblem:
    beta_f: int
    beta_F: int

    def __post_init__(self):
        for name in ("beta_f", "beta_F"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise ValueError(f"{name} must be a nonnegative integer, got {v!r}")


@dataclass(frozen=True)
class LiftResult:
    k: int
    beta_lift: int


def local_lift(beta_f, beta_F: int | None = None) -> LiftResult | None:
    """k and the lifted branch order, or None when no continuous lift exists.

    Accepts either a LocalLiftProblem or the two orders.
    """
    p = beta_f if isinstance(beta_f, LocalLiftProblem) else LocalLiftProblem(beta_f, beta_F)
    k, r = divmod(1 + p.beta_F, 1 + p.beta_f)
    if r:
        return None
    return LiftResult(k, k - 1)


def c0_extension_divisibility(branch_orders, divisor: int = 3) -> bool:
    """True iff ``divisor`` divides 1 + beta for every listed order."""
    if divisor < 2:
        raise ValueError("divisor must be at least 2")
    return all((1 + b) % divisor == 0 for b in branch_orders)


@dataclass(frozen=True)
class SheetCandidate:
    point: SpherePoint
    local_degree: int
    k: int
    beta_lift: int


@dataclass(frozen=True)
class EndFeasibility:
    value: SpherePoint
    beta: int
    candidates: tuple[SheetCandidate, ...]

    @property
    def liftable(self) -> bool:
        return bool(self.candidates)


@dataclass(frozen=True)
class FeasibilityReport:
    ends: tuple[EndFeasibility, ...]
    forced_ramified: bool = False
    notes: tuple[str, ...] = field(default=())

    @property
    def feasible(self) -> bool:
        return all(e.liftable for e in self.ends)

    @property
    def verdict(self) -> str:
        return "FEASIBLE" if self.feasible else "INFEASIBLE"


def passport_lift_feasibility(h: Passport, ends_over_Y, forced_ramified: bool = False,
                              tol: float = TAU_PT) -> FeasibilityReport:
    """Per-end list of preimages through which a local continuous lift exists.

    ``ends_over_Y`` maps a passport value to the branch orders of the ends
    lying over it. With ``forced_ramified`` every end must pass through a
    ramified preimage whenever the fiber has one. This is a local necessary
    condition only; which sheet an end actually reaches is global data.
    """
    items = ends_over_Y.items() if hasattr(ends_over_Y, "items") else ends_over_Y
    out = []
    for y, betas in items:
        y = pt(y)
        try:
            entry = h.entry(y, tol)
        except KeyError:
            raise UnknownValue(f"{y} is not a value of the passport") from None
        points = entry.points or (None,) * len(entry.local_degrees)
        sheets = list(zip(points, entry.local_degrees))
        if forced_ramified and any(e > 1 for _, e in sheets):
            sheets = [(x, e) for x, e in sheets if e > 1]
        for beta in betas:
            cands = []
            for x, e in sheets:
                res = local_lift(e - 1, int(beta))
                if res is not None:
                    cands.append(SheetCandidate(x, e, res.k, res.beta_lift))
            out.append(EndFeasibility(entry.value, int(beta), tuple(cands)))
    return FeasibilityReport(tuple(out), forced_ramified)
