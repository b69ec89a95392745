"""JSON encoding of points, polynomials, passports, records and reports.

Exact scalars are written as "p/q" strings per real and imaginary part so
that round trips are lossless; approximate scalars are plain floats.
"""
from __future__ import annotations

import json
from dataclasses import fields, is_dataclass
from fractions import Fraction

from .fgt import EndRecord, FgtRecord, LiftedRecord
from .polynomial import Polynomial
from .rational_map import Passport, PassportEntry, RationalMap
from .scalars import GaussianRational, format_fraction, parse_fraction
from .sphere import INF, SpherePoint


def scalar_to_json(x) -> dict:
    if isinstance(x, GaussianRational):
        return {"re": format_fraction(x.real), "im": format_fraction(x.imag)}
    x = complex(x)
    return {"re": x.real, "im": x.imag}


def scalar_from_json(d):
    re, im = d["re"], d.get("im", 0)
    if isinstance(re, str) or isinstance(im, str):
        return GaussianRational(parse_fraction(re), parse_fraction(im))
    return complex(float(re), float(im))


def point_to_json(p: SpherePoint) -> dict:
    if p.is_inf:
        return {"inf": True}
    return scalar_to_json(p.z)


def point_from_json(d) -> SpherePoint:
    if d.get("inf"):
        return INF
    return SpherePoint(scalar_from_json(d))


def polynomial_to_json(p: Polynomial) -> list:
    return [scalar_to_json(c) for c in p.coeffs]


def polynomial_from_json(d) -> Polynomial:
    return Polynomial([scalar_from_json(c) for c in d])


def map_to_json(f: RationalMap) -> dict:
    return {"num": polynomial_to_json(f.num), "den": polynomial_to_json(f.den), "exact": f.exact}


def map_from_json(d) -> RationalMap:
    return RationalMap(polynomial_from_json(d["num"]), polynomial_from_json(d["den"]))


def passport_to_json(pp: Passport) -> dict:
    return {
        "degree": pp.map_degree,
        "entries": [
            {"value": point_to_json(e.value), "local_degrees": list(e.local_degrees),
             **({"points": [point_to_json(x) for x in e.points]} if e.points else {})}
            for e in pp.entries
        ],
    }


def passport_from_json(d) -> Passport:
    entries = []
    for e in d["entries"]:
        pts = tuple(point_from_json(x) for x in e["points"]) if "points" in e else None
        entries.append(PassportEntry(point_from_json(e["value"]), tuple(int(k) for k in e["local_degrees"]), pts))
    return Passport(int(d["degree"]), tuple(entries))


def _degree_to_json(n):
    if isinstance(n, Fraction) and n.denominator != 1:
        return format_fraction(n)
    return int(n)


def record_to_json(r) -> dict:
    return {
        "genus": r.genus,
        # lifted records always carry "p/q" so the type survives a round trip
        "degree": format_fraction(r.degree) if isinstance(r, LiftedRecord) else int(r.degree),
        "ends": [{"index": e.index, "beta": e.branch_order, "class": e.cls} for e in r.ends],
        "interior_beta": r.interior_branch_total,
        "missed": list(r.missed),
    }


def record_from_json(d) -> FgtRecord | LiftedRecord:
    ends = tuple(EndRecord(int(e["index"]), int(e["beta"]), str(e.get("class", "regular"))) for e in d["ends"])
    deg = d["degree"]
    missed = tuple(str(y) for y in d.get("missed", ()))
    if isinstance(deg, str):
        return LiftedRecord(int(d["genus"]), ends, int(d.get("interior_beta", 0)), parse_fraction(deg), missed)
    return FgtRecord(int(d["genus"]), ends, int(d.get("interior_beta", 0)), int(deg), missed)


def to_jsonable(obj):
    """Generic conversion used for reports."""
    if isinstance(obj, (FgtRecord, LiftedRecord)):
        return record_to_json(obj)
    if isinstance(obj, SpherePoint):
        return point_to_json(obj)
    if isinstance(obj, Passport):
        return passport_to_json(obj)
    if isinstance(obj, RationalMap):
        return map_to_json(obj)
    if isinstance(obj, Polynomial):
        return polynomial_to_json(obj)
    if isinstance(obj, GaussianRational):
        return scalar_to_json(obj)
    if isinstance(obj, Fraction):
        return _degree_to_json(obj)
    if isinstance(obj, complex):
        return scalar_to_json(obj)
    if is_dataclass(obj):
        out = {f.name: to_jsonable(getattr(obj, f.name)) for f in fields(obj)}
        # computed verdicts are part of every report
        for name in ("holds", "verdict", "feasible", "liftable", "rejected", "derived_holds",
                     "printed_holds", "bound_holds", "euler_identity_holds"):
            if hasattr(type(obj), name) and isinstance(getattr(type(obj), name), property):
                out[name] = to_jsonable(getattr(obj, name))
        return out
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if hasattr(obj, "item"):  # numpy scalars
        return obj.item()
    return obj


def dumps(obj) -> str:
    """Deterministic JSON text."""
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2, ensure_ascii=False)
