"""Command line entry point: ``ramify <command> ...`` with JSON output.

Exit status: 0 when the checks hold or the construction verifies, 1 when a
check reports a violation, 2 for usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import fgt, lifting, monodromy, picard
from .errors import (CycleTypeMismatch, InvariantViolation, RamifyError, VerificationFailure)
from .parsing import default_backend, parse_map, parse_point, parse_points
from .rational_map import (branch_values, critical_points, degree, fiber, passport_over,
                           riemann_hurwitz_total)
from .serialize import dumps, passport_from_json, point_from_json, record_from_json

OK, VIOLATION, USAGE = 0, 1, 2
_VIOLATIONS = (VerificationFailure, CycleTypeMismatch, InvariantViolation)


def _load_json(source: str):
    """A file path, ``-`` for stdin, or inline JSON."""
    if source == "-":
        return json.load(sys.stdin)
    if source.lstrip().startswith(("{", "[")):
        return json.loads(source)
    return json.loads(Path(source).read_text())


def _emit(payload, ok: bool) -> int:
    print(dumps(payload))
    return OK if ok else VIOLATION


# ---------------------------------------------------------------------------
def cmd_analyze_map(args) -> int:
    f = parse_map(args.map, args.backend)
    d = degree(f)
    crit = critical_points(f)
    rh = riemann_hurwitz_total(f)
    out = {
        "map": f,
        "degree": d,
        "critical_points": [{"point": p, "branch_order": b} for p, b in crit],
        "branch_values": branch_values(f),
        "riemann_hurwitz": {"total_branching": rh, "expected": 2 * d - 2, "holds": rh == 2 * d - 2},
    }
    ok = rh == 2 * d - 2
    if args.over:
        pp = passport_over(f, parse_points(args.over, args.backend))
        out["passport"] = pp
        out["passport_branching"] = pp.total_branching
        ok = ok and pp.is_well_formed()
    if args.fiber:
        out["fiber"] = [{"point": p, "local_degree": m} for p, m in fiber(f, parse_point(args.fiber, args.backend))]
    return _emit(out, ok)


def cmd_construct_picard(args) -> int:
    if (args.w is None) == (args.targets is None):
        raise ValueError("give exactly one of --w and --targets")
    if args.w is not None:
        cfg = picard.construct(parse_point(args.w, args.backend).z)
        pp, Y = cfg.passport, cfg.Y
        out = {"w": cfg.w, "x1": cfg.x1, "x2": cfg.x2, "y1": cfg.y1, "y2": cfg.y2,
               "exact": cfg.exact, "map": cfg.map, "X": list(cfg.X)}
    else:
        tp = picard.construct_for_targets(parse_points(args.targets, args.backend))
        pp, Y = tp.passport, tp.targets
        out = {"targets": list(Y), "map": tp.composite, "normalized_map": tp.config.map,
               "psi": [tp.psi.a, tp.psi.b, tp.psi.c, tp.psi.d]}
    conv = picard.check_converse(pp, Y)
    out.update(passport=pp, total_branching=pp.total_branching, verified=True,
               converse=conv, converse_verdict=conv.verdict)
    return _emit(out, conv.verdict == "CONSISTENT")


def cmd_monodromy(args) -> int:
    f = parse_map(args.map, args.backend)
    punctures = parse_points(args.punctures, args.backend)
    base = parse_point(args.base, args.backend) if args.base else None
    rep = monodromy.monodromy_rep(f, punctures, base, radius_scale=args.radius_scale,
                                  samples=args.samples, check=False)
    probe = monodromy.regularity_probe(f, punctures, trials=args.probe_trials, seed=args.seed)
    out = {
        "degree": rep.degree,
        "base": rep.base,
        "base_fiber": list(rep.base_fiber),
        "order": list(rep.order),
        "permutations": [{"value": y, "cycles": monodromy.cycle_notation(rep.perms[y]),
                          "cycle_type": list(monodromy.cycle_type(rep.perms[y])),
                          "local_degrees": sorted(rep.local_degrees[y], reverse=True)}
                         for y in rep.order],
        "relation_holds": rep.relation_holds,
        "transitive": rep.transitive,
        "subgroup_index": rep.subgroup_index,
        "cycle_types_match": rep.cycle_types_match,
        "regularity_probe": {"trials": probe.trials, "regular": probe.regular, "seed": args.seed},
    }
    ok = rep.relation_holds and rep.transitive and rep.cycle_types_match and probe.regular
    return _emit(out, ok)


def cmd_check_lift(args) -> int:
    if args.passport:
        if not args.ends:
            raise ValueError("--passport needs --ends")
        pp = passport_from_json(_load_json(args.passport))
        ends = [(point_from_json(e["value"]), [int(b) for b in e["betas"]]) for e in _load_json(args.ends)]
        rep = lifting.passport_lift_feasibility(pp, ends, forced_ramified=args.forced_ramified)
        return _emit({"report": rep, "verdict": rep.verdict}, rep.feasible)
    if args.beta_f is None or args.beta_F is None:
        raise ValueError("give --beta-f and --beta-F, or --passport and --ends")
    res = lifting.local_lift(args.beta_f, args.beta_F)
    out = {"beta_f": args.beta_f, "beta_F": args.beta_F, "liftable": res is not None,
           "k": res.k if res else None, "beta_lift": res.beta_lift if res else None}
    return _emit(out, res is not None)


# ---------------------------------------------------------------------------
def _record(args):
    return record_from_json(_load_json(args.record))


def cmd_fgt_check(args) -> int:
    r = _record(args)
    reports = fgt.check_all(r)
    out = {"record": r, "checks": list(reports)}
    ok = all(rep.verdict for rep in reports)
    if ok and isinstance(r, fgt.FgtRecord):
        cons = fgt.omitted_value_consequences(r)
        out["consequences"] = cons
        ok = cons.verdict
    return _emit(out, ok)


def _parse_filter(text: str | None):
    if not text:
        return lambda r: True
    key, _, val = text.partition("=")
    key = key.strip().lower()
    getters = {"l": lambda r: r.ell, "ell": lambda r: r.ell, "g": lambda r: r.genus,
               "genus": lambda r: r.genus, "n": lambda r: r.degree, "m": lambda r: len(r.ends)}
    if key not in getters or not val.strip().lstrip("-").isdigit():
        raise ValueError(f"bad filter {text!r}; use e.g. l=3")
    want, get = int(val), getters[key]
    return lambda r: get(r) == want


def cmd_fgt_enumerate(args) -> int:
    keep = _parse_filter(args.filter)
    recs = [r for r in fgt.enumerate_admissible(args.g_max, args.n_max, args.m_max, args.b_max,
                                                node_budget=args.node_budget) if keep(r)]
    return _emit({"count": len(recs), "records": recs}, True)


def cmd_fgt_classify(args) -> int:
    c = fgt.classify_covering(_record(args))
    return _emit({"classification": c}, c.kind != "Infeasible")


def cmd_fgt_obstruct(args) -> int:
    rep = fgt.obstruct_three_missed(_record(args))
    return _emit({"obstruction": rep}, rep.rejected)


def cmd_fgt_bend(args) -> int:
    return _emit({"record": fgt.bend(_record(args), args.from_cls, args.to)}, True)


def cmd_fgt_no_extension(args) -> int:
    rep = fgt.no_extension_two_missed(_record(args), args.w)
    return _emit({"obstruction": rep}, rep.rejected)


# ---------------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ramify", description="Branched coverings of the sphere.")
    p.add_argument("--seed", type=int, default=0, help="seed for all random sampling")
    p.add_argument("--backend", choices=("exact", "approx"), default=None,
                   help="scalar backend (default: RAMIFY_BACKEND or exact)")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze-map", help="degree, critical points and passport of a map")
    a.add_argument("--map", required=True)
    a.add_argument("--over", help="semicolon-separated target values")
    a.add_argument("--fiber", help="a single value whose fiber to list")
    a.set_defaults(func=cmd_analyze_map)

    c = sub.add_parser("construct-picard", help="the degree-4 map ramified over three values")
    c.add_argument("--w")
    c.add_argument("--targets", help="three semicolon-separated values")
    c.set_defaults(func=cmd_construct_picard)

    m = sub.add_parser("monodromy", help="monodromy permutations by path lifting")
    m.add_argument("--map", required=True)
    m.add_argument("--punctures", required=True)
    m.add_argument("--base")
    m.add_argument("--radius-scale", type=float, default=monodromy.DEFAULT_RADIUS_SCALE)
    m.add_argument("--samples", type=int, default=monodromy.DEFAULT_SAMPLES)
    m.add_argument("--probe-trials", type=int, default=50)
    m.set_defaults(func=cmd_monodromy)

    lf = sub.add_parser("check-lift", help="local lifting criterion or passport feasibility")
    lf.add_argument("--beta-f", type=int)
    lf.add_argument("--beta-F", dest="beta_F", type=int)
    lf.add_argument("--passport")
    lf.add_argument("--ends")
    lf.add_argument("--forced-ramified", action="store_true")
    lf.set_defaults(func=cmd_check_lift)

    g = sub.add_parser("fgt", help="integer invariants of finite-geometric-type records")
    gs = g.add_subparsers(dest="fgt_command", required=True)
    for name, fn, hlp in (("check", cmd_fgt_check, "base identities and their consequences"),
                          ("classify", cmd_fgt_classify, "classify an unbranched covering record"),
                          ("obstruct", cmd_fgt_obstruct, "rule out three omitted values")):
        s = gs.add_parser(name, help=hlp)
        s.add_argument("record", help="JSON file, '-' for stdin, or inline JSON")
        s.set_defaults(func=fn)
    e = gs.add_parser("enumerate", help="all admissible records within bounds")
    e.add_argument("--g-max", type=int, required=True)
    e.add_argument("--n-max", type=int, required=True)
    e.add_argument("--m-max", type=int, required=True)
    e.add_argument("--b-max", type=int, required=True)
    e.add_argument("--filter", help="e.g. l=3")
    e.add_argument("--node-budget", type=int, default=fgt.DEFAULT_NODE_BUDGET)
    e.set_defaults(func=cmd_fgt_enumerate)
    b = gs.add_parser("bend", help="move an end class to a fresh value")
    b.add_argument("record")
    b.add_argument("--from", dest="from_cls", required=True)
    b.add_argument("--to", required=True)
    b.set_defaults(func=cmd_fgt_bend)
    ne = gs.add_parser("no-extension", help="two omitted values plus an auxiliary value")
    ne.add_argument("record")
    ne.add_argument("--w", default="w")
    ne.set_defaults(func=cmd_fgt_no_extension)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.backend = args.backend or default_backend()
        return args.func(args)
    except _VIOLATIONS as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return VIOLATION
    except (RamifyError, ValueError, KeyError, ZeroDivisionError, OSError, json.JSONDecodeError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
