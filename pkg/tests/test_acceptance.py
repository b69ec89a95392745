"""Acceptance criteria, each at its stated tolerance and time limit.

A summary line per criterion is printed at the end of the pytest run.
"""
from __future__ import annotations

import time
from collections import Counter

import numpy as np
import pytest

from conftest import ACCEPTANCE_RESULTS
from ramify.fgt import (bend, check_all, classify_covering, enumerate_admissible, FgtRecord,
                        is_unbranched_covering, no_extension_two_missed, obstruct_three_missed,
                        omitted_value_consequences)
from ramify.lifting import local_lift
from ramify.monodromy import cycle_type, monodromy_rep
from ramify.picard import check_converse, construct
from ramify.rational_map import evaluate
from ramify.sphere import INF, TAU_PT, chordal_distance, pt

BOUNDS = (3, 6, 8, 6)


@pytest.fixture
def record():
    """Store the outcome and a short detail string for the summary."""
    state = {}

    def _set(k, detail=""):
        state["k"], state["detail"] = k, detail

    yield _set
    # only reached with "k" set when every assertion before record() passed
    if "k" in state:
        ACCEPTANCE_RESULTS[state["k"]] = (True, state["detail"])


@pytest.fixture(autouse=True)
def _mark_failure(request):
    k = int(request.node.name.split("_")[1])
    ACCEPTANCE_RESULTS[k] = (False, "assertion failed")
    yield


@pytest.fixture(scope="module")
def enumeration():
    t = time.perf_counter()
    recs = list(enumerate_admissible(*BOUNDS))
    return recs, time.perf_counter() - t


def test_1_degree_four_construction(record):
    t = time.perf_counter()
    cfg = construct(16)
    assert cfg.exact
    assert (cfg.x1, cfg.x2, cfg.y1, cfg.y2) == (pt(1), pt(-3), pt(-1), pt(3))
    orders = {p: e - 1 for entry in cfg.passport.entries for p, e in zip(entry.points, entry.local_degrees)}
    assert cfg.passport.map_degree == 4
    assert [orders[p] for p in (INF, pt(1), pt(-1))] == [2, 2, 2]
    assert [orders[p] for p in (pt(0), pt(-3), pt(3))] == [0, 0, 0]
    assert cfg.passport.total_branching == 6 and cfg.passport.preimage_count == 6
    elapsed = time.perf_counter() - t
    assert elapsed < 1.0
    rng = np.random.default_rng(2024)
    worst = 0.0
    for _ in range(50):
        w = complex(*rng.normal(0, 10, 2))
        c = construct(w)
        assert c.passport.shape() == [(3, 1)] * 3 and c.passport.total_branching == 6
        for value, pts in c.expected_fibers().items():
            for p in pts:
                worst = max(worst, chordal_distance(evaluate(c.map, p), value))
    assert worst <= TAU_PT
    record(1, f"exact w=16 in {elapsed:.3f}s; 50 random w, max chordal residual {worst:.1e}")


def test_2_monodromy(record):
    t = time.perf_counter()
    f = construct(16).map
    rep = monodromy_rep(f, [0, 16, INF])
    elapsed = time.perf_counter() - t
    assert all(cycle_type(rep.perm(y)) == (3, 1) for y in (0, 16, INF))
    assert rep.relation_holds and rep.transitive and rep.degree == 4
    for scale in (0.5, 2.0):
        other = monodromy_rep(f, [0, 16, INF], base=rep.base, radius_scale=0.3 * scale)
        assert other.ordered_perms() == rep.ordered_perms()
    assert elapsed < 5.0
    record(2, f"cycle types (3,1)x3, product = id, transitive; {elapsed:.2f}s")


def test_3_lifting_sweep(record):
    bad = 0
    for bf in range(51):
        for bF in range(51):
            res = local_lift(bf, bF)
            ok = (1 + bF) % (1 + bf) == 0
            if (res is not None) != ok or (res and res.k * (1 + bf) != 1 + bF):
                bad += 1
    assert bad == 0
    record(3, "51x51 sweep, 0 discrepancies")


def test_4_omitted_value_bound(record, enumeration):
    recs, elapsed = enumeration
    assert elapsed < 60
    assert all(r.ell <= 3 for r in recs)
    three = [r for r in recs if r.ell == 3]
    assert three and all(r.euler <= 0 for r in three)
    torus = [r for r in three if r.genus == 1]
    assert torus
    for r in torus:
        assert not r.ends_regular and r.interior_branch_total == 0
        assert r.end_branch_total == 2 * r.degree
        assert r.degree == len(r.ends) == r.index_total
        assert all(e.index == 1 for e in r.ends)
        assert omitted_value_consequences(r).verdict
    record(4, f"{len(recs)} records in {elapsed:.1f}s; {len(three)} with ell=3, {len(torus)} of genus 1")


def _covering_counts(recs):
    c = Counter()
    for r in filter(is_unbranched_covering, recs):
        if r.ell in (1, 2):
            c[(r.ell, r.genus, len(r.ends), r.degree)] += 1
            assert classify_covering(r).kind != "Infeasible"
    return c


def test_5_covering_classification(record, enumeration):
    recs, _ = enumeration
    counts = _covering_counts(recs)
    ell1 = {k: v for k, v in counts.items() if k[0] == 1}
    ell2 = {k: v for k, v in counts.items() if k[0] == 2}
    assert set(ell1) == {(1, 0, 1, 1)}
    assert ell2 and all(g == 0 and m == 2 for _, g, m, _ in ell2)
    assert _covering_counts(list(enumerate_admissible(*BOUNDS))) == counts
    record(5, f"ell=1: {sum(ell1.values())} record(s), all (0,1,1); "
              f"ell=2: {sum(ell2.values())} records, all genus 0 with 2 ends")


def test_6_three_omitted_obstruction(record, enumeration):
    recs, _ = enumeration
    t = time.perf_counter()
    exits = Counter()
    for r in (r for r in recs if r.ell == 3):
        rep = obstruct_three_missed(r)
        assert rep.rejected
        if rep.exit == "MissedValueContradiction":
            assert rep.missed_after_lift == 6
            assert not rep.lifted_check.identity("#Y <= 3").holds
        exits[rep.exit] += 1
    elapsed = time.perf_counter() - t
    assert elapsed < 60 and sum(exits.values()) > 0
    record(6, f"exits {dict(sorted(exits.items()))}, none passes; {elapsed:.2f}s")


def test_7_catenoid_no_extension(record):
    from ramify.fgt import EndRecord
    cat = FgtRecord(0, (EndRecord(1, 0, "missed:1"), EndRecord(1, 0, "missed:2")), 0, 1, ("1", "2"))
    rng = np.random.default_rng(7)
    for _ in range(10):
        w = "{:.6f}{:+.6f}i".format(*rng.normal(0, 5, 2))
        rep = no_extension_two_missed(cat, w)
        assert rep.exit == "NoC0Extension" and not rep.divisibility
    record(7, "10 auxiliary values, all NoC0Extension")


def test_8_bend_invariance(record, enumeration):
    recs, _ = enumeration
    rng = np.random.default_rng(8)
    violations = 0
    for i in range(1000):
        r = recs[int(rng.integers(len(recs)))]
        classes = sorted(r.classes())
        cls = classes[int(rng.integers(len(classes)))]
        out = bend(r, cls, f"fresh{i}")
        same = (out.ell == r.ell
                and [(e.index, e.branch_order) for e in out.ends] == [(e.index, e.branch_order) for e in r.ends]
                and [c.verdict for c in check_all(out)] == [c.verdict for c in check_all(r)])
        violations += not same
    assert violations == 0
    record(8, "1000 random bends, 0 violations")


def test_9_converse_discrepancy(record):
    rep = check_converse(construct(16).passport, [0, 16, INF])
    assert (rep.derived_lhs, rep.derived_rhs) == (3, 3) and rep.derived_holds
    assert (rep.printed_lhs, rep.printed_rhs) == (3, 9) and not rep.printed_holds
    record(9, "derived form 3 = 3 holds; printed form 3 vs 9 fails")
