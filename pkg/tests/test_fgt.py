from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ramify.errors import BoundsTooLarge, PreconditionViolated, UnknownValueClass
from ramify.fgt import (EndRecord, FgtRecord, LiftedRecord, bend, check_all, check_branched_covering,
                        check_missed_fiber, check_rh, check_tc, classify_covering, enumerate_admissible,
                        is_unbranched_covering, no_extension_two_missed, obstruct_three_missed,
                        omitted_value_consequences, parse_class)


def rec(genus, ends, k, n, missed=None):
    ends = tuple(EndRecord(*e) for e in ends)
    if missed is None:
        missed = sorted({e.value_id for e in ends if e.is_missed})
    return FgtRecord(genus, ends, k, n, tuple(missed))


CATENOID = rec(0, [(1, 0, "missed:1"), (1, 0, "missed:2")], 0, 1)


@pytest.fixture(scope="module")
def small_records():
    return list(enumerate_admissible(2, 4, 6, 4))


# --- records -------------------------------------------------------------

def test_record_validation():
    with pytest.raises(ValueError):
        EndRecord(0, 0)
    with pytest.raises(ValueError):
        EndRecord(1, -1)
    with pytest.raises(ValueError):
        parse_class("missed")
    with pytest.raises(ValueError):
        rec(0, [(1, 0)], 0, 1, missed=["1"])  # omitted value with no end over it
    with pytest.raises(ValueError):
        rec(0, [], 0, 1)
    assert CATENOID.ell == 2 and CATENOID.euler == 2 and all(e.embedded for e in CATENOID.ends)


# --- base identities -----------------------------------------------------

def test_catenoid_identities():
    rh, tc, mf = check_all(CATENOID)
    assert (rh.identities[0].lhs, rh.identities[0].rhs) == (2, 2)
    assert (tc.identities[0].lhs, tc.identities[0].rhs) == (2, 2)
    assert (mf.identities[0].lhs, mf.identities[0].rhs) == (2, 2)
    assert rh.verdict and tc.verdict and mf.verdict


def test_sphere_record_rh():
    assert check_rh(rec(0, [(1, 0)], 0, 1)).verdict


def test_perturbed_catenoid_fails():
    bad = rec(0, [(1, 0, "missed:1"), (1, 0, "missed:2")], 0, 2)
    i = check_rh(bad).identities[0]
    assert (i.lhs, i.rhs, i.holds) == (4, 2, False)


def test_tc_negative_case():
    r = rec(1, [(1, 0), (1, 0), (2, 0)], 0, 2)
    i = check_tc(r).identities[0]
    assert (i.lhs, i.rhs) == (4, 7) and not i.holds


def test_tc_four_ends_genus_zero():
    # 2n = 2 + I(E) for genus 0 with four ends
    r = rec(0, [(1, 0, "missed:1"), (1, 0, "missed:1"), (1, 0, "missed:2"), (1, 0, "missed:2")], 2, 3)
    assert check_tc(r).identities[0].rhs == 2 + r.index_total


def test_covering_as_record_missed_fiber():
    ends = [(1, b, f"missed:{y}") for y in "abc" for b in (2, 0)]
    r = rec(0, ends, 0, 4)
    i = check_missed_fiber(r).identities[0]
    assert (i.lhs, i.rhs) == (12, 12) and check_missed_fiber(r).verdict
    assert check_branched_covering(r).identity("2 deg F = chi + beta_F(M̄)").lhs == 8
    assert check_branched_covering(r).identity("2 deg F = chi + beta_F(M̄)").holds


def test_single_missed_value_fiber():
    r = rec(0, [(1, 2, "missed:1")], 0, 3)
    assert check_missed_fiber(r).verdict


# --- consequences --------------------------------------------------------

def test_catenoid_consequences():
    c = omitted_value_consequences(CATENOID)
    i = c.identities[1]
    assert (i.lhs, i.rhs) == (2, 2) and c.verdict and c.bound_holds


def test_consequences_precondition():
    with pytest.raises(PreconditionViolated):
        omitted_value_consequences(rec(0, [(1, 0)], 0, 1))


def test_branched_covering_catenoid_and_four_omitted():
    rep = check_branched_covering(CATENOID)
    i = rep.identity("(4-#Y) deg F = #E_0 + beta_F(M̄ \\ E_inf) + I(E)")
    assert (i.lhs, i.rhs) == (2, 2) and rep.verdict
    four = LiftedRecord(0, (EndRecord(1, 0),), 0, Fraction(1), ("a", "b", "c", "d"))
    rep = check_branched_covering(four)
    assert not rep.verdict and not rep.identity("#Y <= 3").holds
    assert rep.identity("(4-#Y) deg F = #E_0 + beta_F(M̄ \\ E_inf) + I(E)").lhs == 0


# --- enumeration ---------------------------------------------------------

def test_enumerator_contains_catenoid():
    recs = list(enumerate_admissible(0, 1, 2, 0))
    assert CATENOID in recs


def test_enumerator_soundness_and_bound(small_records):
    assert small_records
    for r in small_records:
        assert all(rep.verdict for rep in check_all(r))
        c = omitted_value_consequences(r)
        assert c.verdict and r.ell <= 3
        assert (4 - r.ell) * r.degree > 0


def test_enumerator_no_duplicates_and_deterministic(small_records):
    assert len(set(small_records)) == len(small_records)
    assert list(enumerate_admissible(2, 4, 6, 4)) == small_records


def test_enumerator_respects_bounds(small_records):
    for r in small_records:
        assert r.genus <= 2 and r.degree <= 4 and len(r.ends) <= 6
        assert all(e.branch_order <= 4 for e in r.ends)


def test_enumerator_is_complete_on_tiny_bounds():
    # brute force over all genus-0 degree-1 two-end records
    found = set(enumerate_admissible(0, 1, 2, 1))
    brute = set()
    classes = ["missed:1", "missed:2", "regular"]
    for m in (1, 2):
        for idx in range(1, 5):
            for idx2 in range(1, 5):
                for b1 in range(2):
                    for b2 in range(2):
                        for c1 in classes:
                            for c2 in classes:
                                ends = [(idx, b1, c1), (idx2, b2, c2)][:m]
                                try:
                                    r = rec(0, ends, 0, 1)
                                except ValueError:
                                    continue
                                if all(x.verdict for x in check_all(r)):
                                    brute.add(r)
    canon = {(r.genus, r.degree, r.ell, tuple(sorted((e.index, e.branch_order, e.is_missed) for e in r.ends)))
             for r in brute}
    got = {(r.genus, r.degree, r.ell, tuple(sorted((e.index, e.branch_order, e.is_missed) for e in r.ends)))
           for r in found}
    assert canon == got


def test_budget():
    with pytest.raises(BoundsTooLarge):
        list(enumerate_admissible(3, 6, 8, 6, node_budget=100))
    with pytest.raises(ValueError):
        list(enumerate_admissible(0, 0, 1, 0))


def test_three_omitted_genus_one_rigid(small_records):
    rigid = [r for r in small_records if r.ell == 3 and r.genus == 1]
    assert rigid
    for r in rigid:
        c = omitted_value_consequences(r)
        assert len(c.rigidity) == 6 and all(i.holds for i in c.rigidity)


# --- classification ------------------------------------------------------

def test_classify_examples():
    one = rec(0, [(3, 0, "missed:1")], 0, 1)
    assert classify_covering(one).kind == "SphereMinusPoint"
    assert classify_covering(CATENOID).kind == "CoveringOfTwicePuncturedSphere"
    torus = rec(1, [(1, 0, "missed:1"), (1, 0, "missed:2")], 0, 1)
    c = classify_covering(torus)
    assert c.kind == "Infeasible" and (c.euler_lhs, c.euler_rhs) == (0, 2)
    with pytest.raises(PreconditionViolated):
        classify_covering(rec(0, [(1, 0, "missed:1")], 1, 1))


def test_classification_agrees_with_enumerator(small_records):
    for r in filter(is_unbranched_covering, small_records):
        if r.ell == 1:
            assert (r.genus, len(r.ends), r.degree) == (0, 1, 1)
        if r.ell == 2:
            assert r.genus == 0 and len(r.ends) == 2
        assert classify_covering(r).kind != "Infeasible"


# --- bending -------------------------------------------------------------

def test_bend_examples():
    b = bend(CATENOID, "missed:1", "y")
    assert b.ell == 2 and set(b.missed) == {"2", "y"}
    assert bend(b, "missed:y", "1") == CATENOID
    r = rec(0, [(1, 0, "missed:1"), (1, 0, "missed:1"), (1, 0, "regular:a"), (1, 0, "missed:2"),
                (1, 0, "missed:2")], 3, 2)
    out = bend(r, "regular:a", "b")
    assert out.missed == r.missed and "regular:b" in out.classes()
    with pytest.raises(UnknownValueClass):
        bend(CATENOID, "missed:9", "y")
    with pytest.raises(PreconditionViolated):
        bend(CATENOID, "missed:1", "2")


@settings(max_examples=200)
@given(st.data())
def test_bend_invariance(small_records, data):
    r = data.draw(st.sampled_from(small_records))
    cls = data.draw(st.sampled_from(sorted(r.classes())))
    out = bend(r, cls, "fresh")
    assert out.ell == r.ell
    assert [(e.index, e.branch_order) for e in out.ends] == [(e.index, e.branch_order) for e in r.ends]
    assert [x.verdict for x in check_all(out)] == [x.verdict for x in check_all(r)]


# --- obstructions --------------------------------------------------------

def test_obstruct_all_three_missed(small_records):
    three = [r for r in small_records if r.ell == 3]
    assert three
    for r in three:
        rep = obstruct_three_missed(r)
        assert rep.rejected
        if rep.exit == "MissedValueContradiction":
            assert rep.missed_after_lift == 6 and rep.lifted.degree == Fraction(r.degree, 4)
            assert not rep.lifted_check.identity("#Y <= 3").holds
        else:
            assert not rep.divisibility


def test_obstruct_divisible_record_gives_six_missed():
    ends = [(1, 2, f"missed:{y}") for y in "123"]
    r = rec(1, ends, 0, 3)
    rep = obstruct_three_missed(r)
    assert rep.exit == "MissedValueContradiction" and rep.missed_after_lift == 6


def test_obstruct_precondition():
    with pytest.raises(PreconditionViolated):
        obstruct_three_missed(CATENOID)


def test_no_extension_catenoid():
    for w in ("w", "5", "aux"):
        rep = no_extension_two_missed(CATENOID, w)
        assert rep.exit == "NoC0Extension" and not rep.divisibility


def test_no_extension_divisible_gives_four_missed():
    r = rec(1, [(1, 2, "missed:1"), (1, 2, "missed:2"), (1, 2, "regular:w")], 0, 3)
    assert all(x.verdict for x in check_all(r))
    rep = no_extension_two_missed(r, "w")
    assert rep.exit == "MissedValueContradiction" and rep.missed_after_lift == 4
    assert not rep.lifted_check.verdict


def test_no_extension_precondition():
    with pytest.raises(PreconditionViolated):
        no_extension_two_missed(rec(0, [(3, 0, "missed:1")], 0, 1), "w")
