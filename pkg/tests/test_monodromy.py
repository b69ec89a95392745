import time

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ramify.monodromy import (choose_base, compose, cycle_type, cycles, monodromy_rep, orbit,
                              regularity_probe, surjectivity_criterion, track_fiber)
from ramify.picard import construct
from ramify.polynomial import Polynomial
from ramify.rational_map import RationalMap, branch_values, degree, passport_over
from ramify.sphere import INF, pt, same_point

z = Polynomial.z()


def _inverse(p):
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def test_permutation_helpers():
    assert cycles((1, 2, 0, 3)) == [(0, 1, 2), (3,)]
    assert cycle_type((1, 2, 0, 3)) == (3, 1)
    assert compose((1, 0, 2), (0, 2, 1), n=3) != tuple(range(3))
    assert orbit([(1, 0, 2, 3), (0, 1, 3, 2)]) == {0, 1}


def test_square_swaps_sheets():
    f = RationalMap(z ** 2)
    rep = monodromy_rep(f, [0, INF], base=1)
    assert rep.perm(0) == (1, 0) and rep.perm(INF) == (1, 0)
    assert rep.relation_holds and rep.transitive


def test_constant_path_is_identity():
    f = RationalMap(z ** 2)
    start = [pt(1), pt(-1)]
    end = track_fiber(f, [1, 1, 1], start)
    assert all(same_point(a, b) for a, b in zip(start, end))


def test_cube_loops_are_inverse():
    rep = monodromy_rep(RationalMap(z ** 3), [0, INF], base=1)
    a, b = rep.perm(0), rep.perm(INF)
    assert cycle_type(a) == cycle_type(b) == (3,)
    assert b == _inverse(a)


def test_w16_monodromy():
    t = time.perf_counter()
    f = construct(16).map
    rep = monodromy_rep(f, [0, 16, INF])
    assert all(cycle_type(rep.perm(y)) == (3, 1) for y in (0, 16, INF))
    assert rep.relation_holds and rep.transitive and rep.degree == 4
    assert time.perf_counter() - t < 5


@pytest.mark.parametrize("scale", [0.15, 0.6])
def test_w16_radius_stability(scale):
    f = construct(16).map
    ref = monodromy_rep(f, [0, 16, INF])
    rep = monodromy_rep(f, [0, 16, INF], base=ref.base, radius_scale=scale)
    assert rep.ordered_perms() == ref.ordered_perms()


@settings(max_examples=10)
@given(st.complex_numbers(min_magnitude=0.1, max_magnitude=100, allow_nan=False, allow_infinity=False))
def test_random_w_monodromy(w):
    cfg = construct(w)
    rep = monodromy_rep(cfg.map.to_complex(), [0, w, INF])
    assert rep.relation_holds and rep.transitive and rep.cycle_types_match


def _random_map(rng):
    while True:
        dn, dd = (int(v) for v in rng.integers(0, 6, 2))
        num = Polynomial([complex(*rng.integers(-3, 4, 2)) for _ in range(dn + 1)])
        den = Polynomial([complex(*rng.integers(-3, 4, 2)) for _ in range(dd + 1)])
        if den.is_zero() or num.is_zero():
            continue
        f = RationalMap(num, den)
        if f.raw_degree >= 1:
            return f


@pytest.mark.parametrize("seed", range(20))
def test_random_maps_relation_and_transitivity(seed):
    f = _random_map(np.random.default_rng(seed))
    rep = monodromy_rep(f, branch_values(f))
    assert rep.relation_holds and rep.transitive and rep.cycle_types_match


def test_missing_branch_value_rejected():
    with pytest.raises(ValueError):
        monodromy_rep(RationalMap(z ** 2), [0])


def test_choose_base_avoids_punctures():
    P = [pt(0), pt(1), pt(1j), INF]
    b = choose_base(P)
    assert not b.is_inf and not any(same_point(b, p, 1e-3) for p in P)


def test_surjectivity_criterion():
    assert surjectivity_criterion(construct(16).passport)
    assert not surjectivity_criterion(passport_over(RationalMap(z ** 2), [0, INF]))


def test_regularity_probe():
    f = construct(16).map
    assert regularity_probe(f, [0, 16, INF], trials=50, seed=1).regular
    rep = regularity_probe(RationalMap(z ** 3), [0, INF], trials=30)
    assert rep.regular and rep.degree == 3


def test_regular_puncture_gives_trivial_cycle():
    # a regular value among the punctures has trivial monodromy
    rep = monodromy_rep(RationalMap(z ** 2), [0, 5, INF], base=1)
    assert cycle_type(rep.perm(5)) == (1, 1)
