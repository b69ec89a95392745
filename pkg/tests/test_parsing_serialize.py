import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ramify.fgt import EndRecord, FgtRecord, LiftedRecord, enumerate_admissible
from ramify.parsing import default_backend, parse_map, parse_point, parse_points, parse_scalar
from ramify.picard import construct
from ramify.polynomial import Polynomial
from ramify.rational_map import RationalMap
from ramify.scalars import GaussianRational as Q
from ramify.serialize import (dumps, map_from_json, map_to_json, passport_from_json, passport_to_json,
                              point_from_json, point_to_json, record_from_json, record_to_json)
from ramify.sphere import INF, pt

z = Polynomial.z()


def test_parse_map_exact():
    f = parse_map("(z-1)^3*(z+3)/z", "exact")
    assert f.exact and f == construct(16).map
    assert parse_map("z**2 + 1/2", "exact") == RationalMap(z ** 2 + Q(Fraction(1, 2)))


def test_parse_imaginary_and_decimals():
    assert parse_scalar("2+3i") == Q(2, 3)
    assert parse_scalar("1.5") == Q(Fraction(3, 2))
    assert parse_scalar("1/2i") == Q(0, Fraction(1, 2))
    assert parse_scalar("i^2") == Q(-1)
    assert parse_scalar("2i", "approx") == 2j


def test_parse_points():
    assert parse_points("0; 16 ;inf") == [pt(0), pt(16), INF]
    assert parse_point("oo") is INF or parse_point("oo").is_inf


@pytest.mark.parametrize("bad", ["z^z", "import os", "z^100", "", "foo", "1/0"])
def test_parse_errors(bad):
    with pytest.raises((ValueError, ZeroDivisionError)):
        parse_map(bad)


def test_default_backend(monkeypatch):
    monkeypatch.delenv("RAMIFY_BACKEND", raising=False)
    assert default_backend() == "exact"
    monkeypatch.setenv("RAMIFY_BACKEND", "approx")
    assert not parse_map("z^2").exact
    monkeypatch.setenv("RAMIFY_BACKEND", "bogus")
    with pytest.raises(ValueError):
        default_backend()


@given(st.fractions(), st.fractions())
def test_exact_point_round_trip(a, b):
    p = pt(Q(a, b))
    assert point_from_json(json.loads(json.dumps(point_to_json(p)))) == p


@given(st.complex_numbers(allow_nan=False, allow_infinity=False))
def test_float_point_round_trip(c):
    p = pt(c)
    assert point_from_json(json.loads(json.dumps(point_to_json(p)))).to_complex() == c


def test_infinity_round_trip():
    assert point_from_json(point_to_json(INF)).is_inf


def test_map_and_passport_round_trip():
    cfg = construct(16)
    assert map_from_json(json.loads(json.dumps(map_to_json(cfg.map)))) == cfg.map
    pp = passport_from_json(json.loads(json.dumps(passport_to_json(cfg.passport))))
    assert pp == cfg.passport


def test_record_round_trip():
    for r in list(enumerate_admissible(1, 3, 4, 2))[:200]:
        assert record_from_json(json.loads(json.dumps(record_to_json(r)))) == r
    lifted = LiftedRecord(0, (EndRecord(1, 0),), 0, Fraction(3, 4), ("a@3",))
    back = record_from_json(json.loads(json.dumps(record_to_json(lifted))))
    assert isinstance(back, LiftedRecord) and back == lifted
    whole = LiftedRecord(0, (EndRecord(1, 0),), 0, Fraction(1), ())
    assert isinstance(record_from_json(record_to_json(whole)), LiftedRecord)
    assert isinstance(record_from_json({"genus": 0, "degree": 1, "ends": [{"index": 1, "beta": 0}]}), FgtRecord)


def test_dumps_is_deterministic():
    cfg = construct(16)
    assert dumps(cfg) == dumps(construct(16))
    assert json.loads(dumps(cfg))["x1"] == {"re": "1/1", "im": "0/1"}
