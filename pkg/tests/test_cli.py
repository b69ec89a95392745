import json

import pytest

from ramify.cli import main

CATENOID = json.dumps({"genus": 0, "degree": 1, "interior_beta": 0, "missed": ["1", "2"],
                       "ends": [{"index": 1, "beta": 0, "class": "missed:1"},
                                {"index": 1, "beta": 0, "class": "missed:2"}]})


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def test_analyze_map(capsys):
    code, out, _ = run(capsys, "analyze-map", "--map", "(z-1)^3*(z+3)/z", "--over", "0;16;inf", "--fiber", "16")
    assert code == 0
    assert out["degree"] == 4 and out["riemann_hurwitz"]["holds"]
    assert out["passport_branching"] == 6 and len(out["fiber"]) == 2


def test_construct_picard(capsys):
    code, out, _ = run(capsys, "construct-picard", "--w", "16")
    assert code == 0 and out["exact"] and out["total_branching"] == 6
    assert out["converse"]["derived_holds"] and not out["converse"]["printed_holds"]
    code, out, _ = run(capsys, "construct-picard", "--targets", "1;i;-1")
    assert code == 0 and out["converse_verdict"] == "CONSISTENT"


def test_construct_picard_usage(capsys):
    code, _, err = run(capsys, "construct-picard")
    assert code == 2 and "ValueError" in err
    code, _, err = run(capsys, "construct-picard", "--w", "0")
    assert code == 2 and "DegenerateW" in err


def test_monodromy_deterministic(capsys):
    args = ("--seed", "3", "monodromy", "--map", "(z-1)^3*(z+3)/z", "--punctures", "0;16;inf")
    code, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert code == 0 and a == b
    assert all(p["cycle_type"] == [3, 1] for p in a["permutations"])
    assert a["relation_holds"] and a["transitive"]


def test_check_lift(capsys):
    code, out, _ = run(capsys, "check-lift", "--beta-f", "2", "--beta-F", "5")
    assert code == 0 and out["k"] == 2 and out["beta_lift"] == 1
    code, out, _ = run(capsys, "check-lift", "--beta-f", "2", "--beta-F", "3")
    assert code == 1 and not out["liftable"]


def test_check_lift_passport(capsys, tmp_path):
    _, pic, _ = run(capsys, "construct-picard", "--w", "16")
    pp = tmp_path / "pp.json"
    pp.write_text(json.dumps(pic["passport"]))
    ends = json.dumps([{"value": {"re": "0/1", "im": "0/1"}, "betas": [2]}])
    code, out, _ = run(capsys, "check-lift", "--passport", str(pp), "--ends", ends, "--forced-ramified")
    assert code == 0 and out["verdict"] == "FEASIBLE"
    ends = json.dumps([{"value": {"re": "0/1", "im": "0/1"}, "betas": [1]}])
    code, out, _ = run(capsys, "check-lift", "--passport", str(pp), "--ends", ends, "--forced-ramified")
    assert code == 1 and out["verdict"] == "INFEASIBLE"


def test_fgt_check_and_classify(capsys):
    code, out, _ = run(capsys, "fgt", "check", CATENOID)
    assert code == 0 and out["consequences"]["verdict"]
    code, out, _ = run(capsys, "fgt", "classify", CATENOID)
    assert code == 0 and out["classification"]["kind"] == "CoveringOfTwicePuncturedSphere"
    bad = json.loads(CATENOID)
    bad["degree"] = 2
    code, out, _ = run(capsys, "fgt", "check", json.dumps(bad))
    assert code == 1


def test_fgt_enumerate_filter(capsys):
    code, out, _ = run(capsys, "fgt", "enumerate", "--g-max", "1", "--n-max", "3", "--m-max", "4",
                       "--b-max", "2", "--filter", "l=3")
    assert code == 0 and out["count"] == len(out["records"]) > 0
    assert all(len(r["missed"]) == 3 for r in out["records"])
    code, _, err = run(capsys, "fgt", "enumerate", "--g-max", "3", "--n-max", "6", "--m-max", "8",
                       "--b-max", "6", "--node-budget", "10")
    assert code == 2 and "BoundsTooLarge" in err


def test_fgt_obstruct_bend_no_extension(capsys, tmp_path):
    code, _, err = run(capsys, "fgt", "obstruct", CATENOID)
    assert code == 2 and "PreconditionViolated" in err
    code, out, _ = run(capsys, "fgt", "no-extension", CATENOID, "--w", "7")
    assert code == 0 and out["obstruction"]["exit"] == "NoC0Extension"
    f = tmp_path / "cat.json"
    f.write_text(CATENOID)
    code, out, _ = run(capsys, "fgt", "bend", str(f), "--from", "missed:1", "--to", "y")
    assert code == 0 and sorted(out["record"]["missed"]) == ["2", "y"]
    three = {"genus": 1, "degree": 3, "interior_beta": 0, "missed": ["1", "2", "3"],
             "ends": [{"index": 1, "beta": 2, "class": f"missed:{y}"} for y in "123"]}
    code, out, _ = run(capsys, "fgt", "obstruct", json.dumps(three))
    assert code == 0 and out["obstruction"]["missed_after_lift"] == 6


def test_bad_input(capsys):
    code, _, err = run(capsys, "analyze-map", "--map", "z^z")
    assert code == 2
    code, _, err = run(capsys, "fgt", "check", "/nonexistent.json")
    assert code == 2
    with pytest.raises(SystemExit):
        main(["no-such-command"])
