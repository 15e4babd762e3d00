"""Command-line surface: subcommands, exit codes, and output formats."""

import json

import numpy as np
import pytest

from liestab.algebra_core import algebra_to_dict, load_algebra
from liestab.catalog import builtin_catalog, get_entry
from liestab.cli import main


@pytest.fixture
def hyp3(tmp_path):
    path = tmp_path / "hyp3.json"
    path.write_text(json.dumps(algebra_to_dict(get_entry("hyperbolic-3d").algebra)))
    return str(path)


def test_validate_passes_and_fails(tmp_path, hyp3, capsys):
    assert main(["validate", hyp3]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["passed"]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"dim": 3, "brackets": [
        {"i": 1, "j": 2, "coeffs": [0, 0, 1]},
        {"i": 1, "j": 3, "coeffs": [1, 0, 0]}]}))
    assert main(["validate", str(bad)]) == 2


def test_classify_stable_point_with_negative_coordinate(hyp3, capsys):
    assert main(["classify", hyp3, "--point", "-1,0,0"]) == 0
    verdict = json.loads(capsys.readouterr().out)
    assert verdict["status"] == "Stable"
    assert verdict["rule"] == "T1.ii"


def test_classify_exit_codes(tmp_path, hyp3, capsys):
    assert main(["classify", hyp3, "--point", "0,1,0"]) == 4  # not stationary
    nu = tmp_path / "nu.json"
    nu.write_text(json.dumps(algebra_to_dict(get_entry("nonunimodular-4d").algebra)))
    assert main(["classify", str(nu), "--point", "1,0,0,0"]) == 3
    capsys.readouterr()


def test_classify_emit_normal_form(hyp3, capsys):
    assert main(["classify", hyp3, "--point", "-1,0,0", "--emit", "normal-form"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["normal_form"]["case"] == "3d-non-unimodular"
    assert payload["normal_form"]["axis"] == [1.0, 0.0, 0.0]


def test_parse_errors_exit_2(hyp3, capsys):
    assert main(["classify", hyp3, "--point", "1,0"]) == 2  # wrong length
    assert main(["classify", hyp3, "--point", "a,b,c"]) == 2
    capsys.readouterr()


def test_stationary_csv(hyp3, capsys):
    assert main(["stationary", hyp3, "--samples", "3"]) == 0
    lines = capsys.readouterr().out.strip().split("\n")
    assert lines[0] == "family,x1,x2,x3"
    assert len(lines) > 1
    for line in lines[1:]:
        fields = line.split(",")
        assert fields[0] in {"Axis", "Subspace", "Cone", "MuCurve", "WholeSpace"}
        np.array([float(v) for v in fields[1:]])


def test_simulate_writes_trajectory_csv(tmp_path, hyp3):
    out = tmp_path / "traj.csv"
    assert main(["simulate", hyp3, "--y0", "0.1,0.2,0.3", "--t", "0.1",
                 "--out", str(out)]) == 0
    lines = out.read_text().strip().split("\n")
    assert lines[0] == "t,y1,y2,y3,I0"
    first = [float(v) for v in lines[1].split(",")]
    assert first[1:4] == [0.1, 0.2, 0.3]  # 17 significant digits round trip


def test_probe_json(hyp3, capsys):
    assert main(["probe", hyp3, "--point", "-1,0,0", "--eps", "1e-2",
                 "--trials", "4"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["verdict"] == "EmpStable"
    assert set(report) >= {"point", "epsilons", "max_deviation", "verdict",
                           "worst_direction"}


def test_suite_single_criterion(capsys):
    assert main(["suite", "--criteria", "1"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("PASS")


def test_catalog_round_trip(tmp_path, capsys):
    assert main(["catalog"]) == 0
    listing = capsys.readouterr().out
    assert "centerless-4d" in listing
    for entry in builtin_catalog():
        out = tmp_path / f"{entry.name}.json"
        assert main(["catalog", "--dump", entry.name, "--out", str(out)]) == 0
        back = load_algebra(str(out))
        assert np.array_equal(back.c, entry.algebra.c)
        assert np.array_equal(back.gram, entry.algebra.gram)
