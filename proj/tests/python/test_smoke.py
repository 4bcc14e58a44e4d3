import json
import os
import subprocess

import pytest

import nckey


def test_linear_algebra():
    assert nckey.rank([[1, 2], [2, 4]], 5) == 1
    reduced, rank, pivots = nckey.rref([[1, 2], [2, 4]], 5)
    assert reduced == [[1, 2], [0, 0]] and rank == 1 and pivots == [0]
    assert nckey.gaussian_binomial(4, 2, 2) == "35"
    assert nckey.xi(2, 1, 2) == "3"


def test_bounds():
    assert nckey.upper_bound(2, 70, 60, [15, 15], 10) == "675"
    assert nckey.two_terminal_rate(2, 8, 4, 2, 1) == "10"
    assert nckey.three_terminal_rate(2, 70, 60, 45, 0) == "45"
    value, theta = nckey.solve_theta_lp(6, [4, 4], 2)
    assert value == "3"
    assert theta == {"{1}": "1", "{2}": "1", "{1,2}": "2"}
    assert nckey.plan_dimensions(4, [2], 1) == {"{1}": 2}


def test_contract_violation_maps_to_value_error():
    with pytest.raises(ValueError):
        nckey.rank([[1]], 4)


def test_session_and_replay():
    doc = nckey.run_session_json(101, 10, 6, [4, 4], 2, slots=2, seed=3)
    parsed = json.loads(doc)
    assert parsed["schema_version"] == 1
    assert not parsed["audit"]["degenerate"]
    keys = nckey.replay_terminal_keys(doc)
    alice = parsed["keys"]["alice_key"]
    flat = [v for row in keys[0] for v in row]
    assert keys[0] == keys[1] and flat == alice["entries"]


def test_oracle():
    rep = nckey.cmi_oracle(2, 3, 2, 1, 1)
    assert rep["bound_coefficient"] == "1"
    assert 0 < rep["best_fixed_dimension"] <= 1


def test_run_command_matches_cli():
    cfg = {"q": 2, "ell": 70, "na": 60, "n": [15, 15], "sweep": "ne:0:60", "seed": 1}
    text = nckey.run_command("bounds", json.dumps(cfg))
    assert len([l for l in text.splitlines() if not l.startswith("#")]) == 62
    cli = os.environ.get("NCKEY_CLI")
    if cli:
        out = subprocess.run(
            [cli, "bounds", "--q", "2", "--ell", "70", "--na", "60", "--n", "15,15", "--sweep", "ne:0:60", "--seed", "1"],
            check=True, capture_output=True, text=True).stdout
        assert out == text
