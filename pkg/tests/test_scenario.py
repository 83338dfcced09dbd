"""Scenario files: parsing, validation, canonical serialization, execution."""

import json
from fractions import Fraction

import pytest

from epistrict.scenario import (
    COMPARE_TOL,
    Scenario,
    ScenarioError,
    parse_scenario,
    run_scenario,
    scenario_from_dict,
    scenario_to_dict,
    serialize_scenario,
)


def make(mode="epistricted", **overrides):
    """A small valid single-trit scenario, tweakable per test."""
    data = {
        "field": 3,
        "n": 1,
        "mode": mode,
        "preparation": {"known": [[1, 0]], "valuation": [2, 0]},
        "measurement": {"measured": [[0, 1]]},
    }
    data.update(overrides)
    return data


# ---------------------------------------------------------------------------
# parsing and validation
# ---------------------------------------------------------------------------


def test_minimal_scenario_parses():
    sc = scenario_from_dict(make())
    assert sc.space.d == 3 and sc.space.n == 1
    assert sc.transformation is None
    assert sc.preparation.value_of((1, 0)) == 2


def test_missing_key_is_named():
    data = make()
    del data["measurement"]
    with pytest.raises(ScenarioError, match="measurement"):
        scenario_from_dict(data)


def test_unknown_key_is_named():
    with pytest.raises(ScenarioError, match="frobnicate"):
        scenario_from_dict(make(frobnicate=1))


def test_floats_are_refused():
    data = make()
    data["preparation"]["valuation"] = [0.5, 0]
    with pytest.raises(ScenarioError, match="num/den"):
        scenario_from_dict(data)


def test_booleans_are_refused_as_scalars():
    data = make()
    data["preparation"]["valuation"] = [True, 0]
    with pytest.raises(ScenarioError):
        scenario_from_dict(data)


def test_non_isotropic_preparation_names_the_rows():
    data = make()
    data["preparation"] = {"known": [[1, 0], [0, 1]]}
    with pytest.raises(ScenarioError, match="rows 0 and 1"):
        scenario_from_dict(data)


def test_non_symplectic_transformation_is_rejected():
    data = make(transformation={"S": [[1, 0], [1, 1]], "a": [0, 0]})
    data["transformation"]["S"] = [[1, 1], [1, 1]]
    with pytest.raises(ScenarioError, match="transformation.S"):
        scenario_from_dict(data)


def test_bad_mode_is_rejected():
    with pytest.raises(ScenarioError, match="mode"):
        scenario_from_dict(make(mode="classical"))


def test_quantum_mode_over_rationals_is_rejected():
    data = {
        "field": "rational",
        "n": 1,
        "mode": "quantum",
        "preparation": {"known": [[1, 0]]},
        "measurement": {"measured": [[1, 0]]},
    }
    with pytest.raises(ScenarioError, match="rational"):
        scenario_from_dict(data)


def test_wrong_row_length_is_rejected():
    data = make()
    data["measurement"]["measured"] = [[0, 1, 0]]
    with pytest.raises(ScenarioError, match="measurement.measured"):
        scenario_from_dict(data)


def test_valuation_defaults_to_zero():
    data = make()
    del data["preparation"]["valuation"]
    sc = scenario_from_dict(data)
    assert sc.preparation.value_of((1, 0)) == 0


def test_invalid_json_is_a_scenario_error():
    with pytest.raises(ScenarioError, match="JSON"):
        parse_scenario("{nope")


# ---------------------------------------------------------------------------
# canonical serialization
# ---------------------------------------------------------------------------


def test_parse_serialize_parse_is_a_fixed_point():
    text = json.dumps(make(transformation={"S": [[0, 1], [2, 0]], "a": [1, 2]}))
    once = serialize_scenario(parse_scenario(text))
    twice = serialize_scenario(parse_scenario(once))
    assert once == twice


def test_rational_round_trip_is_a_fixed_point_and_float_free():
    data = {
        "field": "rational",
        "n": 2,
        "mode": "epistricted",
        "preparation": {
            "known": [[1, 0, -1, 0], [0, 1, 0, 1]],
            "valuation": ["2/3", "-5/7", 0, 0],
        },
        "measurement": {"measured": [[0, 1, 0, 1]]},
    }
    once = serialize_scenario(scenario_from_dict(data))
    twice = serialize_scenario(parse_scenario(once))
    assert once == twice
    reparsed = json.loads(once)

    def no_floats(node):
        if isinstance(node, float):
            return False
        if isinstance(node, dict):
            return all(no_floats(v) for v in node.values())
        if isinstance(node, list):
            return all(no_floats(v) for v in node)
        return True

    assert no_floats(reparsed)


def test_equivalent_generating_rows_serialize_identically():
    a = scenario_from_dict(make())
    b = make()
    b["preparation"]["known"] = [[2, 0]]      # same line, different generator
    b["preparation"]["valuation"] = [2, 1]    # same coset representative class
    assert serialize_scenario(a) == serialize_scenario(scenario_from_dict(b))


def test_to_dict_omits_absent_transformation():
    assert "transformation" not in scenario_to_dict(scenario_from_dict(make()))


# ---------------------------------------------------------------------------
# running
# ---------------------------------------------------------------------------


def test_epistricted_run_gives_exact_thirds():
    report = run_scenario(scenario_from_dict(make()))
    assert report["mode"] == "epistricted"
    assert [row["epistricted"] for row in report["outcomes"]] == ["1/3"] * 3
    assert all("quantum" not in row for row in report["outcomes"])


def test_compare_run_agrees_at_d3():
    data = make(mode="compare",
                transformation={"S": [[0, 1], [2, 0]], "a": [1, 1]})
    report = run_scenario(scenario_from_dict(data))
    assert report["verdict"] == "agree"
    assert report["max_difference"] <= COMPARE_TOL
    total = sum(Fraction(row["epistricted"]) for row in report["outcomes"])
    assert total == 1


def test_compare_run_differs_on_the_single_bit_witness():
    data = {
        "field": 2,
        "n": 1,
        "mode": "compare",
        "preparation": {"known": [[1, 1]]},
        "transformation": {"S": [[0, 1], [1, 0]]},
        "measurement": {"measured": [[1, 1]]},
    }
    report = run_scenario(scenario_from_dict(data))
    assert report["verdict"] == "differ"
    assert report["max_difference"] == pytest.approx(1.0)


def test_quantum_run_reports_born_probabilities_only():
    report = run_scenario(scenario_from_dict(make(mode="quantum")))
    assert all("epistricted" not in row for row in report["outcomes"])
    assert sum(row["quantum"] for row in report["outcomes"]) == pytest.approx(1.0)


def test_rational_run_reports_possible_value_sets():
    data = {
        "field": "rational",
        "n": 2,
        "mode": "epistricted",
        "preparation": {
            "known": [[1, 0, -1, 0], [0, 1, 0, 1]],
            "valuation": ["2/3", "-5/7", 0, 0],
        },
        "measurement": {"measured": [[0, 1, 0, 1]]},
    }
    report = run_scenario(scenario_from_dict(data))
    pv = report["possible_values"]
    assert pv["deterministic"] is True
    assert pv["offset"] == ["-5/7"]

    data["measurement"] = {"measured": [[1, 0, 0, 0]]}
    pv = run_scenario(scenario_from_dict(data))["possible_values"]
    assert pv["deterministic"] is False
    assert pv["directions"] == [[1]]
