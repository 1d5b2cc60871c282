import json

import jsonschema
import pytest
import yaml
from hypothesis import given, settings, strategies as st

from ntnsim.scenario import (
    SCENARIO_DIR, MissingField, OutOfRange, ScenarioError, UnknownKey, builtin_scenarios,
    dumps_scenario, load_builtin, loads_scenario, schema_json, scenario_from_dict, scenario_to_dict,
)

BUILTINS = ["freq_fault", "geo_default", "geo_ideal"]


def default_text():
    return (SCENARIO_DIR / "geo_default.yaml").read_text()


def test_builtins_listed():
    assert builtin_scenarios() == BUILTINS


def test_default_echoes_rf_table():
    cfg = load_builtin("geo_default")
    assert cfg.rf.satellite.eirp_dbw == 54.0
    assert cfg.rf.satellite.g_over_t_dbk == 6.5
    assert (cfg.rf.gnb_gateway.eirp_dbw, cfg.rf.gnb_gateway.g_over_t_dbk) == (75.0, 30.0)
    assert (cfg.rf.ue_gateway.eirp_dbw, cfg.rf.ue_gateway.g_over_t_dbk) == (55.0, 16.5)
    assert cfg.carrier.bandwidth_hz == 5e6
    assert cfg.sites.illustrative is True


def test_ul_outside_band_names_field_and_line():
    text = default_text().replace("ue_ul_hz: 1995.0e+6", "ue_ul_hz: 2500.0e+6")
    with pytest.raises(OutOfRange) as exc:
        loads_scenario(text)
    assert exc.value.field == "frequency_plan.ue_ul_hz"
    line = next(i for i, ln in enumerate(text.splitlines(), 1) if "ue_ul_hz" in ln)
    assert exc.value.line == line


def test_misspelled_key():
    text = default_text().replace("ping_interval_s:", "ping_intreval_s:")
    with pytest.raises(UnknownKey) as exc:
        loads_scenario(text)
    assert "ping_intreval_s" in str(exc.value)


def test_missing_required():
    data = yaml.safe_load(default_text())
    del data["rf"]["satellite"]
    with pytest.raises(MissingField) as exc:
        scenario_from_dict(data)
    assert exc.value.field == "rf.satellite"


def test_validity_not_in_enumeration():
    with pytest.raises(OutOfRange):
        loads_scenario(default_text().replace("sib19_validity_s: 240", "sib19_validity_s: 7"))


def test_ku_carrier_must_match_converter_chain():
    with pytest.raises(OutOfRange) as exc:
        loads_scenario(default_text().replace("feeder_ul_hz: 14.25e+9", "feeder_ul_hz: 14.0e+9"))
    assert exc.value.field == "frequency_plan.feeder_ul_hz"


def test_lo_error_floor_above_bound():
    data = yaml.safe_load(default_text())
    data["frequency_plan"]["stages"][0]["lo_error_min_hz"] = 900.0
    with pytest.raises(OutOfRange):
        scenario_from_dict(data)


def test_type_errors():
    with pytest.raises(OutOfRange):
        loads_scenario(default_text().replace("process_count: 16", "process_count: sixteen"))
    with pytest.raises(ScenarioError):
        loads_scenario("::: not yaml :::\n  - [")
    with pytest.raises(ScenarioError):
        loads_scenario("- a list\n")


def test_unsigned_exponent_is_accepted():
    cfg = loads_scenario(default_text().replace("ue_ul_hz: 1995.0e+6", "ue_ul_hz: 1995.0e6"))
    assert cfg.frequency_plan.ue_ul_hz == 1995.0e6


@pytest.mark.parametrize("name", BUILTINS)
def test_roundtrip_identity(name):
    cfg = load_builtin(name)
    assert loads_scenario(dumps_scenario(cfg)) == cfg
    assert scenario_from_dict(scenario_to_dict(cfg)) == cfg


@settings(max_examples=50)
@given(st.integers(0, 2**63 - 1), st.floats(0.0, 0.99), st.integers(1, 32), st.floats(-60, 60))
def test_roundtrip_property(seed, bler, procs, lat):
    data = yaml.safe_load(default_text())
    data["seed"] = seed
    data["harq"]["ul_bler"] = bler
    data["harq"]["process_count"] = procs
    data["sites"]["ue"]["latitude_deg"] = lat
    cfg = scenario_from_dict(data)
    assert loads_scenario(dumps_scenario(cfg)) == cfg


def test_published_schema_current_and_valid():
    shipped = (SCENARIO_DIR / "schema.json").read_text()
    assert shipped == schema_json()
    schema = json.loads(shipped)
    jsonschema.Draft202012Validator.check_schema(schema)
    for name in BUILTINS:
        jsonschema.validate(yaml.safe_load((SCENARIO_DIR / f"{name}.yaml").read_text()), schema)
    props = schema["properties"]["frequency_plan"]["properties"]["ue_ul_hz"]
    assert (props["minimum"], props["maximum"], props["x-unit"]) == (1980e6, 2010e6, "Hz")
