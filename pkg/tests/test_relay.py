import numpy as np
import pytest
from hypothesis import given, strategies as st

from ntnsim.relay import (
    UPLINK_LEGS, CarrierOutOfBand, ConverterStage, FrequencyPlan, RelayPathState, Transmission,
    convert, downlink_chain, path_error_hz, relay_event, sample_cascade_error, sample_stage_errors,
    uplink_chain,
)
from ntnsim.budget import link_geometry
from ntnsim.geometry import propagation_delay


def plan(errors=None):
    stages = (
        ConverterStage(12.0e9, path="feeder", direction="up"),
        ConverterStage(10.6e9, path="feeder", direction="down"),
        ConverterStage(1.7e9, path="satellite", direction="down"),
        ConverterStage(10.4e9, path="service", direction="down"),
        ConverterStage(12.3e9, path="service", direction="up"),
    )
    p = FrequencyPlan(1.995e9, 2.185e9, 14.185e9, 12.595e9, stages)
    return p.with_errors(errors) if errors else p


def test_convert_basic_and_inverse():
    p = FrequencyPlan(2.0e9, 2.18e9, 14.18e9, 12.6e9, (
        ConverterStage(12.0e9, path="service", direction="up"),
        ConverterStage(12.0e9, path="service", direction="down"),
        ConverterStage(12.18e9, path="feeder", direction="up"),
        ConverterStage(10.6e9, path="feeder", direction="down"),
    ))
    assert convert(p, 2.0e9, "up", "service") == 14.0e9
    assert convert(p, convert(p, 2.0e9, "up", "service"), "down", "service") == 2.0e9


def test_two_stage_errors_accumulate():
    stages = (
        ConverterStage(6.0e9, 2500.0, path="service", direction="up"),
        ConverterStage(6.0e9, 1800.0, path="service", direction="up"),
        ConverterStage(10.0e9, path="service", direction="down"),
        ConverterStage(12.0e9, path="feeder", direction="up"),
        ConverterStage(10.0e9, path="feeder", direction="down"),
    )
    p = FrequencyPlan(2.0e9, 2.18e9, 14.18e9, 12.6e9, stages)
    assert convert(p, 2.0e9, "up", "service") - 14.0e9 == pytest.approx(4300.0, abs=1e-3)
    assert path_error_hz(p, [("service", "up")]) == 4300.0


def test_band_checks():
    with pytest.raises(CarrierOutOfBand):
        FrequencyPlan(2.5e9, 2.185e9, 14.185e9, 12.595e9, plan().converter_stages)
    with pytest.raises(CarrierOutOfBand):
        convert(plan(), 3.0e9, "up", "service")


def test_chains_with_zero_error_hit_nominal_carriers():
    p = plan()
    assert uplink_chain(p, 1.995e9) == pytest.approx(1.995e9 + 12.3e9 - 1.7e9 - 10.6e9, abs=1e-3)
    assert downlink_chain(p, 2.185e9) == pytest.approx(2.185e9 + 12.0e9 - 1.7e9 - 10.4e9, abs=1e-3)


@given(st.lists(st.floats(-5000, 5000), min_size=5, max_size=5))
def test_uplink_chain_error_equals_leg_sum(errs):
    p0, p = plan(), plan(errs)
    delta = uplink_chain(p, 1.995e9) - uplink_chain(p0, 1.995e9)
    assert delta == pytest.approx(path_error_hz(p, UPLINK_LEGS), abs=1e-3)


def test_cascade_sampling_bounds():
    zero = [ConverterStage(1e9), ConverterStage(1e9)]
    assert sample_cascade_error(zero, 1) == 0.0
    three = [ConverterStage(1e9, lo_error_bound_hz=3000.0)] * 2
    for seed in range(200):
        assert abs(sample_cascade_error(three, seed)) <= 6000.0
    floor = ConverterStage(1e9, lo_error_bound_hz=5000.0, lo_error_min_hz=3000.0)
    errs = sample_stage_errors([floor] * 500, np.random.default_rng(3))
    assert all(3000.0 <= abs(e) <= 5000.0 for e in errs)
    assert any(e < 0 for e in errs) and any(e > 0 for e in errs)


def test_default_scenario_residual_concentrated_3_to_6_khz(default_cfg):
    from ntnsim.sim import Simulation
    mags = np.array([abs(Simulation(default_cfg, seed).ul_freq_error_hz) for seed in range(300)])
    inside = np.mean((mags >= 3000) & (mags <= 6000))
    assert inside >= 0.9
    assert mags.max() <= 6000.0


def test_relay_event():
    ev = Transmission(1.0, 2.0e9, -10.0, b"\x01\x02payload")
    out = relay_event(RelayPathState(0.12), ev)
    assert out.t_s == pytest.approx(1.12) and out.payload == ev.payload and out.carrier_hz == ev.carrier_hz


def test_relay_chain_delay_additive(default_cfg):
    g = link_geometry(default_cfg)
    service = RelayPathState(propagation_delay(g.service_range_m), 120.0)
    feeder = RelayPathState(propagation_delay(g.feeder_range_m), -40.0)
    ev = Transmission(5.0, 1.995e9, payload=b"abc")
    chained = relay_event(feeder, relay_event(service, ev))
    assert chained.t_s - 5.0 == pytest.approx(g.service_delay_s + g.feeder_delay_s, abs=1e-12)
    assert chained == relay_event(service.then(feeder), ev)
    assert chained.payload == b"abc"
