"""Transparent bent-pipe relay: gateway frequency conversion and analog repeat.

A carrier moving from the n256 side to Ku is converted "up" through the
stages of the gateway on the chosen path ("service" for the UE side,
"feeder" for the gNB side); Ku to n256 is "down". The satellite adds one
more translation between its Ku receive and transmit bands.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from .constants import KU_BAND_HZ, N256_DL_HZ, N256_UL_HZ

PATHS = ("service", "feeder", "satellite")
DIRECTIONS = ("up", "down")


class CarrierOutOfBand(ValueError):
    pass


@dataclass(frozen=True)
class ConverterStage:
    lo_hz: float
    lo_error_hz: float = 0.0
    lo_error_bound_hz: float = 0.0
    lo_error_min_hz: float = 0.0
    path: str = "service"
    direction: str = "up"
    name: str = ""

    def __post_init__(self):
        if self.path not in PATHS:
            raise ValueError(f"unknown path {self.path!r}")
        if self.direction not in DIRECTIONS:
            raise ValueError(f"unknown direction {self.direction!r}")
        if self.lo_error_bound_hz < 0 or not 0 <= self.lo_error_min_hz <= self.lo_error_bound_hz:
            raise ValueError("need 0 <= lo_error_min_hz <= lo_error_bound_hz")


@dataclass(frozen=True)
class FrequencyPlan:
    ue_ul_hz: float
    ue_dl_hz: float
    feeder_ul_hz: float
    feeder_dl_hz: float
    converter_stages: tuple = ()

    def __post_init__(self):
        if not N256_UL_HZ[0] <= self.ue_ul_hz <= N256_UL_HZ[1]:
            raise CarrierOutOfBand(f"ue_ul_hz {self.ue_ul_hz} outside n256 uplink")
        if not N256_DL_HZ[0] <= self.ue_dl_hz <= N256_DL_HZ[1]:
            raise CarrierOutOfBand(f"ue_dl_hz {self.ue_dl_hz} outside n256 downlink")
        for name in ("feeder_ul_hz", "feeder_dl_hz"):
            if not KU_BAND_HZ[0] <= getattr(self, name) <= KU_BAND_HZ[1]:
                raise CarrierOutOfBand(f"{name} outside Ku band")
        object.__setattr__(self, "converter_stages", tuple(self.converter_stages))
        for path in ("service", "feeder"):
            for direction in DIRECTIONS:
                if not self.stages(path, direction):
                    raise ValueError(f"no converter stage for {path}/{direction}")

    def stages(self, path: str, direction: str) -> list:
        return [s for s in self.converter_stages if s.path == path and s.direction == direction]

    def with_errors(self, errors: Sequence[float]) -> "FrequencyPlan":
        stages = tuple(replace(s, lo_error_hz=float(e)) for s, e in zip(self.converter_stages, errors))
        return replace(self, converter_stages=stages)


@dataclass(frozen=True)
class RelayPathState:
    one_way_delay_s: float
    cumulative_offset_hz: float = 0.0
    gain_db: float = 0.0

    def __post_init__(self):
        if self.one_way_delay_s < 0:
            raise ValueError("delay must be non-negative")

    def then(self, other: "RelayPathState") -> "RelayPathState":
        return RelayPathState(self.one_way_delay_s + other.one_way_delay_s,
                              self.cumulative_offset_hz + other.cumulative_offset_hz,
                              self.gain_db + other.gain_db)


@dataclass(frozen=True)
class Transmission:
    t_s: float
    carrier_hz: float
    power_dbw: float = 0.0
    payload: bytes = b""
    meta: dict = field(default_factory=dict, compare=False)


def _in_n256(f: float) -> bool:
    return N256_UL_HZ[0] <= f <= N256_UL_HZ[1] or N256_DL_HZ[0] <= f <= N256_DL_HZ[1]


def _in_ku(f: float) -> bool:
    return KU_BAND_HZ[0] <= f <= KU_BAND_HZ[1]


def convert(plan: FrequencyPlan, carrier_hz: float, direction: str, path: str) -> float:
    """Translate a carrier through every stage of one gateway path."""
    if direction not in DIRECTIONS:
        raise ValueError(f"unknown direction {direction!r}")
    if path == "satellite":
        if not _in_ku(carrier_hz):
            raise CarrierOutOfBand(f"{carrier_hz} Hz not in Ku band")
    elif direction == "up" and not _in_n256(carrier_hz):
        raise CarrierOutOfBand(f"{carrier_hz} Hz not in n256 for up-conversion")
    elif direction == "down" and not _in_ku(carrier_hz):
        raise CarrierOutOfBand(f"{carrier_hz} Hz not in Ku band for down-conversion")
    shift = sum(s.lo_hz + s.lo_error_hz for s in plan.stages(path, direction))
    return carrier_hz + shift if direction == "up" else carrier_hz - shift


def path_error_hz(plan: FrequencyPlan, legs) -> float:
    """Signed carrier error accumulated over (path, direction) legs.

    Errors ride on the LO, so a down-converting stage subtracts its error.
    """
    total = 0.0
    for path, direction in legs:
        sign = 1.0 if direction == "up" else -1.0
        total += sign * sum(s.lo_error_hz for s in plan.stages(path, direction))
    return total


UPLINK_LEGS = (("service", "up"), ("satellite", "down"), ("feeder", "down"))
DOWNLINK_LEGS = (("feeder", "up"), ("satellite", "down"), ("service", "down"))


def uplink_chain(plan: FrequencyPlan, ue_carrier_hz: float) -> float:
    """UE transmit carrier as it arrives at the gNB receive port."""
    f = ue_carrier_hz
    for path, direction in UPLINK_LEGS:
        f = convert(plan, f, direction, path)
    return f


def downlink_chain(plan: FrequencyPlan, gnb_carrier_hz: float) -> float:
    f = gnb_carrier_hz
    for path, direction in DOWNLINK_LEGS:
        f = convert(plan, f, direction, path)
    return f


def sample_stage_errors(stages: Sequence[ConverterStage], rng: np.random.Generator) -> list:
    """One signed LO error per stage: magnitude uniform in [min, bound], random sign."""
    errors = []
    for s in stages:
        mag = rng.uniform(s.lo_error_min_hz, s.lo_error_bound_hz)
        sign = 1.0 if rng.random() < 0.5 else -1.0
        errors.append(sign * mag)
    return errors


def sample_cascade_error(stages: Sequence[ConverterStage], rng_seed) -> float:
    rng = rng_seed if isinstance(rng_seed, np.random.Generator) else np.random.default_rng(rng_seed)
    return float(sum(sample_stage_errors(stages, rng)))


def relay_event(state: RelayPathState, event: Transmission) -> Transmission:
    """Repeat a transmission unchanged apart from time, carrier and power."""
    return replace(event,
                   t_s=event.t_s + state.one_way_delay_s,
                   carrier_hz=event.carrier_hz + state.cumulative_offset_hz,
                   power_dbw=event.power_dbw + state.gain_db)
