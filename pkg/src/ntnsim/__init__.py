"""Discrete-event simulator for a 5G NR non-terrestrial link over a transparent GEO relay."""

__version__ = "0.1.0"

from .geometry import GroundPosition, geo_satellite_ephemeris, look_angles, slant_range
from .linkphy import CarrierConfig, MCS_TABLE_QAM64, select_mcs, transport_block_bits
from .scenario import ScenarioConfig, load_builtin, parse_scenario
from .sib19 import Sib19Message, decode, encode
from .sim import Simulation, run_scenario
from .timing import TimingAdvanceComponents, total_timing_advance

__all__ = [
    "CarrierConfig", "GroundPosition", "MCS_TABLE_QAM64", "ScenarioConfig", "Sib19Message",
    "Simulation", "TimingAdvanceComponents", "decode", "encode", "geo_satellite_ephemeris",
    "load_builtin", "look_angles", "parse_scenario", "run_scenario", "select_mcs",
    "slant_range", "total_timing_advance", "transport_block_bits",
]
