"""Scenario files: schema, validation and (de)serialisation.

Scenarios are YAML documents. The schema is expressed once, as the
dataclasses below; field metadata carries units and ranges, and
:func:`scenario_schema` renders it as JSON Schema for publication.
"""

import dataclasses
import json
import re
import typing
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional

import yaml


class ScenarioError(ValueError):
    def __init__(self, message: str, field_path: str = "", line: Optional[int] = None):
        where = field_path
        if line is not None:
            where = f"{field_path} (line {line})" if field_path else f"line {line}"
        super().__init__(f"{where}: {message}" if where else message)
        self.field = field_path
        self.line = line


class MissingField(ScenarioError):
    pass


class OutOfRange(ScenarioError):
    pass


class UnknownKey(ScenarioError):
    pass


def _f(default=dataclasses.MISSING, *, unit="", lo=None, hi=None, choices=None, doc="",
       factory=dataclasses.MISSING, lo_open=False):
    meta = {"unit": unit, "min": lo, "max": hi, "choices": choices, "doc": doc, "lo_open": lo_open}
    if factory is not dataclasses.MISSING:
        return field(default_factory=factory, metadata=meta)
    return field(default=default, metadata=meta)


@dataclass
class Site:
    latitude_deg: float = _f(unit="deg", lo=-90.0, hi=90.0)
    longitude_deg: float = _f(unit="deg", lo=-180.0, hi=179.999999999)
    altitude_m: float = _f(0.0, unit="m", lo=-500.0)


@dataclass
class Sites:
    gnb: Site = _f(doc="gNB, co-located core network and its NTN gateway")
    ue: Site = _f(doc="UE emulator and its portable gateway")
    satellite_longitude_deg: float = _f(unit="deg", lo=-180.0, hi=179.999999999)
    earth_radius_m: float = _f(6_371_000.0, unit="m", lo=6.0e6, hi=6.5e6)
    illustrative: bool = _f(True, doc="coordinates are illustrative, not surveyed")


@dataclass
class Stage:
    name: str = _f()
    path: str = _f(choices=["service", "feeder", "satellite"])
    direction: str = _f(choices=["up", "down"])
    lo_hz: float = _f(unit="Hz", lo=0.0)
    lo_error_bound_hz: float = _f(0.0, unit="Hz", lo=0.0)
    lo_error_min_hz: float = _f(0.0, unit="Hz", lo=0.0)


@dataclass
class FrequencyPlanConfig:
    ue_ul_hz: float = _f(unit="Hz", lo=1_980e6, hi=2_010e6)
    ue_dl_hz: float = _f(unit="Hz", lo=2_170e6, hi=2_200e6)
    feeder_ul_hz: float = _f(unit="Hz", lo=10.7e9, hi=14.5e9)
    feeder_dl_hz: float = _f(unit="Hz", lo=10.7e9, hi=14.5e9)
    stages: List[Stage] = _f(factory=list)


@dataclass
class Terminal:
    eirp_dbw: float = _f(unit="dBW", lo=-50.0, hi=120.0)
    g_over_t_dbk: float = _f(unit="dB/K", lo=-50.0, hi=80.0)


@dataclass
class RfConfig:
    gnb_gateway: Terminal = _f()
    satellite: Terminal = _f()
    ue_gateway: Terminal = _f()
    dl_extra_losses_db: float = _f(0.0, unit="dB", lo=0.0, hi=100.0)
    ul_extra_losses_db: float = _f(0.0, unit="dB", lo=0.0, hi=100.0)
    gateway_processing_s: float = _f(0.0, unit="s", lo=0.0, hi=1.0)
    satellite_processing_s: float = _f(0.0, unit="s", lo=0.0, hi=1.0)


@dataclass
class CarrierSection:
    bandwidth_hz: float = _f(5e6, unit="Hz", lo=0.0, lo_open=True)
    subcarrier_spacing_hz: float = _f(15e3, unit="Hz", choices=[15e3, 30e3])
    prb_count: int = _f(25, lo=1, hi=275)
    overhead_re_per_prb: int = _f(12, lo=0, hi=60)


@dataclass
class LinkAdaptation:
    mcs_table: str = _f("nr_qam64", choices=["nr_qam64"])
    gap_db: float = _f(5.0, unit="dB", lo=0.0, hi=20.0)
    backoff_db: float = _f(5.7, unit="dB", lo=-10.0, hi=20.0)
    bler_slope_db: float = _f(0.5, unit="dB", lo=0.0, lo_open=True, hi=10.0)
    snr_sigma_db: float = _f(1.5, unit="dB", lo=0.0, hi=20.0)
    snr_rho: float = _f(0.99, lo=0.0, hi=0.999999, doc="AR(1) correlation per 1 s step")
    snr_override_db: Optional[float] = _f(None, unit="dB", lo=-50.0, hi=60.0,
                                          doc="fix the mean PDSCH SNR instead of using the budget")
    csi_delay_s: Optional[float] = _f(None, unit="s", lo=0.0, hi=10.0,
                                      doc="channel report age; null = one UE-gNB round trip")


@dataclass
class HarqConfig:
    process_count: int = _f(16, lo=1, hi=32)
    mode_b_enabled: bool = _f(False)
    max_retx: int = _f(4, lo=0, hi=16)
    ul_bler: float = _f(0.0, lo=0.0, hi=0.99)
    grant_period_ms: float = _f(20.0, unit="ms", lo=0.0, hi=1000.0)
    dl_harq: str = _f("off", choices=["off", "on"])
    background_window: int = _f(0, lo=0, hi=256,
                                doc="UL transport blocks kept outstanding by other UE traffic")


@dataclass
class AccessConfig:
    gnb_startup_s: float = _f(0.5, unit="s", lo=0.0, hi=60.0)
    cell_search_s: float = _f(0.2, unit="s", lo=0.0, hi=60.0)
    mib_s: float = _f(0.2, unit="s", lo=0.0, hi=60.0)
    sib1_s: float = _f(0.2, unit="s", lo=0.0, hi=60.0)
    sib19_s: float = _f(0.2, unit="s", lo=0.0, hi=60.0)
    rach_backoff_s: float = _f(1.0, unit="s", lo=0.0, hi=60.0)
    max_rach_attempts: int = _f(8, lo=1, hi=64)
    large_freq_shift: bool = _f(True, doc="gNB PRACH frequency-offset search")
    search_window_hz: float = _f(12_000.0, unit="Hz", lo=0.0, lo_open=True, hi=100_000.0)
    search_step_hz: float = _f(100.0, unit="Hz", lo=0.0, lo_open=True, hi=10_000.0)
    prach_tolerance_hz: float = _f(625.0, unit="Hz", lo=0.0, hi=100_000.0)
    injected_freq_offset_hz: Optional[float] = _f(None, unit="Hz", lo=-100_000.0, hi=100_000.0,
                                                  doc="replace the sampled uplink LO error")
    rrc_round_trips: int = _f(1, lo=0, hi=20)
    pdu_session_round_trips: int = _f(2, lo=0, hi=20)
    n_ta_offset: int = _f(0, lo=0, hi=100_000)
    gnb_absorbs_feeder: bool = _f(False)
    cell_id: int = _f(1, lo=0, hi=2**36 - 1)
    k_offset_slots: int = _f(550, lo=0, hi=1023)
    sib19_validity_s: int = _f(240, unit="s", choices=[5, 10, 15, 20, 25, 30, 35, 40, 45, 50,
                                                      55, 60, 120, 180, 240, 900])
    sib19_auto_refresh: bool = _f(True)


@dataclass
class TrafficConfig:
    fullbuffer_duration_s: float = _f(600.0, unit="s", lo=0.0, hi=86_400.0)
    ping_count: int = _f(600, lo=0, hi=1_000_000)
    ping_interval_s: float = _f(1.0, unit="s", lo=0.0, hi=3600.0)
    ping_payload_bytes: int = _f(56, unit="B", lo=0, hi=65_507)


@dataclass
class FidelityConfig:
    high_fidelity: bool = _f(False, doc="evaluate the PHY every slot instead of every block")
    block_s: float = _f(0.1, unit="s", lo=0.001, hi=1.0)


@dataclass
class ScenarioConfig:
    name: str = _f()
    seed: int = _f(lo=0, hi=2**63 - 1)
    sites: Sites = _f()
    frequency_plan: FrequencyPlanConfig = _f()
    rf: RfConfig = _f()
    carrier: CarrierSection = _f(factory=CarrierSection)
    link_adaptation: LinkAdaptation = _f(factory=LinkAdaptation)
    harq: HarqConfig = _f(factory=HarqConfig)
    access: AccessConfig = _f(factory=AccessConfig)
    traffic: TrafficConfig = _f(factory=TrafficConfig)
    fidelity: FidelityConfig = _f(factory=FidelityConfig)


# --------------------------------------------------------------------------
# loading

def _line_index(text: str) -> dict:
    """Map dotted key paths to 1-based line numbers of their YAML nodes."""
    index = {}

    def walk(node, path):
        if isinstance(node, yaml.MappingNode):
            for k, v in node.value:
                p = f"{path}.{k.value}" if path else str(k.value)
                index[p] = k.start_mark.line + 1
                walk(v, p)
        elif isinstance(node, yaml.SequenceNode):
            for i, v in enumerate(node.value):
                p = f"{path}[{i}]"
                index[p] = v.start_mark.line + 1
                walk(v, p)

    try:
        root = yaml.compose(text)
    except yaml.YAMLError:
        return index
    if root is not None:
        walk(root, "")
    return index


def _unwrap_optional(tp):
    if typing.get_origin(tp) is typing.Union:
        args = [a for a in typing.get_args(tp) if a is not type(None)]
        return args[0], True
    return tp, False


def _coerce(value, tp, path, lines):
    line = lines.get(path)
    tp, optional = _unwrap_optional(tp)
    if value is None:
        if optional:
            return None
        raise MissingField("value is null", path, line)
    if dataclasses.is_dataclass(tp):
        if not isinstance(value, dict):
            raise OutOfRange(f"expected a mapping, got {type(value).__name__}", path, line)
        return _build(tp, value, path, lines)
    if typing.get_origin(tp) in (list, List):
        (item_tp,) = typing.get_args(tp)
        if not isinstance(value, list):
            raise OutOfRange("expected a list", path, line)
        return [_coerce(v, item_tp, f"{path}[{i}]", lines) for i, v in enumerate(value)]
    if tp is bool:
        if not isinstance(value, bool):
            raise OutOfRange(f"expected true/false, got {value!r}", path, line)
        return value
    if tp is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise OutOfRange(f"expected an integer, got {value!r}", path, line)
        return value
    if tp is float:
        if isinstance(value, str) and _FLOAT_RE.fullmatch(value.strip()):
            # YAML 1.1 resolvers leave exponents without a sign (2.1e9) as strings.
            value = float(value)
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise OutOfRange(f"expected a number, got {value!r}", path, line)
        return float(value)
    if tp is str:
        if not isinstance(value, str):
            raise OutOfRange(f"expected a string, got {value!r}", path, line)
        return value
    raise TypeError(f"unsupported schema type {tp!r}")


_FLOAT_RE = re.compile(r"[-+]?(\d+\.?\d*|\.\d+)([eE][-+]?\d+)?")


def _check_range(value, meta, path, line):
    if value is None or isinstance(value, (list, bool)) or dataclasses.is_dataclass(value):
        return
    choices = meta.get("choices")
    if choices is not None and value not in choices:
        raise OutOfRange(f"{value!r} not one of {choices}", path, line)
    lo, hi = meta.get("min"), meta.get("max")
    if lo is not None and (value < lo or (meta.get("lo_open") and value == lo)):
        raise OutOfRange(f"{value} below minimum {lo} {meta.get('unit', '')}".rstrip(), path, line)
    if hi is not None and value > hi:
        raise OutOfRange(f"{value} above maximum {hi} {meta.get('unit', '')}".rstrip(), path, line)


def _build(cls, data: dict, path: str, lines: dict):
    hints = typing.get_type_hints(cls)
    names = {f.name for f in dataclasses.fields(cls)}
    for key in data:
        if key not in names:
            p = f"{path}.{key}" if path else str(key)
            raise UnknownKey(f"unknown key {key!r}", p, lines.get(p))
    kwargs = {}
    for f in dataclasses.fields(cls):
        p = f"{path}.{f.name}" if path else f.name
        if f.name not in data:
            if f.default is dataclasses.MISSING and f.default_factory is dataclasses.MISSING:
                raise MissingField("required field missing", p, lines.get(path) if path else None)
            continue
        value = _coerce(data[f.name], hints[f.name], p, lines)
        _check_range(value, f.metadata, p, lines.get(p))
        kwargs[f.name] = value
    return cls(**kwargs)


def _cross_checks(cfg: ScenarioConfig):
    for i, st in enumerate(cfg.frequency_plan.stages):
        if st.lo_error_min_hz > st.lo_error_bound_hz:
            raise OutOfRange("lo_error_min_hz exceeds lo_error_bound_hz",
                             f"frequency_plan.stages[{i}].lo_error_min_hz")
    for p in ("service", "feeder"):
        for d in ("up", "down"):
            if not any(s.path == p and s.direction == d for s in cfg.frequency_plan.stages):
                raise MissingField(f"no converter stage for {p}/{d}", "frequency_plan.stages")
    fp = cfg.frequency_plan

    def lo(path, d):
        return sum(s.lo_hz for s in fp.stages if s.path == path and s.direction == d)

    expect = {
        "feeder_ul_hz": fp.ue_dl_hz + lo("feeder", "up"),
        "feeder_dl_hz": fp.ue_ul_hz + lo("service", "up") - lo("satellite", "down"),
    }
    for key, want in expect.items():
        if abs(getattr(fp, key) - want) > 1.0:
            raise OutOfRange(f"{key}={getattr(fp, key):.0f} disagrees with the converter "
                             f"chain ({want:.0f})", f"frequency_plan.{key}")
    c = cfg.carrier
    if c.prb_count * 12 * c.subcarrier_spacing_hz > c.bandwidth_hz:
        raise OutOfRange("PRB allocation exceeds the channel bandwidth", "carrier.prb_count")


def scenario_from_dict(data: dict, lines: Optional[dict] = None) -> ScenarioConfig:
    if not isinstance(data, dict):
        raise ScenarioError("scenario document must be a mapping")
    cfg = _build(ScenarioConfig, data, "", lines or {})
    _cross_checks(cfg)
    return cfg


def loads_scenario(text: str) -> ScenarioConfig:
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ScenarioError(f"YAML syntax error: {exc}") from exc
    return scenario_from_dict(data, _line_index(text))


def parse_scenario(path) -> ScenarioConfig:
    path = Path(path)
    return loads_scenario(path.read_text())


def scenario_to_dict(cfg: ScenarioConfig) -> dict:
    return dataclasses.asdict(cfg)


def dumps_scenario(cfg: ScenarioConfig) -> str:
    return yaml.safe_dump(scenario_to_dict(cfg), sort_keys=False, default_flow_style=False)


# --------------------------------------------------------------------------
# schema publication

def _schema_for(tp):
    tp, optional = _unwrap_optional(tp)
    if dataclasses.is_dataclass(tp):
        out = {"type": "object", "additionalProperties": False, "properties": {}, "required": []}
        hints = typing.get_type_hints(tp)
        for f in dataclasses.fields(tp):
            sub = _schema_for(hints[f.name])
            meta = f.metadata
            if meta.get("unit"):
                sub["x-unit"] = meta["unit"]
            if meta.get("doc"):
                sub["description"] = meta["doc"]
            if meta.get("choices") is not None:
                sub["enum"] = list(meta["choices"])
            if meta.get("min") is not None:
                sub["exclusiveMinimum" if meta.get("lo_open") else "minimum"] = meta["min"]
            if meta.get("max") is not None:
                sub["maximum"] = meta["max"]
            out["properties"][f.name] = sub
            if f.default is dataclasses.MISSING and f.default_factory is dataclasses.MISSING:
                out["required"].append(f.name)
        schema = out
    elif typing.get_origin(tp) in (list, List):
        schema = {"type": "array", "items": _schema_for(typing.get_args(tp)[0])}
    else:
        schema = {"type": {bool: "boolean", int: "integer", float: "number", str: "string"}[tp]}
    if optional:
        schema["type"] = [schema["type"], "null"]
    return schema


def scenario_schema() -> dict:
    schema = _schema_for(ScenarioConfig)
    schema["$schema"] = "https://json-schema.org/draft/2020-12/schema"
    schema["title"] = "ntnsim scenario"
    return schema


def schema_json() -> str:
    return json.dumps(scenario_schema(), indent=2, sort_keys=True) + "\n"


SCENARIO_DIR = Path(__file__).with_name("scenarios")


def builtin_scenario_path(name: str) -> Path:
    p = SCENARIO_DIR / f"{name}.yaml"
    if not p.exists():
        raise FileNotFoundError(f"no built-in scenario {name!r}")
    return p


def builtin_scenarios() -> list:
    return sorted(p.stem for p in SCENARIO_DIR.glob("*.yaml"))


def load_builtin(name: str) -> ScenarioConfig:
    return parse_scenario(builtin_scenario_path(name))
