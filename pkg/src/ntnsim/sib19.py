"""SIB19 NTN assistance message and its fixed-layout binary form.

Wire layout (64 octets, big-endian)::

    off  len  field
    0    2    magic b"S9"
    2    1    version (1)
    3    5    cell_id            unsigned, 36 significant bits
    8    4    ta_common          unsigned, units of 2^-10 us
    12   4    ta_common_drift    signed, parts per billion
    16   24   position x, y, z   signed 64-bit each, cm
    40   12   velocity x, y, z   signed 32-bit each, mm/s
    52   4    epoch_s            unsigned seconds
    56   2    validity_duration_s (0 = not signalled)
    58   2    k_offset_slots
    60   4    CRC-32 (zlib polynomial) over octets 0..59

Values are snapped to their wire resolution when a message is built, so
``decode(encode(m)) == m`` holds exactly.
"""

from __future__ import annotations

import struct
import zlib
from dataclasses import dataclass, field

from .geometry import EcefVector, Ephemeris

MAGIC = b"S9"
VERSION = 1
WIRE_LENGTH = 64

TA_COMMON_SCALE = 1024  # steps per microsecond
POSITION_SCALE = 100  # cm per meter
VELOCITY_SCALE = 1000  # mm/s per m/s

VALIDITY_DURATIONS_S = (5, 10, 15, 20, 25, 30, 35, 40, 45, 50, 55, 60, 120, 180, 240, 900)

_BODY = struct.Struct(">2sB5sIi3q3iIHH")
assert _BODY.size == WIRE_LENGTH - 4

FIELD_ORDER = (
    "cell_id",
    "ta_common_us",
    "ta_common_drift_ppb",
    "position_m",
    "velocity_mps",
    "epoch_s",
    "validity_duration_s",
    "k_offset_slots",
)


class Sib19Error(ValueError):
    pass


class FieldOutOfRange(Sib19Error):
    def __init__(self, field_name: str, value):
        super().__init__(f"{field_name} out of range: {value!r}")
        self.field = field_name


class BadMagic(Sib19Error):
    pass


class BadVersion(Sib19Error):
    pass


class BadCrc(Sib19Error):
    pass


class TruncatedPayload(Sib19Error):
    pass


def _snap(value: float, scale: int) -> float:
    return round(value * scale) / scale


def _check_int(name, value, lo, hi):
    if not lo <= value <= hi:
        raise FieldOutOfRange(name, value)


@dataclass(frozen=True)
class Sib19Message:
    ta_common_us: float = 0.0
    ta_common_drift_ppb: int = 0
    ephemeris: Ephemeris = field(default_factory=lambda: Ephemeris(
        EcefVector(0.0, 0.0, 0.0), EcefVector(0.0, 0.0, 0.0), 0.0))
    epoch_s: int = 0
    validity_duration_s: int = 0
    k_offset_slots: int = 0
    cell_id: int = 0

    def __post_init__(self):
        set_ = object.__setattr__
        ta_steps = round(self.ta_common_us * TA_COMMON_SCALE)
        _check_int("ta_common_us", ta_steps, 0, 2**32 - 1)
        set_(self, "ta_common_us", ta_steps / TA_COMMON_SCALE)
        _check_int("ta_common_drift_ppb", self.ta_common_drift_ppb, -2**31, 2**31 - 1)
        _check_int("epoch_s", self.epoch_s, 0, 2**32 - 1)
        if self.validity_duration_s != 0 and self.validity_duration_s not in VALIDITY_DURATIONS_S:
            raise FieldOutOfRange("validity_duration_s", self.validity_duration_s)
        _check_int("k_offset_slots", self.k_offset_slots, 0, 1023)
        _check_int("cell_id", self.cell_id, 0, 2**36 - 1)

        p, v = self.ephemeris.position, self.ephemeris.velocity
        for name, val, scale, bits in (
            ("position_m", p.x_m, POSITION_SCALE, 64), ("position_m", p.y_m, POSITION_SCALE, 64),
            ("position_m", p.z_m, POSITION_SCALE, 64), ("velocity_mps", v.x_m, VELOCITY_SCALE, 32),
            ("velocity_mps", v.y_m, VELOCITY_SCALE, 32), ("velocity_mps", v.z_m, VELOCITY_SCALE, 32),
        ):
            _check_int(name, round(val * scale), -2**(bits - 1), 2**(bits - 1) - 1)
        eph = Ephemeris(
            EcefVector(_snap(p.x_m, POSITION_SCALE), _snap(p.y_m, POSITION_SCALE),
                       _snap(p.z_m, POSITION_SCALE)),
            EcefVector(_snap(v.x_m, VELOCITY_SCALE), _snap(v.y_m, VELOCITY_SCALE),
                       _snap(v.z_m, VELOCITY_SCALE)),
            float(self.epoch_s),
        )
        set_(self, "ephemeris", eph)


def encode(msg: Sib19Message) -> bytes:
    p, v = msg.ephemeris.position, msg.ephemeris.velocity
    body = _BODY.pack(
        MAGIC, VERSION,
        msg.cell_id.to_bytes(5, "big"),
        round(msg.ta_common_us * TA_COMMON_SCALE),
        msg.ta_common_drift_ppb,
        round(p.x_m * POSITION_SCALE), round(p.y_m * POSITION_SCALE), round(p.z_m * POSITION_SCALE),
        round(v.x_m * VELOCITY_SCALE), round(v.y_m * VELOCITY_SCALE), round(v.z_m * VELOCITY_SCALE),
        msg.epoch_s, msg.validity_duration_s, msg.k_offset_slots,
    )
    return body + struct.pack(">I", zlib.crc32(body))


def decode(wire: bytes) -> Sib19Message:
    wire = bytes(wire)
    if len(wire) < WIRE_LENGTH:
        raise TruncatedPayload(f"expected {WIRE_LENGTH} octets, got {len(wire)}")
    if len(wire) > WIRE_LENGTH:
        raise Sib19Error(f"expected {WIRE_LENGTH} octets, got {len(wire)}")
    if wire[:2] != MAGIC:
        raise BadMagic(wire[:2].hex())
    if wire[2] != VERSION:
        raise BadVersion(str(wire[2]))
    body, (crc,) = wire[:-4], struct.unpack(">I", wire[-4:])
    if zlib.crc32(body) != crc:
        raise BadCrc(f"crc mismatch: stored {crc:08x}, computed {zlib.crc32(body):08x}")
    (_, _, cell, ta, drift, px, py, pz, vx, vy, vz,
     epoch, validity, k_offset) = _BODY.unpack(body)
    cell_id = int.from_bytes(cell, "big")
    return Sib19Message(
        ta_common_us=ta / TA_COMMON_SCALE,
        ta_common_drift_ppb=drift,
        ephemeris=Ephemeris(
            EcefVector(px / POSITION_SCALE, py / POSITION_SCALE, pz / POSITION_SCALE),
            EcefVector(vx / VELOCITY_SCALE, vy / VELOCITY_SCALE, vz / VELOCITY_SCALE),
            float(epoch),
        ),
        epoch_s=epoch,
        validity_duration_s=validity,
        k_offset_slots=k_offset,
        cell_id=cell_id,
    )


def _fmt_vec(vec: EcefVector, decimals: int) -> str:
    return ",".join(f"{c:.{decimals}f}" for c in (vec.x_m, vec.y_m, vec.z_m))


def render_readable(msg: Sib19Message) -> str:
    """One ``name: value`` line per field, in wire order."""
    values = {
        "cell_id": str(msg.cell_id),
        "ta_common_us": repr(msg.ta_common_us) if msg.ta_common_us else "0",
        "ta_common_drift_ppb": str(msg.ta_common_drift_ppb),
        "position_m": _fmt_vec(msg.ephemeris.position, 2),
        "velocity_mps": _fmt_vec(msg.ephemeris.velocity, 3),
        "epoch_s": str(msg.epoch_s),
        "validity_duration_s": str(msg.validity_duration_s),
        "k_offset_slots": str(msg.k_offset_slots),
    }
    return "".join(f"{name}: {values[name]}\n" for name in FIELD_ORDER)


def parse_readable(text: str) -> Sib19Message:
    values = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        name, sep, raw = line.partition(":")
        name = name.strip()
        if not sep or name not in FIELD_ORDER:
            raise Sib19Error(f"line {lineno}: unrecognised entry {line!r}")
        if name in values:
            raise Sib19Error(f"line {lineno}: duplicate field {name}")
        values[name] = raw.strip()
    missing = [n for n in FIELD_ORDER if n not in values]
    if missing:
        raise Sib19Error(f"missing fields: {', '.join(missing)}")

    def vec(s):
        parts = s.split(",")
        if len(parts) != 3:
            raise Sib19Error(f"expected three comma-separated components, got {s!r}")
        return EcefVector(*(float(x) for x in parts))

    epoch = int(values["epoch_s"])
    return Sib19Message(
        ta_common_us=float(values["ta_common_us"]),
        ta_common_drift_ppb=int(values["ta_common_drift_ppb"]),
        ephemeris=Ephemeris(vec(values["position_m"]), vec(values["velocity_mps"]), float(epoch)),
        epoch_s=epoch,
        validity_duration_s=int(values["validity_duration_s"]),
        k_offset_slots=int(values["k_offset_slots"]),
        cell_id=int(values["cell_id"]),
    )
