import struct
import zlib

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ntnsim.geometry import EcefVector, Ephemeris
from ntnsim.sib19 import (
    VALIDITY_DURATIONS_S, BadCrc, BadMagic, BadVersion, FieldOutOfRange, Sib19Error, Sib19Message,
    TruncatedPayload, decode, encode, parse_readable, render_readable,
)

GOLDEN_HEX = (
    "53390100000000010f46ee51fffffb50ffffffff7ad8967f00000000d517e6bf"
    "00000000000000000000000000000000000000000000000100f0022615591627"
)


def golden_message():
    return Sib19Message(
        ta_common_us=250299.5791015625,
        ta_common_drift_ppb=-1200,
        ephemeris=Ephemeris(EcefVector(-22339526.41, 35751134.07, 0.0), EcefVector(0.0, 0.0, 0.0)),
        epoch_s=1,
        validity_duration_s=240,
        k_offset_slots=550,
        cell_id=1,
    )


def _hand_packed(m):
    """Byte layout assembled field by field, without the codec's struct format."""
    p, v = m.ephemeris.position, m.ephemeris.velocity
    b = b"S9" + bytes([1]) + m.cell_id.to_bytes(5, "big")
    b += round(m.ta_common_us * 1024).to_bytes(4, "big")
    b += m.ta_common_drift_ppb.to_bytes(4, "big", signed=True)
    for c in (p.x_m, p.y_m, p.z_m):
        b += round(c * 100).to_bytes(8, "big", signed=True)
    for c in (v.x_m, v.y_m, v.z_m):
        b += round(c * 1000).to_bytes(4, "big", signed=True)
    b += m.epoch_s.to_bytes(4, "big") + m.validity_duration_s.to_bytes(2, "big")
    b += m.k_offset_slots.to_bytes(2, "big")
    return b + zlib.crc32(b).to_bytes(4, "big")


def test_golden_vector():
    wire = encode(golden_message())
    assert wire.hex() == GOLDEN_HEX
    assert wire == _hand_packed(golden_message())
    assert decode(bytes.fromhex(GOLDEN_HEX)) == golden_message()


def test_zero_message():
    wire = encode(Sib19Message())
    assert len(wire) == 64
    assert struct.unpack(">I", wire[-4:])[0] == zlib.crc32(wire[:-4])
    assert decode(wire) == Sib19Message()
    lines = render_readable(Sib19Message()).splitlines()
    assert len(lines) == 8
    scalar = [ln for ln in lines if not ln.startswith(("position", "velocity"))]
    assert all(ln.endswith(": 0") for ln in scalar)


def test_ta_common_fixed_point():
    m = Sib19Message(ta_common_us=120_000.0)
    assert decode(encode(m)).ta_common_us == 120_000.0
    assert (decode(encode(Sib19Message(ta_common_us=1.0 / 3))).ta_common_us * 1024).is_integer()


@pytest.mark.parametrize("kw", [
    {"validity_duration_s": 7}, {"k_offset_slots": 1024}, {"cell_id": 2**36},
    {"ta_common_us": -1.0}, {"ta_common_drift_ppb": 2**31}, {"epoch_s": -1},
])
def test_field_out_of_range(kw):
    with pytest.raises(FieldOutOfRange):
        Sib19Message(**kw)


def test_decode_errors():
    wire = bytearray(encode(golden_message()))
    with pytest.raises(TruncatedPayload):
        decode(wire[:10])
    with pytest.raises(Sib19Error):
        decode(bytes(wire) + b"\x00")
    bad = bytearray(wire); bad[0] ^= 1
    with pytest.raises(BadMagic):
        decode(bad)
    bad = bytearray(wire); bad[2] = 2
    with pytest.raises(BadVersion):
        decode(bad)
    bad = bytearray(wire); bad[20] ^= 0x10
    with pytest.raises(BadCrc):
        decode(bad)


def test_every_single_bit_flip_rejected():
    wire = encode(golden_message())
    rng = np.random.default_rng(7)
    positions = rng.integers(0, len(wire) * 8, size=1000)
    positions[: len(wire) * 8 // 2] = np.arange(len(wire) * 8 // 2)  # also sweep the first half exhaustively
    for bit in positions:
        bad = bytearray(wire)
        bad[bit // 8] ^= 1 << (bit % 8)
        with pytest.raises(Sib19Error):
            decode(bytes(bad))


def messages():
    pos = st.floats(-5e7, 5e7, allow_nan=False)
    vel = st.floats(-1e4, 1e4, allow_nan=False)
    return st.builds(
        Sib19Message,
        ta_common_us=st.floats(0, (2**32 - 1) / 1024),
        ta_common_drift_ppb=st.integers(-2**31, 2**31 - 1),
        ephemeris=st.builds(Ephemeris, st.builds(EcefVector, pos, pos, pos), st.builds(EcefVector, vel, vel, vel)),
        epoch_s=st.integers(0, 2**32 - 1),
        validity_duration_s=st.sampled_from((0,) + VALIDITY_DURATIONS_S),
        k_offset_slots=st.integers(0, 1023),
        cell_id=st.integers(0, 2**36 - 1),
    )


@settings(max_examples=300)
@given(messages())
def test_roundtrip_property(m):
    wire = encode(m)
    assert len(wire) == 64
    assert decode(wire) == m
    assert encode(decode(wire)) == wire
    assert parse_readable(render_readable(m)) == m
    assert render_readable(m) == render_readable(decode(wire))


def test_roundtrip_ten_thousand_random():
    rng = np.random.default_rng(19)
    for _ in range(10_000):
        m = Sib19Message(
            ta_common_us=int(rng.integers(0, 2**32)) / 1024,
            ta_common_drift_ppb=int(rng.integers(-2**31, 2**31)),
            ephemeris=Ephemeris(EcefVector(*(rng.uniform(-5e7, 5e7, 3))),
                                EcefVector(*(rng.uniform(-1e4, 1e4, 3)))),
            epoch_s=int(rng.integers(0, 2**32)),
            validity_duration_s=int(rng.choice(VALIDITY_DURATIONS_S)),
            k_offset_slots=int(rng.integers(0, 1024)),
            cell_id=int(rng.integers(0, 2**36)),
        )
        assert decode(encode(m)) == m


def test_parse_readable_errors():
    text = render_readable(golden_message())
    with pytest.raises(Sib19Error):
        parse_readable(text + "bogus: 1\n")
    with pytest.raises(Sib19Error):
        parse_readable("\n".join(text.splitlines()[1:]))
