"""
Timing advance from broadcast ephemeris
=======================================

A UE far from the gateway must start its uplink half a second early.
The gNB tells it how much of that is the feeder leg; the UE works out
the service leg from the satellite position it receives in SIB19.
"""

from ntnsim import sib19
from ntnsim.budget import link_geometry
from ntnsim.constants import TC_S
from ntnsim.scenario import load_builtin
from ntnsim.timing import build_components, total_timing_advance, ue_specific_ta

cfg = load_builtin("geo_default")
geom = link_geometry(cfg)

# what the gNB puts on the air
msg = sib19.Sib19Message(
    ta_common_us=(geom.rtt_s - 2 * geom.service_delay_s) * 1e6,
    ephemeris=geom.ephemeris,
    epoch_s=1,
    validity_duration_s=240,
    k_offset_slots=550,
    cell_id=1,
)
wire = sib19.encode(msg)
print(len(wire), "octets:", wire.hex())

# what the UE recovers
rx = sib19.decode(wire)
print(sib19.render_readable(rx))

ta_ue = ue_specific_ta(rx.ephemeris, geom.ue)
c = build_components(rx.ta_common_us * 1e-6, ta_ue)
print(f"N_TA,adj common = {c.n_ta_adj_common} Tc, N_TA,adj UE = {c.n_ta_adj_ue} Tc")
print(f"total TA {total_timing_advance(c) * 1e3:.6f} ms vs true round trip {geom.rtt_s * 1e3:.6f} ms")
print(f"residual {abs(total_timing_advance(c) - geom.rtt_s) / TC_S:.2f} Tc")

## A corrupted broadcast never reaches the TA computation
bad = bytearray(wire)
bad[30] ^= 0x04
try:
    sib19.decode(bytes(bad))
except sib19.BadCrc as exc:
    print("rejected:", exc)
