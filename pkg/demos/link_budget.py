"""
Link budget of a transparent GEO relay
======================================

Walks from site coordinates to the MCS the scheduler would pick.
"""

from ntnsim import linkphy
from ntnsim.budget import budget_chain, link_geometry
from ntnsim.scenario import load_builtin

cfg = load_builtin("geo_default")

## Where is the satellite?
# Both ground stations see the same GEO slot. The feeder leg (gNB side)
# and the service leg (UE side) have different slant ranges.
geom = link_geometry(cfg)
print(f"gNB elevation {geom.gnb_look.elevation_deg:.2f} deg, range {geom.feeder_range_m / 1e3:.0f} km")
print(f"UE  elevation {geom.ue_look.elevation_deg:.2f} deg, range {geom.service_range_m / 1e3:.0f} km")
print(f"round trip through the relay: {geom.rtt_s * 1e3:.1f} ms")

## Four hops, two directions
# The satellite only filters and translates frequency, so the end-to-end
# C/N0 of each direction combines its two hops like parallel resistors.
b = budget_chain(cfg, geom)
for hop in b["hops"].values():
    print(f"{hop.name:<17} FSPL {hop.fspl_db:6.2f} dB  C/N0 {hop.cn0_dbhz:6.2f} dBHz")

## From SNR to throughput
# The analytic budget is optimistic; the scenario carries an extra loss term
# that brings PDSCH SNR down to the level measured on hardware.
carrier = linkphy.CarrierConfig()
for snr in (b["downlink_snr_db"] + cfg.rf.dl_extra_losses_db, b["downlink_snr_db"]):
    mcs = linkphy.select_mcs(snr)
    thr = linkphy.theoretical_throughput_bps(carrier, mcs)
    print(f"SNR {snr:5.2f} dB -> MCS {mcs.index:2d} (Qm={mcs.modulation_order}) {thr / 1e6:6.3f} Mbps")

## How much SNR does each extra Mbps cost?
for m in linkphy.MCS_TABLE_QAM64[6:13]:
    print(f"MCS {m.index:2d}  needs {linkphy.mcs_threshold_db(m) + linkphy.DEFAULT_BACKOFF_DB:5.2f} dB"
          f"  gives {linkphy.theoretical_throughput_bps(carrier, m) / 1e6:.3f} Mbps")
