"""
Ping latency and full-buffer throughput over GEO
================================================

The default scenario: ten minutes of saturating downlink, then 600 pings.
"""

import dataclasses as dc

import numpy as np

from ntnsim.scenario import load_builtin
from ntnsim.sim import collect_summary, run_scenario

cfg = load_builtin("geo_default")
r = run_scenario(cfg)

thr = collect_summary([m.dl_throughput_bps / 1e6 for m in r.metrics])
print(f"DL throughput {thr['mean']:.2f} Mbps (min {thr['min']:.2f}, max {thr['max']:.2f})")
print(f"DL BLER {np.mean([m.dl_bler for m in r.metrics]):.2e}")

rtt = collect_summary([p.rtt_s for p in r.pings])
lost = sum(p.lost for p in r.pings)
print(f"ping RTT mean {rtt['mean'] * 1e3:.0f} ms, std {rtt['std'] * 1e3:.0f} ms, "
      f"range {rtt['min'] * 1e3:.0f}-{rtt['max'] * 1e3:.0f} ms, {lost} lost")

## A coarse histogram, 100 ms bins
edges = np.arange(0.5, 2.3, 0.1)
counts, _ = np.histogram([p.rtt_s for p in r.pings if not p.lost], edges)
for lo, n in zip(edges, counts):
    print(f"{lo * 1e3:5.0f} ms |{'#' * (n // 4)}")

## Where does the extra latency come from?
# Take away the competing uplink traffic and the retransmissions and the
# RTT falls back to the propagation floor plus at most one grant period.
calm = dc.replace(cfg.harq, background_window=0, ul_bler=0.0)
short = dc.replace(cfg.traffic, fullbuffer_duration_s=0.0, ping_count=100)
r0 = run_scenario(dc.replace(cfg, harq=calm, traffic=short))
print(f"no load, no retx: mean {np.mean([p.rtt_s for p in r0.pings]) * 1e3:.0f} ms "
      f"(propagation {r0.info['propagation_rtt_s'] * 1e3:.0f} ms)")

## More HARQ processes shorten the queue
for n in (8, 16, 24, 32):
    h = dc.replace(cfg.harq, process_count=n)
    rn = run_scenario(dc.replace(cfg, harq=h, traffic=short))
    print(f"{n:2d} processes: mean RTT {np.mean([p.rtt_s for p in rn.pings if not p.lost]) * 1e3:.0f} ms")
