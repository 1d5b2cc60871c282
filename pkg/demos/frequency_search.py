"""
Why the gNB needs a PRACH frequency search
==========================================

Every oscillator between UE and gNB adds a few hundred Hz to a few kHz of
error. Normal PRACH detection tolerates about half a subcarrier.
"""

import dataclasses as dc

import numpy as np

from ntnsim.scenario import load_builtin
from ntnsim.sim import Simulation, prach_frequency_search, run_scenario

cfg = load_builtin("geo_default")

## Residual carrier error seen by the gNB, over many power-ups
errs = np.array([Simulation(cfg, seed).ul_freq_error_hz for seed in range(500)])
print(f"|error| median {np.median(abs(errs)):.0f} Hz, 5-95% "
      f"{np.percentile(abs(errs), 5):.0f}-{np.percentile(abs(errs), 95):.0f} Hz")

## Detector with and without the search
for r in (300.0, 2000.0, 4300.0, 5900.0):
    on = prach_frequency_search(r, 12_000.0, 100.0)
    off = prach_frequency_search(r, None)
    print(f"{r:6.0f} Hz  search: {on.detected!s:5} est {on.estimate_hz:6.0f}   plain: {off.detected}")

## The same thing end to end
quiet = dc.replace(cfg.traffic, fullbuffer_duration_s=0.0, ping_count=0)
for search in (True, False):
    c = dc.replace(cfg, traffic=quiet, access=dc.replace(cfg.access, large_freq_shift=search))
    r = run_scenario(c)
    print(f"large_freq_shift={search}: {r.status} after {r.ue.rach_attempts} PRACH attempt(s)")
