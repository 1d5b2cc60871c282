"""Uplink HARQ process pool.

Without HARQ Mode B a PUSCH process stays reserved until its feedback
can come back, i.e. for a full UE-gNB round trip plus one grant period,
and once more for every retransmission.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np


class ProcessBusy(RuntimeError):
    pass


class Acquisition(NamedTuple):
    process_id: int
    available_at: float


@dataclass(frozen=True)
class HarqPool:
    process_count: int = 16
    busy_until: tuple = ()
    mode_b_enabled: bool = False

    def __post_init__(self):
        if not 1 <= self.process_count <= 32:
            raise ValueError(f"process_count must be in [1, 32], got {self.process_count}")
        if not self.busy_until:
            object.__setattr__(self, "busy_until", (0.0,) * self.process_count)
        if len(self.busy_until) != self.process_count:
            raise ValueError("busy_until length must equal process_count")
        if min(self.busy_until) < 0:
            raise ValueError("busy_until entries must be non-negative")

    def in_flight(self, t: float) -> int:
        return sum(1 for b in self.busy_until if b > t)


@dataclass(frozen=True)
class UlTransmissionRecord:
    seq: int
    enqueue_t: float
    grant_t: float
    tx_t: float
    complete_t: float
    retx_count: int
    process_id: int
    kind: str = "data"
    lost: bool = False


def acquire(pool: HarqPool, t: float) -> Acquisition:
    """Earliest-free process (lowest id on ties); the pool is not modified."""
    if t < 0:
        raise ValueError("t must be non-negative")
    pid = min(range(pool.process_count), key=lambda i: (pool.busy_until[i], i))
    return Acquisition(pid, max(t, pool.busy_until[pid]))


def commit_transmission(pool: HarqPool, process_id: int, tx_t: float, hold_s: float,
                        retx: int = 0) -> HarqPool:
    if pool.busy_until[process_id] > tx_t:
        raise ProcessBusy(f"process {process_id} busy until {pool.busy_until[process_id]:.6f} s")
    busy = list(pool.busy_until)
    busy[process_id] = tx_t + (retx + 1) * hold_s
    return replace(pool, busy_until=tuple(busy))


def hold_time(propagation_rtt_s: float, grant_period_s: float, mode_b: bool = False,
              tx_duration_s: float = 1e-3) -> float:
    if mode_b:
        return tx_duration_s
    return propagation_rtt_s + grant_period_s


def sample_retx_count(ul_bler: float, max_retx: int, rng: np.random.Generator) -> int:
    """Failed attempts before a success, truncated at ``max_retx``."""
    if not 0.0 <= ul_bler < 1.0:
        raise ValueError("ul_bler must lie in [0, 1)")
    k = 0
    while k < max_retx and rng.random() < ul_bler:
        k += 1
    return k


def sample_failures(ul_bler: float, max_retx: int, rng: np.random.Generator) -> tuple:
    """Return (retx_count, lost); lost when all ``max_retx + 1`` attempts fail."""
    if not 0.0 <= ul_bler < 1.0:
        raise ValueError("ul_bler must lie in [0, 1)")
    k = 0
    while k <= max_retx and rng.random() < ul_bler:
        k += 1
    if k > max_retx:
        return max_retx, True
    return k, False


def truncated_geometric_mean(p: float, max_retx: int) -> float:
    """Closed form of E[min(G, max_retx)] for G ~ Geometric failures with failure prob p."""
    return sum(p**k for k in range(1, max_retx + 1))


def replay_fifo(arrivals, retx_counts, process_count: int, hold_s: float,
                grant_period_s: float) -> list:
    """Serve a fixed arrival trace first-come-first-served through a pool.

    Returns the transmit time of each arrival. Used to compare pool sizes on
    identical traffic.
    """
    pool = HarqPool(process_count)
    last = -np.inf
    out = []
    for a, k in zip(arrivals, retx_counts):
        acq = acquire(pool, a)
        t = max(acq.available_at, last + grant_period_s)
        t = next_grant(t, grant_period_s)
        pool = commit_transmission(pool, acq.process_id, t, hold_s, k)
        last = t
        out.append(t)
    return out


def next_grant(t: float, period_s: float) -> float:
    """First configured-grant occasion at or after ``t``."""
    if period_s <= 0:
        return t
    n = np.ceil(t / period_s - 1e-9)
    # the tolerance can land a few ulps before t; never return a past time
    return max(t, float(n * period_s))
