"""Link budget and abstracted NR PHY for a narrow FDD NTN carrier.

Link adaptation uses a Shannon-gap threshold per MCS row,

    snr_th = gap_db + 10*log10(2**(Qm*R) - 1),

and the block error ratio is a logistic curve centred on that threshold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .constants import (BOLTZMANN_DBW, RE_PER_PRB_SLOT, SLOTS_PER_SECOND_15KHZ,
                        SPEED_OF_LIGHT)

DEFAULT_GAP_DB = 5.0
DEFAULT_BACKOFF_DB = 5.7
DEFAULT_BLER_SLOPE_DB = 0.5


class NonPositiveInput(ValueError):
    pass


class OverheadExceedsCapacity(ValueError):
    pass


@dataclass(frozen=True)
class McsEntry:
    index: int
    modulation_order: int
    code_rate: float

    def __post_init__(self):
        if not 0.0 < self.code_rate < 1.0:
            raise ValueError(f"code rate must lie in (0, 1), got {self.code_rate}")
        if self.modulation_order not in (2, 4, 6, 8):
            raise ValueError(f"unsupported modulation order {self.modulation_order}")

    @property
    def spectral_efficiency(self) -> float:
        return self.modulation_order * self.code_rate


# PDSCH MCS index table 1 (up to 64QAM), TS 38.214 Table 5.1.3.1-1.
# Code rates are the tabulated R x 1024 values.
_MCS_TABLE1_RAW = (
    (2, 120), (2, 157), (2, 193), (2, 251), (2, 308), (2, 379), (2, 449), (2, 526),
    (2, 602), (2, 679), (4, 340), (4, 378), (4, 434), (4, 490), (4, 553), (4, 616),
    (4, 658), (6, 438), (6, 466), (6, 517), (6, 567), (6, 616), (6, 666), (6, 719),
    (6, 772), (6, 822), (6, 873), (6, 910), (6, 948),
)
MCS_TABLE_QAM64 = tuple(McsEntry(i, qm, r / 1024) for i, (qm, r) in enumerate(_MCS_TABLE1_RAW))

MCS_TABLES = {"nr_qam64": MCS_TABLE_QAM64}


@dataclass(frozen=True)
class LinkBudgetParams:
    eirp_dbw: float
    g_over_t_dbk: float
    carrier_hz: float
    extra_losses_db: float = 0.0
    bandwidth_hz: float = 5e6

    def __post_init__(self):
        if self.carrier_hz <= 0 or self.bandwidth_hz <= 0:
            raise NonPositiveInput("carrier and bandwidth must be positive")
        if self.extra_losses_db < 0:
            raise ValueError("extra_losses_db must be non-negative")


@dataclass(frozen=True)
class CarrierConfig:
    bandwidth_hz: float = 5e6
    subcarrier_spacing_hz: float = 15e3
    prb_count: int = 25
    symbols_per_slot: int = 14
    overhead_re_per_prb: int = 12

    def __post_init__(self):
        if self.prb_count <= 0:
            raise ValueError("prb_count must be positive")
        if self.prb_count * 12 * self.subcarrier_spacing_hz > self.bandwidth_hz:
            raise ValueError("PRB allocation exceeds the channel bandwidth")
        if self.overhead_re_per_prb < 0:
            raise ValueError("overhead_re_per_prb must be non-negative")

    @property
    def slots_per_second(self) -> int:
        return int(round(SLOTS_PER_SECOND_15KHZ * self.subcarrier_spacing_hz / 15e3))


def fspl_db(carrier_hz: float, distance_m: float) -> float:
    if carrier_hz <= 0 or distance_m <= 0:
        raise NonPositiveInput(f"fspl needs positive inputs, got f={carrier_hz}, d={distance_m}")
    return 20.0 * math.log10(4.0 * math.pi * distance_m * carrier_hz / SPEED_OF_LIGHT)


def cn0_dbhz(p: LinkBudgetParams, distance_m: float) -> float:
    return p.eirp_dbw + p.g_over_t_dbk - fspl_db(p.carrier_hz, distance_m) - p.extra_losses_db - BOLTZMANN_DBW


def snr_db(cn0: float, bandwidth_hz: float) -> float:
    if bandwidth_hz <= 0:
        raise NonPositiveInput("bandwidth must be positive")
    return cn0 - 10.0 * math.log10(bandwidth_hz)


def combine_cn0_dbhz(*hops_dbhz: float) -> float:
    """End-to-end C/N0 of cascaded transparent hops (noise powers add)."""
    return -10.0 * math.log10(sum(10.0 ** (-c / 10.0) for c in hops_dbhz))


def mcs_threshold_db(mcs: McsEntry, gap_db: float = DEFAULT_GAP_DB) -> float:
    return gap_db + 10.0 * math.log10(2.0 ** mcs.spectral_efficiency - 1.0)


def select_mcs(snr: float, table: Sequence[McsEntry] = MCS_TABLE_QAM64,
               backoff_db: float = DEFAULT_BACKOFF_DB, gap_db: float = DEFAULT_GAP_DB) -> McsEntry:
    """Highest row whose threshold fits under ``snr - backoff_db``; row 0 as a floor."""
    if not table:
        raise ValueError("empty MCS table")
    effective = snr - backoff_db
    chosen = table[0]
    for entry in table:
        if mcs_threshold_db(entry, gap_db) <= effective:
            chosen = entry
    return chosen


def transport_block_bits(cfg: CarrierConfig, mcs: McsEntry, layers: int = 1) -> int:
    usable = RE_PER_PRB_SLOT - cfg.overhead_re_per_prb
    if usable <= 0:
        raise OverheadExceedsCapacity(f"overhead {cfg.overhead_re_per_prb} leaves no data REs")
    return int(math.floor(cfg.prb_count * usable * mcs.modulation_order * mcs.code_rate * layers))


def bler(snr: float, mcs: McsEntry, slope_db: float = DEFAULT_BLER_SLOPE_DB,
         gap_db: float = DEFAULT_GAP_DB) -> float:
    """Logistic block error ratio ``1 / (1 + exp((snr - snr_th) / slope))``."""
    if slope_db <= 0:
        raise ValueError("slope must be positive")
    x = (snr - mcs_threshold_db(mcs, gap_db)) / slope_db
    if x > 700:
        return 0.0
    if x < -700:
        return 1.0
    return 1.0 / (1.0 + math.exp(x))


def theoretical_throughput_bps(cfg: CarrierConfig, mcs: McsEntry) -> float:
    return float(transport_block_bits(cfg, mcs) * cfg.slots_per_second)
