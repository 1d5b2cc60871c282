"""NTN uplink timing advance.

The total advance is a sum of four integer counts of the NR time unit Tc:
closed-loop, fixed offset, common (feeder link, broadcast by the network)
and UE-specific (service link, derived from the ephemeris).
"""

from __future__ import annotations

from dataclasses import dataclass

from .constants import TC_S
from .geometry import (Ephemeris, GroundPosition, geodetic_to_ecef,
                       propagation_delay, slant_range)


class StaleEpoch(Exception):
    """Assistance data is past its validity window and must be reacquired."""


def fundamental_time_unit() -> float:
    return TC_S


@dataclass(frozen=True)
class TimingAdvanceComponents:
    n_ta: int = 0
    n_ta_offset: int = 0
    n_ta_adj_common: int = 0
    n_ta_adj_ue: int = 0
    tc_s: float = TC_S

    def __post_init__(self):
        if self.tc_s <= 0:
            raise ValueError("tc_s must be positive")
        for name in ("n_ta", "n_ta_offset", "n_ta_adj_common", "n_ta_adj_ue"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise ValueError(f"{name} must be a non-negative integer, got {v!r}")


@dataclass(frozen=True)
class CommonTaParams:
    ta_common_s: float
    ta_common_drift_s_per_s: float = 0.0
    epoch_s: float = 0.0
    validity_duration_s: float = 20.0

    def __post_init__(self):
        if self.ta_common_s < 0:
            raise ValueError("ta_common_s must be non-negative")
        if self.validity_duration_s <= 0:
            raise ValueError("validity_duration_s must be positive")

    def expires_at(self) -> float:
        return self.epoch_s + self.validity_duration_s


def total_timing_advance(c: TimingAdvanceComponents) -> float:
    return (c.n_ta + c.n_ta_offset + c.n_ta_adj_common + c.n_ta_adj_ue) * c.tc_s


def common_ta_at(params: CommonTaParams, t_s: float) -> float:
    """Common TA extrapolated linearly from its epoch.

    Raises StaleEpoch strictly after the validity window closes.
    """
    if t_s < params.epoch_s:
        raise ValueError(f"t={t_s} precedes epoch {params.epoch_s}")
    if t_s > params.expires_at():
        raise StaleEpoch(f"t={t_s:.6f} s beyond validity ending at {params.expires_at():.6f} s")
    return max(0.0, params.ta_common_s + params.ta_common_drift_s_per_s * (t_s - params.epoch_s))


def ue_specific_ta(eph: Ephemeris, ue: GroundPosition, t_s: float = 0.0) -> float:
    """Service-link round trip from the UE's own position and the ephemeris.

    The GEO ephemeris is stationary, so `t_s` only matters for velocity
    extrapolation of non-zero ephemeris velocities.
    """
    dt = t_s - eph.epoch_s
    p = eph.position
    v = eph.velocity
    sat = type(p)(p.x_m + v.x_m * dt, p.y_m + v.y_m * dt, p.z_m + v.z_m * dt)
    return 2.0 * propagation_delay(slant_range(geodetic_to_ecef(ue), sat))


def to_tc_units(duration_s: float, tc_s: float = TC_S) -> int:
    if duration_s < 0:
        raise ValueError("duration must be non-negative")
    return int(round(duration_s / tc_s))


def build_components(ta_common_s: float, ta_ue_s: float, n_ta: int = 0,
                     n_ta_offset: int = 0, tc_s: float = TC_S) -> TimingAdvanceComponents:
    return TimingAdvanceComponents(
        n_ta=n_ta,
        n_ta_offset=n_ta_offset,
        n_ta_adj_common=to_tc_units(ta_common_s, tc_s),
        n_ta_adj_ue=to_tc_units(ta_ue_s, tc_s),
        tc_s=tc_s,
    )
