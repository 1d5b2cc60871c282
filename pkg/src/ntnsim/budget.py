"""Scenario geometry and the four-hop link budget of the bent pipe."""

from __future__ import annotations

from dataclasses import dataclass

from . import geometry as geo
from .linkphy import LinkBudgetParams, cn0_dbhz, combine_cn0_dbhz, fspl_db, snr_db


@dataclass(frozen=True)
class LinkGeometry:
    gnb: geo.GroundPosition
    ue: geo.GroundPosition
    ephemeris: geo.Ephemeris
    feeder_range_m: float
    service_range_m: float
    gnb_look: geo.LookAngles
    ue_look: geo.LookAngles
    ground_separation_m: float
    processing_one_way_s: float = 0.0

    @property
    def feeder_delay_s(self) -> float:
        return geo.propagation_delay(self.feeder_range_m)

    @property
    def service_delay_s(self) -> float:
        return geo.propagation_delay(self.service_range_m)

    @property
    def one_way_s(self) -> float:
        """UE to gNB (or back) including gateway and payload processing."""
        return self.feeder_delay_s + self.service_delay_s + self.processing_one_way_s

    @property
    def rtt_s(self) -> float:
        return 2.0 * self.one_way_s


def link_geometry(cfg) -> LinkGeometry:
    s = cfg.sites
    re_m = s.earth_radius_m
    gnb = geo.GroundPosition(s.gnb.latitude_deg, s.gnb.longitude_deg, s.gnb.altitude_m)
    ue = geo.GroundPosition(s.ue.latitude_deg, s.ue.longitude_deg, s.ue.altitude_m)
    eph = geo.geo_satellite_ephemeris(s.satellite_longitude_deg, 0.0, re_m)
    gnb_ecef = geo.geodetic_to_ecef(gnb, re_m)
    ue_ecef = geo.geodetic_to_ecef(ue, re_m)
    rf = cfg.rf
    return LinkGeometry(
        gnb=gnb,
        ue=ue,
        ephemeris=eph,
        feeder_range_m=geo.slant_range(gnb_ecef, eph.position),
        service_range_m=geo.slant_range(ue_ecef, eph.position),
        gnb_look=geo.look_angles(gnb, eph.position, re_m),
        ue_look=geo.look_angles(ue, eph.position, re_m),
        ground_separation_m=geo.great_circle_distance(gnb, ue, re_m),
        processing_one_way_s=2.0 * rf.gateway_processing_s + rf.satellite_processing_s,
    )


def _lo_sum(cfg, path, direction):
    return sum(st.lo_hz for st in cfg.frequency_plan.stages
               if st.path == path and st.direction == direction)


def ku_carriers(cfg) -> dict:
    """Nominal Ku carriers on each hop, derived from the converter LOs."""
    fp = cfg.frequency_plan
    sat = _lo_sum(cfg, "satellite", "down")
    return {
        "feeder_uplink": fp.ue_dl_hz + _lo_sum(cfg, "feeder", "up"),
        "service_downlink": fp.ue_dl_hz + _lo_sum(cfg, "feeder", "up") - sat,
        "service_uplink": fp.ue_ul_hz + _lo_sum(cfg, "service", "up"),
        "feeder_downlink": fp.ue_ul_hz + _lo_sum(cfg, "service", "up") - sat,
    }


@dataclass(frozen=True)
class HopBudget:
    name: str
    eirp_dbw: float
    g_over_t_dbk: float
    carrier_hz: float
    distance_m: float
    fspl_db: float
    cn0_dbhz: float


def budget_chain(cfg, geom: LinkGeometry | None = None) -> dict:
    """Per-hop budgets plus end-to-end C/N0 and SNR in both directions."""
    geom = geom or link_geometry(cfg)
    rf = cfg.rf
    bw = cfg.carrier.bandwidth_hz
    ku = ku_carriers(cfg)
    hops_def = {
        "feeder_uplink": (rf.gnb_gateway.eirp_dbw, rf.satellite.g_over_t_dbk, geom.feeder_range_m),
        "service_downlink": (rf.satellite.eirp_dbw, rf.ue_gateway.g_over_t_dbk, geom.service_range_m),
        "service_uplink": (rf.ue_gateway.eirp_dbw, rf.satellite.g_over_t_dbk, geom.service_range_m),
        "feeder_downlink": (rf.satellite.eirp_dbw, rf.gnb_gateway.g_over_t_dbk, geom.feeder_range_m),
    }
    hops = {}
    for name, (eirp, gt, d) in hops_def.items():
        params = LinkBudgetParams(eirp, gt, ku[name], 0.0, bw)
        hops[name] = HopBudget(name, eirp, gt, ku[name], d,
                               fspl_db(ku[name], d), cn0_dbhz(params, d))
    dl_cn0 = combine_cn0_dbhz(hops["feeder_uplink"].cn0_dbhz,
                              hops["service_downlink"].cn0_dbhz) - rf.dl_extra_losses_db
    ul_cn0 = combine_cn0_dbhz(hops["service_uplink"].cn0_dbhz,
                              hops["feeder_downlink"].cn0_dbhz) - rf.ul_extra_losses_db
    return {
        "hops": hops,
        "downlink_cn0_dbhz": dl_cn0,
        "uplink_cn0_dbhz": ul_cn0,
        "downlink_snr_db": snr_db(dl_cn0, bw),
        "uplink_snr_db": snr_db(ul_cn0, bw),
    }
