"""End-to-end NTN run: UE access, traffic and metric collection.

One cell, one UE, one transparent GEO relay. The core network is a
zero-delay endpoint next to the gNB, so a ping terminates there.
"""

from __future__ import annotations

import math
import zlib
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import harq, linkphy, relay, sib19, timing
from .budget import budget_chain, link_geometry
from .constants import TC_S
from .engine import EventEngine

PHASES = ("PoweredOn", "CellSearch", "SibAcquisition", "TaComputed",
          "RachInProgress", "RrcConnected", "PduSessionActive")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_ACCESS = 3
EXIT_RUNTIME = 4


class AccessFailure(RuntimeError):
    pass


class EmptySeries(ValueError):
    pass


def substream(seed: int, name: str) -> np.random.Generator:
    """Independent generator per named consumer, derived from the root seed."""
    return np.random.default_rng(np.random.SeedSequence([int(seed), zlib.crc32(name.encode())]))


@dataclass(frozen=True)
class SearchResult:
    detected: bool
    estimate_hz: float


def prach_frequency_search(residual_hz: float, window_hz: Optional[float] = None,
                           step_hz: float = 100.0, tolerance_hz: float = 625.0) -> SearchResult:
    """gNB PRACH detection with an optional frequency-offset hypothesis search.

    Without a search window the preamble is only found when the offset stays
    within ``tolerance_hz`` (half a PRACH subcarrier). With a window, any
    offset within +/- window/2 is found and estimated to the nearest grid point.
    """
    if window_hz is None:
        return SearchResult(abs(residual_hz) <= tolerance_hz, 0.0)
    if window_hz <= 0 or step_hz <= 0:
        raise ValueError("window and step must be positive")
    if abs(residual_hz) > window_hz / 2:
        return SearchResult(False, 0.0)
    return SearchResult(True, float(round(residual_hz / step_hz) * step_hz))


@dataclass
class UeState:
    phase: str = "PoweredOn"
    rach_attempts: int = 0
    residual_freq_offset_hz: float = 0.0
    ta: Optional[timing.TimingAdvanceComponents] = None

    def advance(self, phase: str):
        cur, new = PHASES.index(self.phase), PHASES.index(phase)
        back_to_sib = self.phase in ("RachInProgress", "TaComputed") and phase == "SibAcquisition"
        if new != cur + 1 and not back_to_sib:
            raise RuntimeError(f"illegal phase transition {self.phase} -> {phase}")
        self.phase = phase


@dataclass(frozen=True)
class MetricSample:
    t_s: float
    dl_throughput_bps: float
    dl_bler: float
    pdsch_snr_db: float
    active_harq: int


@dataclass(frozen=True)
class PingRecord:
    seq: int
    sent_t_s: float
    rtt_s: Optional[float]
    retx_count: int

    @property
    def lost(self) -> bool:
        return self.rtt_s is None


def collect_summary(series) -> dict:
    x = np.asarray([v for v in series if v is not None], dtype=float)
    if x.size == 0:
        raise EmptySeries("no samples")
    return {
        "n": int(x.size),
        "mean": float(x.mean()),
        "std": float(x.std(ddof=1)) if x.size > 1 else 0.0,
        "p5": float(np.percentile(x, 5)),
        "p50": float(np.percentile(x, 50)),
        "p95": float(np.percentile(x, 95)),
        "min": float(x.min()),
        "max": float(x.max()),
    }


@dataclass
class _UlItem:
    seq: int
    kind: str  # "ping" | "background"
    enqueue_t: float
    ping_seq: int = -1


@dataclass
class SimulationResult:
    scenario: object
    seed: int
    status: str = "ok"
    exit_code: int = EXIT_OK
    error: Optional[str] = None
    access_log: list = field(default_factory=list)
    ue: UeState = field(default_factory=UeState)
    metrics: list = field(default_factory=list)
    pings: list = field(default_factory=list)
    ul_records: list = field(default_factory=list)
    info: dict = field(default_factory=dict)
    delivered_bits: int = 0
    offered_bits: int = 0
    max_in_flight: int = 0
    trace_hash: str = ""
    ul_violations: list = field(default_factory=list)


class Simulation:
    def __init__(self, cfg, seed: Optional[int] = None):
        self.cfg = cfg
        self.seed = cfg.seed if seed is None else int(seed)
        self.engine = EventEngine(keep_trace=False)
        self.geom = link_geometry(cfg)
        self.budget = budget_chain(cfg, self.geom)
        self.carrier = linkphy.CarrierConfig(
            bandwidth_hz=cfg.carrier.bandwidth_hz,
            subcarrier_spacing_hz=cfg.carrier.subcarrier_spacing_hz,
            prb_count=cfg.carrier.prb_count,
            overhead_re_per_prb=cfg.carrier.overhead_re_per_prb,
        )
        self.mcs_table = linkphy.MCS_TABLES[cfg.link_adaptation.mcs_table]
        self.result = SimulationResult(cfg, self.seed)
        self.ue = self.result.ue

        h = cfg.harq
        self.grant_period_s = h.grant_period_ms / 1000.0
        self.hold_s = harq.hold_time(self.geom.rtt_s, self.grant_period_s, h.mode_b_enabled)
        self.pool = harq.HarqPool(h.process_count, mode_b_enabled=h.mode_b_enabled)

        self.plan = self._frequency_plan()
        self.ul_freq_error_hz = relay.path_error_hz(self.plan, relay.UPLINK_LEGS)

        self._rng_retx = substream(self.seed, "ul_harq")
        self._rng_snr = substream(self.seed, "snr_fading")
        self._rng_dl = substream(self.seed, "dl_errors")

        self.ta_params: Optional[timing.CommonTaParams] = None
        self.sib19_msg: Optional[sib19.Sib19Message] = None
        self.gnb_ul_offset_s = 0.0
        self._ul_queue: deque = deque()
        self._ul_service_pending = False
        self._ul_blocked_until = 0.0
        self._last_grant = -math.inf
        self._ul_seq = 0
        self._pings_open = 0
        self._traffic_done = False
        self._sib_reacquiring = False

    # ------------------------------------------------------------------ setup

    def _frequency_plan(self) -> relay.FrequencyPlan:
        fp = self.cfg.frequency_plan
        stages = tuple(relay.ConverterStage(
            lo_hz=s.lo_hz, lo_error_bound_hz=s.lo_error_bound_hz, lo_error_min_hz=s.lo_error_min_hz,
            path=s.path, direction=s.direction, name=s.name) for s in fp.stages)
        plan = relay.FrequencyPlan(fp.ue_ul_hz, fp.ue_dl_hz, fp.feeder_ul_hz, fp.feeder_dl_hz, stages)
        rng = substream(self.seed, "lo_errors")
        return plan.with_errors(relay.sample_stage_errors(stages, rng))

    def log(self, text: str):
        self.result.access_log.append(f"{self.engine.now:12.6f} {text}")

    def _enter(self, phase: str):
        self.ue.advance(phase)
        self.log(f"phase {phase}")

    # ---------------------------------------------------------------- access

    def _gnb_sib19(self) -> bytes:
        """Build and encode the SIB19 the gNB broadcasts at the current time."""
        a = self.cfg.access
        feeder_rtt = self.geom.rtt_s - 2.0 * self.geom.service_delay_s
        ta_common = 0.0 if a.gnb_absorbs_feeder else feeder_rtt
        eph = self.geom.ephemeris
        msg = sib19.Sib19Message(
            ta_common_us=ta_common * 1e6,
            ta_common_drift_ppb=0,
            ephemeris=eph,
            epoch_s=int(math.floor(self.engine.now)),
            validity_duration_s=a.sib19_validity_s,
            k_offset_slots=a.k_offset_slots,
            cell_id=a.cell_id,
        )
        return sib19.encode(msg)

    def _acquire_sib19(self):
        wire = self._gnb_sib19()
        msg = sib19.decode(wire)
        self.sib19_msg = msg
        self.ta_params = timing.CommonTaParams(
            ta_common_s=msg.ta_common_us * 1e-6,
            ta_common_drift_s_per_s=msg.ta_common_drift_ppb * 1e-9,
            epoch_s=float(msg.epoch_s),
            validity_duration_s=float(msg.validity_duration_s),
        )
        self.result.info.setdefault("sib19_hex", wire.hex())
        self.log(f"SIB19 decoded epoch={msg.epoch_s} validity={msg.validity_duration_s}s "
                 f"ta_common={msg.ta_common_us:.3f}us")

    def _compute_ta(self):
        now = self.engine.now
        ta_common = timing.common_ta_at(self.ta_params, now)
        ta_ue = timing.ue_specific_ta(self.sib19_msg.ephemeris, self.geom.ue, now)
        self.ue.ta = timing.build_components(ta_common, ta_ue, n_ta=0,
                                             n_ta_offset=self.cfg.access.n_ta_offset)
        # The gNB knows the broadcast common term and absorbs whatever part of
        # the feeder round trip the UE is not told to pre-compensate.
        feeder_rtt = self.geom.rtt_s - 2.0 * self.geom.service_delay_s
        self.gnb_ul_offset_s = feeder_rtt - (self.ue.ta.n_ta_adj_common
                                             + self.ue.ta.n_ta_offset) * TC_S
        look = self.geom.ue_look
        self.log(f"NTN TA common={ta_common * 1e3:.6f} ms TA UE={ta_ue * 1e3:.6f} ms "
                 f"elevation={look.elevation_deg:.3f} deg azimuth={look.azimuth_deg:.3f} deg")
        self.log(f"TA applied N_TA,adj common={self.ue.ta.n_ta_adj_common} "
                 f"N_TA,adj UE={self.ue.ta.n_ta_adj_ue} Tc "
                 f"total={timing.total_timing_advance(self.ue.ta) * 1e3:.6f} ms")

    def ul_alignment_error_s(self) -> float:
        """Arrival offset of a TA-advanced UL frame relative to the gNB UL frame."""
        ta = timing.total_timing_advance(self.ue.ta)
        return self.geom.rtt_s - ta - self.gnb_ul_offset_s

    def _start(self):
        a = self.cfg.access
        self.log("phase PoweredOn")
        self.engine.schedule(a.gnb_startup_s, "cell_active", self._on_cell_active)

    def _on_cell_active(self, ev):
        self.log(f"gNB NGAP/SCTP up, NTN cell {self.cfg.access.cell_id} active")
        self._enter("CellSearch")
        self.engine.schedule_in(self.cfg.access.cell_search_s, "cell_found", self._on_cell_found)

    def _on_cell_found(self, ev):
        self.log(f"cell found PCI/cell_id={self.cfg.access.cell_id} "
                 f"dl={self.cfg.frequency_plan.ue_dl_hz / 1e6:.3f} MHz")
        self._enter("SibAcquisition")
        a = self.cfg.access
        self.engine.schedule_in(a.mib_s, "mib", lambda e: self.log("MIB decoded"))
        self.engine.schedule_in(a.mib_s + a.sib1_s, "sib1", lambda e: self.log("SIB1 decoded"))
        self.engine.schedule_in(a.mib_s + a.sib1_s + a.sib19_s, "sib19", self._on_sib19)

    def _on_sib19(self, ev):
        self._acquire_sib19()
        self._enter("TaComputed")
        self._compute_ta()
        self.result.info["ul_alignment_error_s"] = self.ul_alignment_error_s()
        self.engine.schedule_in(0.0, "rach_attempt", self._on_rach_attempt)

    def _on_rach_attempt(self, ev):
        a = self.cfg.access
        now = self.engine.now
        if now > self.ta_params.expires_at():
            self.log("SIB19 epoch stale before PRACH, reacquiring")
            self._enter("SibAcquisition")
            self.engine.schedule_in(a.sib19_s, "sib19", self._on_sib19)
            return
        if self.ue.phase != "RachInProgress":
            self._enter("RachInProgress")
        self.ue.rach_attempts += 1
        residual = (a.injected_freq_offset_hz if a.injected_freq_offset_hz is not None
                    else self.ul_freq_error_hz)
        self.result.info["injected_residual_hz"] = residual
        window = a.search_window_hz if a.large_freq_shift else None
        found = prach_frequency_search(residual, window, a.search_step_hz, a.prach_tolerance_hz)
        self.log(f"PRACH attempt {self.ue.rach_attempts} residual={residual:.1f} Hz "
                 f"search={'on' if window else 'off'}")
        self.result.ul_violations.extend(self._check_ul_allowed(now, "prach"))
        rtt = self.geom.rtt_s
        if found.detected:
            self.ue.residual_freq_offset_hz = residual - found.estimate_hz
            self.result.info["estimated_offset_hz"] = found.estimate_hz
            self.log(f"RAR received, gNB frequency estimate={found.estimate_hz:.1f} Hz")
            self.engine.schedule_in(rtt * (1 + a.rrc_round_trips), "rrc_connected",
                                    self._on_rrc_connected)
        else:
            self.log("RAR window expired, no preamble detected")
            if self.ue.rach_attempts >= a.max_rach_attempts:
                self.engine.schedule_in(rtt, "access_failure", self._on_access_failure)
            else:
                self.engine.schedule_in(rtt + a.rach_backoff_s, "rach_attempt", self._on_rach_attempt)

    def _on_access_failure(self, ev):
        self.log(f"AccessFailure after {self.ue.rach_attempts} PRACH attempts")
        self.result.status = "access_failure"
        self.result.exit_code = EXIT_ACCESS
        self.result.error = (f"AccessFailure: preamble not detected after "
                             f"{self.ue.rach_attempts} attempts")

    def _on_rrc_connected(self, ev):
        self._enter("RrcConnected")
        self.engine.schedule_in(self.geom.rtt_s * self.cfg.access.pdu_session_round_trips,
                                "pdu_session", self._on_pdu_session)

    def _on_pdu_session(self, ev):
        self._enter("PduSessionActive")
        self.log("PDU session established, UE IP assigned")
        self.result.info["access_complete_t_s"] = self.engine.now
        self._start_traffic()

    # ------------------------------------------------------- SIB19 upkeep

    def _check_ul_allowed(self, t: float, what: str) -> list:
        problems = []
        if self.ue.ta is None:
            problems.append(f"{what} at {t:.6f} before TA was applied")
        if self.ta_params is None or t > self.ta_params.expires_at():
            problems.append(f"{what} at {t:.6f} with stale SIB19")
        return problems

    def _schedule_sib19_refresh(self):
        a = self.cfg.access
        start = max(self.engine.now, self.ta_params.expires_at() - a.sib19_s - 1.0)
        self.engine.schedule(start, "sib19_refresh", self._on_sib19_refresh)

    def _on_sib19_refresh(self, ev):
        if self._traffic_done:
            return
        self.engine.schedule_in(self.cfg.access.sib19_s, "sib19_refreshed", self._on_sib19_refreshed)

    def _on_sib19_refreshed(self, ev):
        self._acquire_sib19()
        self._compute_ta()
        self._sib_reacquiring = False
        if self.cfg.access.sib19_auto_refresh:
            self._schedule_sib19_refresh()
        self._kick_ul()

    # ------------------------------------------------------------- traffic

    def _start_traffic(self):
        t0 = self.engine.now
        tr = self.cfg.traffic
        if self.cfg.access.sib19_auto_refresh:
            self._schedule_sib19_refresh()
        for _ in range(self.cfg.harq.background_window):
            self._enqueue_ul("background")
        self._dl_start = t0
        self._dl_end = t0 + tr.fullbuffer_duration_s
        if tr.fullbuffer_duration_s > 0:
            self._init_dl()
            self.engine.schedule(t0, "dl_block", self._on_dl_block)
        ping_start = self._dl_end
        self._pings_open = tr.ping_count
        self.result.pings = [None] * tr.ping_count
        for i in range(tr.ping_count):
            self.engine.schedule(ping_start + i * tr.ping_interval_s, "ping_send",
                                 self._on_ping_send, i)
        if tr.ping_count == 0:
            self.engine.schedule(self._dl_end, "traffic_done", self._on_traffic_done)

    def _on_traffic_done(self, ev=None):
        self._traffic_done = True

    def _on_ping_send(self, ev):
        self._enqueue_ul("ping", ping_seq=ev.payload)

    def _enqueue_ul(self, kind: str, ping_seq: int = -1):
        item = _UlItem(self._ul_seq, kind, self.engine.now, ping_seq)
        self._ul_seq += 1
        self._ul_queue.append(item)
        self._kick_ul()

    def _kick_ul(self):
        if self._ul_service_pending or not self._ul_queue:
            return
        t = max(self.engine.now, self._last_grant + self.grant_period_s)
        self._ul_service_pending = True
        self.engine.schedule(harq.next_grant(t, self.grant_period_s), "ul_grant", self._on_ul_grant)

    def _on_ul_grant(self, ev):
        self._ul_service_pending = False
        if not self._ul_queue:
            return
        now = self.engine.now
        if self.ta_params is not None and now > self.ta_params.expires_at():
            if not self._sib_reacquiring:
                self._sib_reacquiring = True
                self.log("SIB19 validity expired, UL suspended for reacquisition")
                self.engine.schedule_in(self.cfg.access.sib19_s, "sib19_refreshed",
                                        self._on_sib19_refreshed)
            return
        acq = harq.acquire(self.pool, now)
        if acq.available_at > now:
            t = max(acq.available_at, self._last_grant + self.grant_period_s)
            self._ul_service_pending = True
            self.engine.schedule(harq.next_grant(t, self.grant_period_s), "ul_grant", self._on_ul_grant)
            return
        item = self._ul_queue.popleft()
        h = self.cfg.harq
        k, lost = harq.sample_failures(h.ul_bler, h.max_retx, self._rng_retx)
        self.pool = harq.commit_transmission(self.pool, acq.process_id, now, self.hold_s, k)
        self._last_grant = now
        self.result.max_in_flight = max(self.result.max_in_flight, self.pool.in_flight(now))
        self.result.ul_violations.extend(self._check_ul_allowed(now, "pusch"))
        release = now + (k + 1) * self.hold_s
        complete = release if lost else now + k * self.hold_s + self.geom.one_way_s
        self.result.ul_records.append(harq.UlTransmissionRecord(
            item.seq, item.enqueue_t, now, now, complete, k, acq.process_id, item.kind, lost))
        if item.kind == "ping":
            self.engine.schedule(complete, "ping_ul_done", self._on_ping_ul_done,
                                 (item, k, lost))
        elif not self._traffic_done:
            self.engine.schedule(release, "bg_release", self._on_bg_release)
        self._kick_ul()

    def _on_bg_release(self, ev):
        if not self._traffic_done:
            self._enqueue_ul("background")

    def _on_ping_ul_done(self, ev):
        item, k, lost = ev.payload
        rtt = None if lost else self.engine.now + self.geom.one_way_s - item.enqueue_t
        self.result.pings[item.ping_seq] = PingRecord(item.ping_seq, item.enqueue_t, rtt, k)
        self._pings_open -= 1
        if self._pings_open == 0:
            self._on_traffic_done()

    # ------------------------------------------------------- downlink PHY

    def _init_dl(self):
        la = self.cfg.link_adaptation
        fid = self.cfg.fidelity
        self._block_s = 1.0 / self.carrier.slots_per_second if fid.high_fidelity else fid.block_s
        self._slots_per_block = max(1, int(round(self._block_s * self.carrier.slots_per_second)))
        self._blocks_per_second = int(round(1.0 / self._block_s))
        self._mean_snr = (la.snr_override_db if la.snr_override_db is not None
                          else self.budget["downlink_snr_db"])
        self._rho_b = la.snr_rho ** self._block_s
        self._innov = la.snr_sigma_db * math.sqrt(max(0.0, 1.0 - self._rho_b ** 2))
        self._fade = float(self._rng_snr.normal(0.0, la.snr_sigma_db)) if la.snr_sigma_db > 0 else 0.0
        csi_delay = la.csi_delay_s if la.csi_delay_s is not None else self.geom.rtt_s
        self._csi_blocks = int(round(csi_delay / self._block_s))
        self._snr_hist = deque(maxlen=self._csi_blocks + 1)
        self._block_idx = 0
        self._sec = {"bits": 0, "tbs": 0, "err": 0, "snr": 0.0, "n": 0}
        self._dl_retx = deque()

    def _on_dl_block(self, ev):
        la = self.cfg.link_adaptation
        now = self.engine.now
        if self._block_idx > 0 and la.snr_sigma_db > 0:
            self._fade = self._rho_b * self._fade + float(self._rng_snr.normal(0.0, self._innov))
        snr = self._mean_snr + self._fade
        self._snr_hist.append(snr)
        reported = self._snr_hist[0]
        mcs = linkphy.select_mcs(reported, self.mcs_table, la.backoff_db, la.gap_db)
        tbs = linkphy.transport_block_bits(self.carrier, mcs)
        p = linkphy.bler(snr, mcs, la.bler_slope_db, la.gap_db)
        slots = self._slots_per_block
        retx_slots = 0
        if self.cfg.harq.dl_harq == "on":
            while self._dl_retx and self._dl_retx[0][0] <= now + 1e-12 and retx_slots < slots:
                due, n, bits = self._dl_retx.popleft()
                take = min(n, slots - retx_slots)
                ok = int(self._rng_dl.binomial(take, 1.0 - p))
                self._sec["bits"] += ok * bits
                self.result.delivered_bits += ok * bits
                retx_slots += take
                if n > take:
                    self._dl_retx.appendleft((due, n - take, bits))
        new = slots - retx_slots
        errs = int(self._rng_dl.binomial(new, p)) if p > 0 else 0
        if self.cfg.harq.dl_harq == "on" and errs:
            self._dl_retx.append((now + self.geom.rtt_s, errs, tbs))
        good_bits = (new - errs) * tbs
        self.result.delivered_bits += good_bits
        self.result.offered_bits += new * tbs
        s = self._sec
        s["bits"] += good_bits
        s["tbs"] += new
        s["err"] += errs
        s["snr"] += snr
        s["n"] += 1
        self._block_idx += 1
        if self._block_idx % self._blocks_per_second == 0:
            t = now + self._block_s
            self.result.metrics.append(MetricSample(
                t_s=t - self._dl_start,
                dl_throughput_bps=float(s["bits"]),
                dl_bler=s["err"] / s["tbs"] if s["tbs"] else 0.0,
                pdsch_snr_db=s["snr"] / s["n"],
                active_harq=self.pool.in_flight(t),
            ))
            self._sec = {"bits": 0, "tbs": 0, "err": 0, "snr": 0.0, "n": 0}
        nxt = self._dl_start + self._block_idx * self._block_s
        if nxt < self._dl_end - 1e-9:
            self.engine.schedule(nxt, "dl_block", self._on_dl_block)

    # ----------------------------------------------------------------- run

    def horizon_s(self) -> float:
        a, tr, h = self.cfg.access, self.cfg.traffic, self.cfg.harq
        access = (a.gnb_startup_s + a.cell_search_s + a.mib_s + a.sib1_s + a.sib19_s
                  + a.max_rach_attempts * (self.geom.rtt_s + a.rach_backoff_s + a.sib19_s)
                  + (2 + a.rrc_round_trips + a.pdu_session_round_trips) * self.geom.rtt_s)
        traffic = tr.fullbuffer_duration_s + tr.ping_count * tr.ping_interval_s
        drain = (tr.ping_count + h.background_window + 1) * (h.max_retx + 1) * self.hold_s + 60.0
        return access + traffic + drain

    def run(self) -> SimulationResult:
        self._start()
        self.engine.run_until(self.horizon_s())
        r = self.result
        r.trace_hash = self.engine.trace_hash()
        if r.status == "ok" and self.ue.phase != "PduSessionActive":
            r.status, r.exit_code = "runtime_error", EXIT_RUNTIME
            r.error = f"UE stuck in {self.ue.phase}"
        if r.status == "ok" and any(p is None for p in r.pings):
            r.status, r.exit_code = "runtime_error", EXIT_RUNTIME
            r.error = "simulation horizon reached with pings outstanding"
        g = self.geom
        r.info.update({
            "feeder_range_m": g.feeder_range_m,
            "service_range_m": g.service_range_m,
            "one_way_delay_s": g.one_way_s,
            "propagation_rtt_s": g.rtt_s,
            "harq_hold_s": self.hold_s,
            "ue_elevation_deg": g.ue_look.elevation_deg,
            "ue_azimuth_deg": g.ue_look.azimuth_deg,
            "gnb_elevation_deg": g.gnb_look.elevation_deg,
            "ground_separation_m": g.ground_separation_m,
            "ul_lo_error_hz": self.ul_freq_error_hz,
            "stage_lo_errors_hz": {s.name or f"{s.path}_{s.direction}": s.lo_error_hz
                                   for s in self.plan.converter_stages},
            "downlink_snr_budget_db": self.budget["downlink_snr_db"],
            "uplink_snr_budget_db": self.budget["uplink_snr_db"],
            "rach_attempts": self.ue.rach_attempts,
            "final_phase": self.ue.phase,
        })
        if self.ue.ta is not None:
            r.info["ta_total_s"] = timing.total_timing_advance(self.ue.ta)
            r.info["n_ta_adj_common"] = self.ue.ta.n_ta_adj_common
            r.info["n_ta_adj_ue"] = self.ue.ta.n_ta_adj_ue
        return r


def run_scenario(cfg, seed: Optional[int] = None) -> SimulationResult:
    return Simulation(cfg, seed).run()
