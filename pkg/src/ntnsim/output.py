"""Run-directory writer.

Every float goes through ``_fmt`` so the files are byte-stable for a given
scenario and seed.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

from . import __version__
from .scenario import scenario_to_dict
from .sim import EmptySeries, SimulationResult, collect_summary

RUN_FILES = ("metrics.csv", "ping.csv", "ul_harq.csv", "access.log", "summary.json")


def _fmt(x: float) -> str:
    return f"{x:.6f}"


def _round(obj):
    if isinstance(obj, float):
        return float(_fmt(obj))
    if isinstance(obj, dict):
        return {str(k): _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    return obj


def _stats(values) -> dict | None:
    try:
        return collect_summary(values)
    except EmptySeries:
        return None


def summarize(result: SimulationResult) -> dict:
    pings = [p for p in result.pings if p is not None]
    rtts = [p.rtt_s for p in pings if p.rtt_s is not None]
    m = result.metrics
    bw = result.scenario.carrier.bandwidth_hz
    thr = _stats([s.dl_throughput_bps for s in m])
    duration = len(m)
    return {
        "scenario": result.scenario.name,
        "seed": result.seed,
        "status": result.status,
        "exit_code": result.exit_code,
        "error": result.error,
        "tool_version": __version__,
        "dl_throughput_bps": thr,
        "dl_spectral_efficiency_bps_hz": thr["mean"] / bw if thr else None,
        "dl_bler": _stats([s.dl_bler for s in m]),
        "pdsch_snr_db": _stats([s.pdsch_snr_db for s in m]),
        "dl_delivered_bits": result.delivered_bits,
        "dl_offered_bits": result.offered_bits,
        "dl_duration_s": float(duration),
        "ping_rtt_s": _stats(rtts),
        "ping_sent": len(pings),
        "ping_lost": sum(p.lost for p in pings),
        "ul_transmissions": len(result.ul_records),
        "harq_max_in_flight": result.max_in_flight,
        "ul_violations": list(result.ul_violations),
        "info": result.info,
        "config": scenario_to_dict(result.scenario),
    }


def write_run(result: SimulationResult, out_dir) -> Path:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    with open(out / "metrics.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["t_s", "dl_throughput_bps", "dl_bler", "pdsch_snr_db", "active_harq"])
        for s in result.metrics:
            w.writerow([_fmt(s.t_s), _fmt(s.dl_throughput_bps), _fmt(s.dl_bler),
                        _fmt(s.pdsch_snr_db), s.active_harq])

    with open(out / "ping.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["seq", "sent_t_s", "rtt_ms", "retx_count"])
        for p in result.pings:
            if p is None:
                continue
            w.writerow([p.seq, _fmt(p.sent_t_s), "lost" if p.lost else _fmt(p.rtt_s * 1e3),
                        p.retx_count])

    with open(out / "ul_harq.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["seq", "kind", "enqueue_t", "grant_t", "tx_t", "complete_t",
                    "retx_count", "process_id", "lost"])
        for r in result.ul_records:
            w.writerow([r.seq, r.kind, _fmt(r.enqueue_t), _fmt(r.grant_t), _fmt(r.tx_t),
                        _fmt(r.complete_t), r.retx_count, r.process_id, int(r.lost)])

    (out / "access.log").write_text("\n".join(result.access_log) + "\n")
    (out / "summary.json").write_text(
        json.dumps(_round(summarize(result)), sort_keys=True, indent=2) + "\n")
    return out
