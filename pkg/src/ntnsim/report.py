"""Text report regenerated from a finished run directory."""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

from .output import RUN_FILES
from .sim import EmptySeries, collect_summary


class IncompleteRun(FileNotFoundError):
    def __init__(self, missing):
        self.missing = list(missing)
        super().__init__("run directory incomplete, missing: " + ", ".join(self.missing))


@dataclass(frozen=True)
class Check:
    name: str
    value: float | None
    lo: float | None
    hi: float | None
    unit: str = ""

    @property
    def passed(self) -> bool:
        if self.value is None:
            return False
        return (self.lo is None or self.value >= self.lo) and (self.hi is None or self.value <= self.hi)

    def band(self) -> str:
        lo = "-inf" if self.lo is None else f"{self.lo:g}"
        hi = "+inf" if self.hi is None else f"{self.hi:g}"
        return f"[{lo}, {hi}]"


def _read_csv(path: Path) -> list[dict]:
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def _col(rows, key, scale=1.0):
    out = []
    for r in rows:
        v = r[key]
        out.append(None if v == "lost" else float(v) * scale)
    return out


def acceptance_checks(stats: dict) -> list[Check]:
    rtt, thr, bler = stats.get("rtt_s"), stats.get("throughput_bps"), stats.get("bler")
    g = lambda d, k: None if d is None else d[k]  # noqa: E731
    se = None if thr is None else thr["mean"] / stats["bandwidth_hz"]
    return [
        Check("rtt_mean", g(rtt, "mean"), 0.85, 1.20, "s"),
        Check("rtt_std", g(rtt, "std"), 0.19, 0.45, "s"),
        Check("rtt_min", g(rtt, "min"), 0.5, None, "s"),
        Check("rtt_max", g(rtt, "max"), None, 2.2, "s"),
        Check("throughput_mean", None if thr is None else thr["mean"] / 1e6, 4.2, 6.4, "Mbps"),
        Check("spectral_efficiency", se, 0.84, 1.28, "bps/Hz"),
        Check("bler_mean", g(bler, "mean"), None, 0.01, ""),
    ]


def load_run(run_dir) -> dict:
    run = Path(run_dir)
    missing = [f for f in RUN_FILES if not (run / f).is_file()]
    if missing:
        raise IncompleteRun(missing)
    summary = json.loads((run / "summary.json").read_text())
    metrics = _read_csv(run / "metrics.csv")
    pings = _read_csv(run / "ping.csv")

    def stats(values):
        try:
            return collect_summary(values)
        except EmptySeries:
            return None

    return {
        "summary": summary,
        "throughput_bps": stats(_col(metrics, "dl_throughput_bps")),
        "bler": stats(_col(metrics, "dl_bler")),
        "snr_db": stats(_col(metrics, "pdsch_snr_db")),
        "rtt_s": stats(_col(pings, "rtt_ms", 1e-3)),
        "ping_lost": sum(1 for p in pings if p["rtt_ms"] == "lost"),
        "ping_sent": len(pings),
        "bandwidth_hz": summary["config"]["carrier"]["bandwidth_hz"],
    }


def cmd_report(run_dir) -> str:
    st = load_run(run_dir)
    s = st["summary"]
    lines = [
        f"scenario   {s['scenario']}   seed {s['seed']}   status {s['status']}   "
        f"ntnsim {s['tool_version']}",
        "",
        f"{'quantity':<22}{'mean':>12}{'std':>12}{'min':>12}{'max':>12}",
    ]
    rows = [
        ("throughput [Mbps]", st["throughput_bps"], 1e-6),
        ("ping RTT [ms]", st["rtt_s"], 1e3),
        ("DL BLER [%]", st["bler"], 100.0),
        ("PDSCH SNR [dB]", st["snr_db"], 1.0),
    ]
    for label, d, k in rows:
        if d is None:
            lines.append(f"{label:<22}{'n/a':>12}")
            continue
        lines.append(f"{label:<22}" + "".join(f"{d[c] * k:>12.3f}" for c in ("mean", "std", "min", "max")))
    lines.append(f"pings lost             {st['ping_lost']} of {st['ping_sent']}")
    lines += ["", f"{'check':<22}{'value':>12}  {'band':<20}result"]
    for c in acceptance_checks(st):
        val = "n/a" if c.value is None else f"{c.value:.4f}"
        lines.append(f"{c.name:<22}{val:>12}  {c.band() + ' ' + c.unit:<20}"
                     f"{'PASS' if c.passed else 'FAIL'}")
    return "\n".join(lines) + "\n"
