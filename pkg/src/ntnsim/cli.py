"""``ntnsim`` command line.

Exit codes: 0 success, 2 invalid input, 3 access failure, 4 runtime failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import linkphy, sib19
from .budget import budget_chain, link_geometry
from .output import write_run
from .report import IncompleteRun, cmd_report
from .scenario import ScenarioError, builtin_scenario_path, builtin_scenarios, parse_scenario
from .sim import EXIT_CONFIG, EXIT_OK, EXIT_RUNTIME, Simulation

OUTPUT_ENV = "NTNSIM_OUTPUT_ROOT"


def output_root() -> Path:
    return Path(os.environ.get(OUTPUT_ENV, "ntnsim-runs"))


def resolve_scenario(ref: str) -> Path:
    """A path on disk, or the name of a shipped scenario."""
    p = Path(ref)
    if p.is_file():
        return p
    if ref in builtin_scenarios():
        return builtin_scenario_path(ref)
    raise ScenarioError(f"no scenario file or built-in scenario named {ref!r}")


def cmd_run(scenario, out_dir=None, seed=None, quiet=False) -> int:
    cfg = parse_scenario(resolve_scenario(str(scenario)))
    out = Path(out_dir) if out_dir else output_root() / cfg.name
    result = Simulation(cfg, seed).run()
    write_run(result, out)
    if not quiet:
        print(f"{cfg.name}: {result.status} -> {out}")
        if result.error:
            print(f"error: {result.error}", file=sys.stderr)
    return result.exit_code


def _run_one(args):
    name, out, seed = args
    try:
        return name, cmd_run(name, out, seed, quiet=True)
    except ScenarioError as exc:
        print(f"{name}: {exc}", file=sys.stderr)
        return name, EXIT_CONFIG


def cmd_run_all(names=None, out_root=None, seed=None, jobs=None) -> dict:
    names = names or builtin_scenarios()
    root = Path(out_root) if out_root else output_root()
    work = [(n, root / Path(n).stem, seed) for n in names]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return dict(pool.map(_run_one, work))


def format_linkbudget(cfg) -> str:
    geom = link_geometry(cfg)
    b = budget_chain(cfg, geom)
    carrier = linkphy.CarrierConfig(cfg.carrier.bandwidth_hz, cfg.carrier.subcarrier_spacing_hz,
                                    cfg.carrier.prb_count, overhead_re_per_prb=cfg.carrier.overhead_re_per_prb)
    la = cfg.link_adaptation
    table = linkphy.MCS_TABLES[la.mcs_table]
    lines = [f"{'hop':<18}{'f [GHz]':>9}{'range [km]':>12}{'EIRP [dBW]':>12}"
             f"{'G/T [dB/K]':>12}{'FSPL [dB]':>11}{'C/N0 [dBHz]':>13}"]
    for h in b["hops"].values():
        lines.append(f"{h.name:<18}{h.carrier_hz / 1e9:>9.3f}{h.distance_m / 1e3:>12.1f}"
                     f"{h.eirp_dbw:>12.2f}{h.g_over_t_dbk:>12.2f}{h.fspl_db:>11.2f}{h.cn0_dbhz:>13.2f}")
    lines.append("")
    for d, extra in (("downlink", cfg.rf.dl_extra_losses_db), ("uplink", cfg.rf.ul_extra_losses_db)):
        snr = b[f"{d}_snr_db"]
        mcs = linkphy.select_mcs(snr, table, la.backoff_db, la.gap_db)
        thr = linkphy.theoretical_throughput_bps(carrier, mcs)
        lines.append(f"{d:<9} C/N0 {b[f'{d}_cn0_dbhz']:.2f} dBHz (after {extra:.1f} dB extra loss)  "
                     f"SNR {snr:.2f} dB  MCS {mcs.index} (Qm={mcs.modulation_order}, "
                     f"R={mcs.code_rate:.3f})  {thr / 1e6:.3f} Mbps")
    return "\n".join(lines)


def format_geometry(cfg) -> str:
    g = link_geometry(cfg)
    rows = [
        ("satellite longitude [deg]", f"{cfg.sites.satellite_longitude_deg:.3f}"),
        ("gNB elevation / azimuth [deg]", f"{g.gnb_look.elevation_deg:.3f} / {g.gnb_look.azimuth_deg:.3f}"),
        ("UE elevation / azimuth [deg]", f"{g.ue_look.elevation_deg:.3f} / {g.ue_look.azimuth_deg:.3f}"),
        ("feeder slant range [km]", f"{g.feeder_range_m / 1e3:.3f}"),
        ("service slant range [km]", f"{g.service_range_m / 1e3:.3f}"),
        ("gNB-UE ground distance [km]", f"{g.ground_separation_m / 1e3:.1f}"),
        ("one-way delay [ms]", f"{g.one_way_s * 1e3:.3f}"),
        ("round-trip delay [ms]", f"{g.rtt_s * 1e3:.3f}"),
    ]
    return "\n".join(f"{k:<32}{v}" for k, v in rows)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ntnsim", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run one scenario")
    p.add_argument("scenario", help="scenario file or built-in name")
    p.add_argument("-o", "--out", help=f"output directory (default ${OUTPUT_ENV}/<name>)")
    p.add_argument("--seed", type=int)

    p = sub.add_parser("run-all", help="run several scenarios in parallel")
    p.add_argument("scenarios", nargs="*", help="default: every built-in scenario")
    p.add_argument("-o", "--out", help="output root")
    p.add_argument("--seed", type=int)
    p.add_argument("-j", "--jobs", type=int)

    p = sub.add_parser("report", help="summarize a run directory")
    p.add_argument("run_dir")

    for name, text in (("linkbudget", "print the link budget chain"),
                       ("geometry", "print site geometry and delays")):
        p = sub.add_parser(name, help=text)
        p.add_argument("scenario")

    p = sub.add_parser("sib19", help="SIB19 codec utilities")
    s = p.add_subparsers(dest="action", required=True)
    e = s.add_parser("encode", help="readable key=value file to hex")
    e.add_argument("file")
    d = s.add_parser("decode", help="hex to readable key=value text")
    d.add_argument("hex")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "run":
            return cmd_run(args.scenario, args.out, args.seed)
        if args.command == "run-all":
            codes = cmd_run_all(args.scenarios, args.out, args.seed, args.jobs)
            for name, code in codes.items():
                print(f"{name:<24}exit {code}")
            return max(codes.values(), default=EXIT_OK)
        if args.command == "report":
            print(cmd_report(args.run_dir), end="")
            return EXIT_OK
        if args.command in ("linkbudget", "geometry"):
            cfg = parse_scenario(resolve_scenario(args.scenario))
            print(format_linkbudget(cfg) if args.command == "linkbudget" else format_geometry(cfg))
            return EXIT_OK
        if args.action == "encode":
            print(sib19.encode(sib19.parse_readable(Path(args.file).read_text())).hex())
        else:
            print(sib19.render_readable(sib19.decode(bytes.fromhex(args.hex.strip()))), end="")
        return EXIT_OK
    except (ScenarioError, sib19.Sib19Error, IncompleteRun, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as exc:  # noqa: BLE001 - reported as a runtime failure
        print(f"runtime failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
