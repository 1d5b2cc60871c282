import json
import subprocess
import sys

import pytest

from ntnsim.cli import cmd_run, cmd_run_all, main
from ntnsim.output import RUN_FILES
from ntnsim.report import IncompleteRun, cmd_report
from ntnsim.sib19 import render_readable
from test_sib19 import GOLDEN_HEX, golden_message

EXPECTED_EXIT = {"geo_default": 0, "geo_ideal": 0, "freq_fault": 3}


@pytest.fixture(scope="module")
def default_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("runs") / "geo_default"
    assert cmd_run("geo_default", out, quiet=True) == 0
    return out


def test_run_writes_all_files(default_dir):
    for f in RUN_FILES:
        assert (default_dir / f).is_file()
    summary = json.loads((default_dir / "summary.json").read_text())
    assert summary["status"] == "ok" and summary["exit_code"] == 0
    assert summary["config"]["rf"]["satellite"]["eirp_dbw"] == 54.0
    header = (default_dir / "metrics.csv").read_text().splitlines()[0]
    assert header == "t_s,dl_throughput_bps,dl_bler,pdsch_snr_db,active_harq"
    assert (default_dir / "ping.csv").read_text().splitlines()[0] == "seq,sent_t_s,rtt_ms,retx_count"


def test_csv_fixed_decimals(default_dir):
    row = (default_dir / "metrics.csv").read_text().splitlines()[1].split(",")
    assert all(len(v.split(".")[1]) == 6 for v in row[:4])


def test_freq_fault_exit_and_error(tmp_path):
    assert cmd_run("freq_fault", tmp_path, quiet=True) == 3
    summary = json.loads((tmp_path / "summary.json").read_text())
    assert summary["status"] == "access_failure"
    assert "AccessFailure" in summary["error"]
    assert "AccessFailure" in (tmp_path / "access.log").read_text()


def test_seed_override_changes_output(tmp_path, default_dir):
    cmd_run("geo_default", tmp_path, seed=7, quiet=True)
    assert json.loads((tmp_path / "summary.json").read_text())["seed"] == 7
    assert (tmp_path / "ping.csv").read_bytes() != (default_dir / "ping.csv").read_bytes()


def test_report_deterministic_and_flags_band(default_dir):
    a, b = cmd_report(default_dir), cmd_report(default_dir)
    assert a == b
    line = next(ln for ln in a.splitlines() if ln.startswith("rtt_mean"))
    assert "[0.85, 1.2]" in line and line.rstrip().endswith(("PASS", "FAIL"))


def test_report_incomplete(tmp_path, default_dir):
    for f in RUN_FILES:
        if f != "ping.csv":
            (tmp_path / f).write_bytes((default_dir / f).read_bytes())
    with pytest.raises(IncompleteRun) as exc:
        cmd_report(tmp_path)
    assert exc.value.missing == ["ping.csv"]
    assert main(["report", str(tmp_path)]) == 2


def test_run_all_parallel(tmp_path):
    codes = cmd_run_all(["geo_ideal", "freq_fault"], tmp_path, jobs=2)
    assert codes == {"geo_ideal": 0, "freq_fault": 3}
    assert (tmp_path / "geo_ideal" / "summary.json").is_file()


def test_every_shipped_scenario_exit_code(tmp_path):
    for name, code in EXPECTED_EXIT.items():
        assert cmd_run(name, tmp_path / name, quiet=True) == code


def test_env_output_root(tmp_path, monkeypatch):
    monkeypatch.setenv("NTNSIM_OUTPUT_ROOT", str(tmp_path))
    assert main(["run", "freq_fault"]) == 3
    assert (tmp_path / "freq_fault" / "summary.json").is_file()


def test_sib19_subcommands(tmp_path, capsys):
    f = tmp_path / "msg.txt"
    f.write_text(render_readable(golden_message()))
    assert main(["sib19", "encode", str(f)]) == 0
    assert capsys.readouterr().out.strip() == GOLDEN_HEX
    assert main(["sib19", "decode", GOLDEN_HEX]) == 0
    assert capsys.readouterr().out == render_readable(golden_message())
    assert main(["sib19", "decode", GOLDEN_HEX[:-2] + "00"]) == 2


def test_linkbudget_and_geometry(capsys):
    assert main(["linkbudget", "geo_default"]) == 0
    out = capsys.readouterr().out
    for token in ("feeder_uplink", "service_downlink", "FSPL", "C/N0", "MCS 8", "Mbps"):
        assert token in out
    assert main(["geometry", "geo_default"]) == 0
    assert "round-trip delay" in capsys.readouterr().out


def test_bad_scenario_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.yaml"
    bad.write_text("name: x\n")
    assert main(["run", str(bad)]) == 2
    assert "error" in capsys.readouterr().err
    assert main(["run", "no_such_scenario"]) == 2


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ntnsim.cli", "geometry", "geo_ideal"],
                          capture_output=True, text=True, check=True)
    assert "UE elevation" in proc.stdout
