"""End-to-end CLI tests via subprocess."""
from __future__ import annotations

import json
import subprocess
import sys

from mzqfi import read_records


def run_cli(*args, cwd=None):
    return subprocess.run(
        [sys.executable, "-m", "mzqfi.cli", *args],
        capture_output=True, text=True, cwd=cwd,
    )


def test_version_flag():
    proc = run_cli("--version")
    assert proc.returncode == 0
    assert "mzqfi" in proc.stdout


def test_eval_both_methods():
    proc = run_cli("eval", "--alpha", "0.3", "--T", "0.83",
                   "--omega", "1.0", "--method", "both")
    assert proc.returncode == 0
    assert "F_analytic" in proc.stdout
    assert "F_numeric" in proc.stdout
    assert "abs_err" in proc.stdout


def test_eval_requires_alpha():
    proc = run_cli("eval")
    assert proc.returncode == 2
    assert "alpha is required" in proc.stderr


def test_domain_error_exit_code_and_message():
    proc = run_cli("eval", "--alpha", "0.3", "--T", "1.2")
    assert proc.returncode == 2
    assert "T must lie in [0,1]" in proc.stderr


def test_missing_config_is_io_error():
    proc = run_cli("eval", "--alpha", "0.3", "--config", "does_not_exist.cfg")
    assert proc.returncode == 3


def test_config_file_with_flag_override(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# defaults\nalpha = 0.3\nT = 0.83\nomega = 1.0\n")
    base = run_cli("eval", "--config", str(cfg))
    assert base.returncode == 0
    assert "T=0.83" in base.stdout
    override = run_cli("eval", "--config", str(cfg), "--T", "1.0")
    assert override.returncode == 0
    assert "T=1 " in override.stdout


def test_bad_config_entries(tmp_path):
    bad_key = tmp_path / "bad_key.cfg"
    bad_key.write_text("not_a_flag = 1\n")
    proc = run_cli("eval", "--alpha", "0.3", "--config", str(bad_key))
    assert proc.returncode == 2
    assert "unknown config key" in proc.stderr
    malformed = tmp_path / "malformed.cfg"
    malformed.write_text("alpha 0.3\n")
    proc = run_cli("eval", "--config", str(malformed))
    assert proc.returncode == 2
    assert "expected key=value" in proc.stderr


def test_eval_writes_readable_output(tmp_path):
    out = tmp_path / "point.csv"
    proc = run_cli("eval", "--alpha", "0.3", "--omega", "1.0", "--T", "0.9",
                   "--method", "analytic", "--out", str(out))
    assert proc.returncode == 0
    records, _ = read_records(str(out))
    assert len(records) == 1
    assert records[0].T == 0.9
    assert records[0].F_numeric is None


def test_scan_outputs_optimum(tmp_path):
    out = tmp_path / "scan.csv"
    proc = run_cli("scan", "--alpha", "0.3", "--omega", "2.0",
                   "--T", "0.83", "--out", str(out))
    assert proc.returncode == 0
    assert "phi_m" in proc.stdout
    assert "F_max" in proc.stdout
    records, _ = read_records(str(out))
    assert len(records) == 201


def test_figure_json_includes_meta(tmp_path):
    proc = run_cli("figure", "fig2b", "--format", "json", cwd=tmp_path)
    assert proc.returncode == 0
    payload = json.loads((tmp_path / "fig2b.json").read_text())
    assert payload["meta"]["figure"] == "fig2b"
    assert len(payload["records"]) == 320


def test_validate_fast_exits_clean():
    proc = run_cli("validate", "--level", "fast")
    assert proc.returncode == 0
    assert "checks passed" in proc.stdout
    assert "FAIL" not in proc.stdout
