"""CLI surface: subcommands, flags, exit codes, output wiring."""
import json
import subprocess
import sys

import pytest

import zsig.cli as cli
from zsig.cli import cli_dispatch, main
from zsig.verification import CheckResult


def run(capsys, *argv):
    rc = main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def test_orbit_command(capsys):
    rc, out, _ = run(capsys, "orbit", "--poly", "x^3+x^2", "--c", "1", "--horizon", "4")
    assert rc == 0
    assert "verdict:    escape (n=2)" in out
    assert "52023" in out


def test_orbit_rational_parameter_shows_deep_primes(capsys):
    rc, out, _ = run(capsys, "orbit", "--poly", "x^3+x^2", "--c", "1/2", "--horizon", "2")
    assert rc == 0
    assert "2^1" in out and "2^3" in out
    assert "7/8" in out


def test_orbit_coeffs_form(capsys):
    rc, out, _ = run(capsys, "orbit", "--coeffs", "0,0,1,1", "--c", "1", "--horizon", "2")
    assert rc == 0 and "x^3 + x^2" in out


def test_orbit_leading_dash_poly_needs_equals_form(capsys):
    rc, out, _ = run(capsys, "orbit", "--poly=-x^3+x^2", "--c", "-1", "--horizon", "3")
    assert rc == 0
    assert "finite" in out


def test_zsigmondy_command(capsys):
    rc, out, _ = run(capsys, "zsigmondy", "--poly", "x^3+x^2", "--c", "1",
                     "--horizon", "4")
    assert rc == 0
    assert "zsigmondy set in window: 1" in out
    assert "17341" in out


def test_zsigmondy_zero_orbit_notes_and_exits_clean(capsys):
    rc, out, _ = run(capsys, "zsigmondy", "--poly", "x^2", "--c", "0")
    assert rc == 0
    assert "Zsigmondy set not defined" in out


def test_scan_inline_flags(capsys):
    rc, out, err = run(capsys, "scan", "--poly", "x^3+x^2", "--num-bound", "3",
                       "--den-bound", "2", "--horizon", "6")
    assert rc == 0
    lines = out.splitlines()
    assert lines[0].startswith("c_num,c_den,verdict")
    assert len(lines) == 12
    assert "scanned 11 parameters" in err
    assert "max zsigmondy window size 1" in err


def test_scan_json_to_file(capsys, tmp_path):
    dest = tmp_path / "out.json"
    rc, out, err = run(capsys, "scan", "--poly", "x^3+x^2", "--num-bound", "2",
                       "--den-bound", "1", "--horizon", "5", "--format", "json",
                       "-o", str(dest))
    assert rc == 0
    assert out == ""  # file output suppresses stdout copy
    obj = json.loads(dest.read_text())
    assert len(obj["rows"]) == 5


def test_scan_config_file_with_override(capsys, tmp_path):
    cfg = tmp_path / "scan.cfg"
    cfg.write_text("poly = x^3+x^2\nnum_bound = 3\nden_bound = 2\nhorizon = 4\n")
    rc1, out1, _ = run(capsys, "scan", "--config", str(cfg))
    rc2, out2, _ = run(capsys, "scan", "--config", str(cfg), "--horizon", "6")
    rc3, out3, _ = run(capsys, "scan", "--poly", "x^3+x^2", "--num-bound", "3",
                       "--den-bound", "2", "--horizon", "6")
    assert rc1 == rc2 == rc3 == 0
    assert out1 != out2
    assert out2 == out3


def test_scan_missing_bounds_is_usage_error(capsys):
    rc, _, err = run(capsys, "scan", "--poly", "x^2")
    assert rc == 2
    assert "error:" in err


def test_scan_missing_config_file_is_usage_error(capsys):
    rc, _, err = run(capsys, "scan", "--config", "/nonexistent/path.cfg")
    assert rc == 2
    assert "error:" in err


def test_verify_single_check(capsys):
    rc, out, _ = run(capsys, "verify", "--check", "stabilization_index_exact")
    assert rc == 0
    assert "ok   stabilization_index_exact" in out
    assert "1/1 checks passed" in out


def test_verify_unknown_check(capsys):
    rc, _, err = run(capsys, "verify", "--check", "no_such_check")
    assert rc == 2
    assert "unknown checks" in err


def test_verify_failure_exits_one(capsys, monkeypatch):
    monkeypatch.setattr(
        cli, "run_all",
        lambda names=None: [CheckResult("fabricated", False, "broken on purpose")],
    )
    rc, out, _ = run(capsys, "verify", "--check", "stabilization_index_exact")
    assert rc == 1
    assert "FAIL fabricated: broken on purpose" in out
    assert "0/1 checks passed" in out


def test_bounds_command(capsys):
    rc, out, _ = run(capsys, "bounds", "--poly", "x^3+x^2", "--L", "2", "--N", "1")
    assert rc == 0
    assert "n0 = 7" in out and "n1 = 12" in out
    assert "preimage root bound: 4" in out
    assert "4.004038e+12" in out


def test_normalize_with_explicit_point(capsys):
    rc, out, _ = run(capsys, "normalize", "--poly", "x^3-3*x", "--u", "1")
    assert rc == 0
    assert "target: x^3 + 3*x^2" in out
    assert "shift constant: -3" in out


def test_normalize_ambiguous_point_lists_candidates(capsys):
    rc, _, err = run(capsys, "normalize", "--poly", "x^3-3*x")
    assert rc == 2
    assert "-1, 1" in err


def test_normalize_maps_parameter(capsys):
    rc, out, _ = run(capsys, "normalize", "--poly", "x^3-3*x", "--u", "1",
                     "--c", "5")
    assert rc == 0
    assert "mapped parameter: 5 -> 2" in out


def test_malformed_polynomial_exits_two(capsys):
    rc, _, err = run(capsys, "orbit", "--poly", "x^+2", "--c", "1")
    assert rc == 2
    assert "error:" in err


def test_non_model_polynomial_exits_two(capsys):
    # a linear term is outside the family
    rc, _, err = run(capsys, "orbit", "--poly", "x^3+x", "--c", "1")
    assert rc == 2


def test_cli_dispatch_alias():
    assert cli_dispatch is main


def test_console_script_entry_point():
    proc = subprocess.run(
        ["zsig", "zsigmondy", "--poly", "x^3+x^2", "--c", "1", "--horizon", "4"],
        capture_output=True, text=True, timeout=60,
    )
    assert proc.returncode == 0
    assert "zsigmondy set in window: 1" in proc.stdout
