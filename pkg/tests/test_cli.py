"""End-to-end tests of the command-line interface, run in-process."""

import csv
import io
import json
import math

import numpy as np
import pytest

from kfgring import PotentialParams, SpectrumRequest, chi_eval, solve_states
from kfgring.cli import main

REFERENCE_ARGS = ["spectrum", "--alpha", "1", "--A", "2", "--C0", "0"]


def run_cli(args, capsys):
    rc = main(args)
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def test_spectrum_json_reference(capsys):
    rc, out, err = run_cli(REFERENCE_ARGS, capsys)
    assert rc == 0
    assert err == ""
    doc = json.loads(out)
    assert list(doc) == ["params", "request", "states", "rejected"]
    assert len(doc["states"]) == 1
    state = doc["states"][0]
    assert abs(state["E"] - 0.41143782776614773) < 1e-15
    assert state["admissible"] is True
    assert list(state) == [
        "n_r", "N", "m", "E", "epsilon", "eta", "Lambda", "sqrt_c",
        "lambda", "l_eff", "norm_radial", "norm_angular", "admissible",
    ]


def test_spectrum_floats_have_full_precision(capsys):
    rc, out, _ = run_cli(REFERENCE_ARGS, capsys)
    assert rc == 0
    # 17 significant digits in scientific notation round-trip exactly
    assert "4.1143782776614773e-01" in out


def test_spectrum_rejected_reasons(capsys):
    rc, out, _ = run_cli(["spectrum", "--alpha", "1", "--A", "0", "--C0", "0"], capsys)
    assert rc == 0
    doc = json.loads(out)
    assert doc["states"] == []
    reasons = {r["rejection_reason"] for r in doc["rejected"]}
    assert reasons == {"sqrt_c <= 0"}


def test_spectrum_csv_agrees_with_json(capsys):
    rc_j, out_j, _ = run_cli(REFERENCE_ARGS, capsys)
    rc_c, out_c, _ = run_cli(REFERENCE_ARGS + ["--format", "csv"], capsys)
    assert rc_j == rc_c == 0
    doc = json.loads(out_j)
    rows = list(csv.DictReader(io.StringIO(out_c)))
    states = [r for r in rows if r["admissible"] == "true"]
    assert len(states) == 1
    assert float(states[0]["E"]) == doc["states"][0]["E"]
    assert float(states[0]["epsilon"]) == doc["states"][0]["epsilon"]
    rejected = [r for r in rows if r["admissible"] == "false"]
    assert len(rejected) == len(doc["rejected"])
    assert rejected[0]["rejection_reason"] == doc["rejected"][0]["rejection_reason"]


def test_spectrum_reruns_are_byte_identical(capsys):
    _, out1, _ = run_cli(REFERENCE_ARGS, capsys)
    _, out2, _ = run_cli(REFERENCE_ARGS, capsys)
    assert out1 == out2


def test_output_file_and_figure(tmp_path, capsys):
    out_path = tmp_path / "ref.json"
    rc, _, _ = run_cli(REFERENCE_ARGS + ["--out", str(out_path)], capsys)
    assert rc == 0
    assert out_path.exists()
    fig_path = out_path.with_suffix(".png")
    assert fig_path.exists()
    assert fig_path.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
    # a rerun reproduces both files byte for byte
    doc_bytes = out_path.read_bytes()
    fig_bytes = fig_path.read_bytes()
    run_cli(REFERENCE_ARGS + ["--out", str(out_path)], capsys)
    assert out_path.read_bytes() == doc_bytes
    assert fig_path.read_bytes() == fig_bytes


def test_wavefunction_round_trip(tmp_path, capsys):
    out_path = tmp_path / "ref.json"
    run_cli(REFERENCE_ARGS + ["--out", str(out_path)], capsys)
    rc, out, _ = run_cli(
        ["wavefunction", "--state", str(out_path), "--grid", "0.1:20:25"], capsys
    )
    assert rc == 0
    doc = json.loads(out)
    assert doc["state"]["E"] == 0.41143782776614773
    p = PotentialParams(M=1.0, b=1.0, alpha=1.0, A=2.0, C0=0.0)
    st = solve_states(SpectrumRequest(params=p)).states[0]
    r = np.array([row["r"] for row in doc["rows"]])
    chi = np.array([row["chi"] for row in doc["rows"]])
    assert np.array_equal(chi, chi_eval(st, r))


def test_wavefunction_requires_grid(capsys):
    rc, _, err = run_cli(["wavefunction", "--state", "x.json"], capsys)
    assert rc == 1
    assert err != ""


def test_angular_mode_table(capsys):
    rc, out, _ = run_cli(
        ["angular", "--beta", "0.4", "--beta-prime", "0.5",
         "--m", "1", "--eta", "1.8", "--N-max", "1"],
        capsys,
    )
    assert rc == 0
    doc = json.loads(out)
    assert len(doc["modes"]) == 2
    mode = doc["modes"][1]
    assert abs(mode["zeta"] - 1.3524597273719430) < 1e-13
    assert abs(mode["C"] - 0.26618167825192146) < 1e-13


def test_potential_scan_rows(capsys):
    rc, out, _ = run_cli(
        ["potential-scan", "--b", "1", "--C0", "0.08333333333333333",
         "--grid", "0.1:5:3"],
        capsys,
    )
    assert rc == 0
    doc = json.loads(out)
    assert len(doc["rows"]) == 3
    first = doc["rows"][0]
    assert first["exact"] == 1.0 / (first["r"] ** 2)


def test_exit_code_usage_errors(capsys):
    assert run_cli([], capsys)[0] == 1
    assert run_cli(["no-such-command"], capsys)[0] == 1


def test_exit_code_help(capsys):
    assert run_cli(["--help"], capsys)[0] == 0


def test_exit_code_domain_error(capsys):
    rc, _, err = run_cli(["spectrum", "--M", "-1"], capsys)
    assert rc == 2
    doc = json.loads(err)
    assert doc["error"]["type"] == "DomainError"
    assert "rest mass" in doc["error"]["message"]


def test_exit_code_ring_too_strong(capsys):
    rc, _, err = run_cli(
        ["angular", "--beta", "0.5", "--beta-prime", "0.1",
         "--m", "0", "--eta", "1.0"],
        capsys,
    )
    assert rc == 2
    doc = json.loads(err)
    assert doc["error"]["type"] == "RingTooStrongError"


def test_overcritical_ring_window_yields_empty_tables(capsys):
    # with m = 0 the whole search window has u^2 < 0; every cell is excluded
    # and the run reports cleanly rather than crashing
    rc, out, _ = run_cli(
        ["spectrum", "--beta", "0.5", "--beta-prime", "0.1"], capsys
    )
    assert rc == 0
    doc = json.loads(out)
    assert doc["states"] == []
    assert doc["rejected"] == []


def test_verify_suite_pass(capsys):
    rc, out, _ = run_cli(["verify", "--suite", "reference"], capsys)
    assert rc == 0
    doc = json.loads(out)
    assert doc["passed"] is True
    assert all(c["passed"] for c in doc["checks"])


def test_verify_suite_fail_exit_code(capsys):
    # an absurd tolerance forces the angular comparison to fail
    rc, out, _ = run_cli(
        ["verify", "--suite", "angular", "--tol", "1e-300"], capsys
    )
    assert rc == 3
    doc = json.loads(out)
    assert doc["passed"] is False
