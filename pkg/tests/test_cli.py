"""End-to-end CLI behavior: exit codes, artifacts, reproducibility."""

import json
import os

import pytest

from archdim import Architecture, WitnessCertificate
from archdim.cli import (
    EXIT_INCONCLUSIVE,
    EXIT_INVALID,
    EXIT_OK,
    EXIT_VERDICT,
    main,
)


def test_bounds_command_prints_lower_bound(capsys):
    assert main(["bounds", "--n", "3", "--R", "126", "--L", "2"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "6" in out
    assert "63" in out


def test_arch_gen_roundtrip(tmp_path):
    out = tmp_path / "arch.json"
    rc = main(["arch", "gen", "--family", "staircase", "--n", "4", "--t", "2",
               "--out", str(out)])
    assert rc == EXIT_OK
    payload = json.loads(out.read_text())
    arch = Architecture.from_json_dict(payload)
    assert arch.n == 4
    assert arch.slice_boundaries == (3, 6)
    assert payload["version"]
    assert payload["config"]["family"] == "staircase"


def test_arch_gen_random_requires_r():
    assert main(["arch", "gen", "--family", "random", "--n", "4"]) == EXIT_INVALID


def test_arch_check_reports_sinks(tmp_path, capsys):
    out = tmp_path / "arch.json"
    main(["arch", "gen", "--family", "staircase", "--n", "4", "--t", "1",
          "--out", str(out)])
    rc = main(["arch", "check", "--in", str(out)])
    assert rc == EXIT_OK
    assert "sink 4" in capsys.readouterr().out


def test_arch_check_missing_file():
    assert main(["arch", "check", "--in", "/nonexistent.json"]) == EXIT_INVALID


def test_dim_su4_saturation(tmp_path, capsys):
    out = tmp_path / "dim.json"
    rc = main(["dim", "--family", "staircase", "--n", "2", "--t", "3",
               "--samples", "5", "--seed", "7", "--out", str(out)])
    assert rc == EXIT_OK
    assert "d_A = 15" in capsys.readouterr().out
    payload = json.loads(out.read_text())
    assert payload["consensus"] == 15
    assert payload["config"]["samples"] == 5


def test_dim_from_file_and_spectra(tmp_path):
    arch_file = tmp_path / "a.json"
    main(["arch", "gen", "--family", "staircase", "--n", "3", "--t", "1",
          "--out", str(arch_file)])
    spectra = tmp_path / "spectra.csv"
    rc = main(["dim", "--in", str(arch_file), "--samples", "3",
               "--spectra", str(spectra)])
    assert rc == EXIT_OK
    assert spectra.read_text().startswith("sample,index,singular_value")


def test_dim_inconclusive_exit_code(monkeypatch, tmp_path):
    import archdim.cli as cli_mod

    real = cli_mod.accessible_dimension

    def flaky(*args, **kwargs):
        report = real(*args, **kwargs)
        object.__setattr__(report, "inconclusive", True)
        object.__setattr__(report, "inconclusive_reason", "forced")
        object.__setattr__(report, "consensus", None)
        return report

    monkeypatch.setattr(cli_mod, "accessible_dimension", flaky)
    out = tmp_path / "dim.json"
    rc = main(["dim", "--family", "staircase", "--n", "2", "--t", "1",
               "--samples", "3", "--out", str(out)])
    assert rc == EXIT_INCONCLUSIVE
    assert json.loads(out.read_text())["inconclusive"] is True


def test_dim_bound_violation_exit_code(monkeypatch):
    import archdim.cli as cli_mod

    real = cli_mod.accessible_dimension

    def inflated(*args, **kwargs):
        report = real(*args, **kwargs)
        object.__setattr__(report, "consensus", report.upper_bound + 1)
        return report

    monkeypatch.setattr(cli_mod, "accessible_dimension", inflated)
    rc = main(["dim", "--family", "staircase", "--n", "2", "--t", "1",
               "--samples", "3"])
    assert rc == EXIT_VERDICT


def test_witness_threshold_exit_code(capsys):
    rc = main(["witness", "--family", "staircase", "--n", "3", "--t", "70",
               "--mode", "unitary"])
    assert rc == EXIT_INVALID
    assert "63" in capsys.readouterr().err


def test_witness_certificate_artifact(tmp_path):
    out = tmp_path / "cert.json"
    rc = main(["witness", "--family", "staircase", "--n", "3", "--t", "4",
               "--mode", "unitary", "--out", str(out)])
    assert rc == EXIT_OK
    cert = WitnessCertificate.from_json(out.read_text())
    assert cert.slice_count == 4
    assert len(cert.directions) == 4


def test_arch_gen_brickwork_rounds(tmp_path):
    out = tmp_path / "bw.json"
    rc = main(["arch", "gen", "--family", "brickwork", "--n", "4",
               "--rounds", "5", "--out", str(out)])
    assert rc == EXIT_OK
    arch = Architecture.from_json_dict(json.loads(out.read_text()))
    assert arch.gate_count == 15
    assert arch.slice_boundaries == (15,)


def test_witness_skip_rank_check(tmp_path, capsys):
    rc = main(["witness", "--family", "staircase", "--n", "3", "--t", "2",
               "--mode", "unitary", "--skip-rank-check"])
    assert rc == EXIT_OK
    assert "rank" not in capsys.readouterr().out


def test_witness_state_mode(tmp_path):
    out = tmp_path / "cert.json"
    rc = main(["witness", "--family", "staircase", "--n", "3", "--t", "5",
               "--mode", "state", "--out", str(out)])
    assert rc == EXIT_OK
    cert = WitnessCertificate.from_json(out.read_text())
    assert len(cert.state_images) == 5


def test_sweep_artifact_reproducible(tmp_path):
    out_a = tmp_path / "a.csv"
    out_b = tmp_path / "b.csv"
    args = ["sweep", "--n", "2", "--t-max", "3", "--samples", "3",
            "--seed", "11"]
    assert main(args + ["--out", str(out_a)]) == EXIT_OK
    assert main(args + ["--out", str(out_b)]) == EXIT_OK

    def strip_ms(text):
        return [",".join(line.split(",")[:-1]) for line in text.splitlines()]

    assert strip_ms(out_a.read_text()) == strip_ms(out_b.read_text())
    lines = out_a.read_text().splitlines()
    assert lines[0].startswith("# archdim")
    assert lines[1] == "n,family,T,R,L,dA,witness_rank,lower,upper,cap,samples,seed,ms"


def test_dim_artifact_byte_identical_on_rerun(tmp_path):
    args = ["dim", "--family", "staircase", "--n", "3", "--t", "2",
            "--samples", "3", "--seed", "13"]
    out_a = tmp_path / "a.json"
    out_b = tmp_path / "b.json"
    assert main(args + ["--out", str(out_a)]) == EXIT_OK
    assert main(args + ["--out", str(out_b)]) == EXIT_OK
    assert out_a.read_bytes() == out_b.read_bytes()


def test_mc_arch_within_interval(tmp_path, capsys):
    out = tmp_path / "mc.json"
    rc = main(["mc-arch", "--n", "4", "--trials", "500", "--seed", "3",
               "--out", str(out)])
    assert rc == EXIT_OK
    payload = json.loads(out.read_text())
    assert payload["within_interval"] is True
    assert "causal fraction" in capsys.readouterr().out


def test_validation_never_leaves_partial_output(tmp_path):
    out = tmp_path / "never.json"
    rc = main(["dim", "--family", "staircase", "--n", "2", "--t", "3",
               "--samples", "2", "--out", str(out)])  # samples < 3 invalid
    assert rc == EXIT_INVALID
    assert not out.exists()
    assert not [p for p in os.listdir(tmp_path) if p.endswith(".tmp")]


def test_usage_error_maps_to_invalid():
    assert main(["dim", "--family", "nosuch"]) == EXIT_INVALID
    assert main(["bounds", "--n", "3"]) == EXIT_INVALID


def test_seed_env_default(monkeypatch, tmp_path, capsys):
    monkeypatch.setenv("ARCHDIM_SEED", "123")
    out = tmp_path / "arch.json"
    rc = main(["arch", "gen", "--family", "random", "--n", "3", "--r", "5",
               "--out", str(out)])
    assert rc == EXIT_OK
    assert json.loads(out.read_text())["config"]["seed"] == 123


def test_bounds_with_alpha(tmp_path):
    out = tmp_path / "bounds.json"
    rc = main(["bounds", "--n", "10", "--R", "900", "--L", "10",
               "--alpha", "0.5", "--out", str(out)])
    assert rc == EXIT_OK
    payload = json.loads(out.read_text())
    assert payload["randomized_probability"] == pytest.approx(
        1 - 18 * 2.718281828459045 ** -10)
