"""CLI subcommands, exit codes, and output determinism."""

import json

import pytest

from spingauge.cli import EXIT_CODES, main

CLASSICAL_CFG = """
[units]
coupling = 0.05

[field]
kind = uniform
e0 = 0 0 1

[particle]
p0 = 1.5 0 0

[integration]
mode = classical
dt = 0.01
n_steps = 200
sample_every = 5
"""

QUANTUM_CFG = """
[units]
coupling = 0.05

[field]
e0 = 0 0 1

[wavepacket]
center = -4 0
k0 = 1.5 0
width = 3

[grid]
nx = 64
ny = 64
lx = 40
ly = 40

[integration]
mode = both
dt = 0.01
n_steps = 100
sample_every = 10
"""


def write_cfg(tmp_path, text, name="scenario.cfg"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert "spingauge" in capsys.readouterr().out


def test_help_documents_exit_codes(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--help"])
    assert exc.value.code == 0
    out = capsys.readouterr().out
    assert "exit codes" in out
    assert "config parse error" in out


def test_verify_subcommand(capsys):
    assert main(["verify", "--seed", "1", "--cases", "10"]) == EXIT_CODES["ok"]
    out = capsys.readouterr().out
    assert "PASS" in out and "OK" in out
    assert "INFO" in out  # prefactor findings present


def test_run_classical(tmp_path, capsys):
    cfg = write_cfg(tmp_path, CLASSICAL_CFG)
    out_dir = tmp_path / "out"
    assert main(["run", cfg, "--out", str(out_dir)]) == EXIT_CODES["ok"]
    assert (out_dir / "trajectory.csv").exists()
    assert (out_dir / "trajectory.svg").exists()
    summary = json.loads((out_dir / "summary.json").read_text())
    assert summary["schema_version"] == 1
    assert summary["mode"] == "classical"
    # config echo includes filled-in defaults
    assert summary["config"]["units"]["hbar"] == 1.0
    assert summary["config"]["integration"]["seed"] == 0


def test_run_both_outputs(tmp_path):
    cfg = write_cfg(tmp_path, QUANTUM_CFG)
    out_dir = tmp_path / "out"
    assert main(["run", cfg, "--out", str(out_dir)]) == EXIT_CODES["ok"]
    for name in ("trajectory.csv", "observables.csv", "summary.json",
                 "trajectory.svg", "observables.svg"):
        assert (out_dir / name).exists(), name
    summary = json.loads((out_dir / "summary.json").read_text())
    assert "comparison" in summary["results"]
    assert summary["results"]["comparison"]["deviation_over_width"] <= 0.01


def test_run_byte_identical(tmp_path):
    cfg = write_cfg(tmp_path, CLASSICAL_CFG)
    out_a, out_b = tmp_path / "a", tmp_path / "b"
    assert main(["run", cfg, "--out", str(out_a)]) == 0
    assert main(["run", cfg, "--out", str(out_b)]) == 0
    for name in ("trajectory.csv", "summary.json", "trajectory.svg"):
        assert (out_a / name).read_bytes() == (out_b / name).read_bytes(), name


def test_parse_error_exit_code(tmp_path, capsys):
    cfg = write_cfg(tmp_path, CLASSICAL_CFG + "\n[output]\ngravit = 1\n")
    assert main(["run", cfg]) == EXIT_CODES["parse-error"]
    assert "gravit" in capsys.readouterr().err


def test_validation_error_exit_code(tmp_path, capsys):
    cfg = write_cfg(tmp_path, CLASSICAL_CFG.replace("mode = classical",
                                                    "mode = warp"))
    assert main(["run", cfg]) == EXIT_CODES["validation-error"]
    assert "mode" in capsys.readouterr().err


def test_runtime_error_exit_code(tmp_path, capsys):
    # dt far beyond the split-step stability bound
    cfg = write_cfg(tmp_path, QUANTUM_CFG.replace("dt = 0.01", "dt = 2.0"))
    assert main(["run", cfg, "--out", str(tmp_path / "o")]) == EXIT_CODES["runtime-error"]
    assert "StabilityBound" in capsys.readouterr().err


def test_io_error_exit_code(capsys):
    assert main(["run", "/nonexistent/config.cfg"]) == EXIT_CODES["io-error"]


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == EXIT_CODES["usage"]


def test_sweep(tmp_path, capsys):
    cfg = write_cfg(tmp_path, CLASSICAL_CFG)
    out_dir = tmp_path / "sweep"
    code = main(["sweep", cfg, "--param", "units.coupling",
                 "--values", "0.0,0.05,0.1", "--out", str(out_dir)])
    assert code == EXIT_CODES["ok"]
    index = json.loads((out_dir / "sweep.json").read_text())
    assert len(index["runs"]) == 3
    assert index["param"] == "units.coupling"
    for run in index["runs"]:
        sub = out_dir / run["dir"]
        assert (sub / "summary.json").exists()
    # swept value actually takes effect: zero coupling kills the deflection
    s0 = json.loads((out_dir / index["runs"][0]["dir"] / "summary.json").read_text())
    s2 = json.loads((out_dir / index["runs"][2]["dir"] / "summary.json").read_text())
    assert abs(s0["results"]["classical"]["r"][1]) <= 1e-12
    assert abs(s2["results"]["classical"]["r"][1]) > 1e-4


def test_sweep_bad_param(tmp_path, capsys):
    cfg = write_cfg(tmp_path, CLASSICAL_CFG)
    assert main(["sweep", cfg, "--param", "nokey", "--values", "1",
                 "--out", str(tmp_path / "s")]) == EXIT_CODES["validation-error"]
