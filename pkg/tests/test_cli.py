import numpy as np

from openmaps import read_grid
from openmaps.cli import main

CONFIG = """
map = baker
N = 16
alpha = 0.6
direction = alpha_p
M = 4
steps = 8
"""


def write_config(tmp_path, text=CONFIG):
    path = tmp_path / "run.cfg"
    path.write_text(text)
    return str(path)


def test_run_writes_series(tmp_path, capsys):
    out = tmp_path / "out"
    code = main(["run", write_config(tmp_path), "--out", str(out)])
    assert code == 0
    lines = (out / "series.csv").read_text().strip().splitlines()
    assert lines[0] == "t,entropy,trace_residual"
    assert len(lines) == 10
    assert "slope" in capsys.readouterr().out


def test_run_is_deterministic(tmp_path):
    cfg = write_config(tmp_path)
    out1, out2 = tmp_path / "a", tmp_path / "b"
    assert main(["run", cfg, "--out", str(out1)]) == 0
    assert main(["run", cfg, "--out", str(out2)]) == 0
    assert (out1 / "series.csv").read_bytes() == (out2 / "series.csv").read_bytes()


def test_config_error_exit_code(tmp_path, capsys):
    code = main(["run", write_config(tmp_path, "map = baker\nN = 33"), "--out", str(tmp_path / "o")])
    assert code == 2
    assert "configuration error" in capsys.readouterr().err


def test_sweep_alpha_axis(tmp_path):
    out = tmp_path / "out"
    code = main(["sweep", write_config(tmp_path), "--axis", "alpha=0.2:0.8:0.3",
                 "--out", str(out)])
    assert code == 0
    lines = (out / "sweep_alpha.csv").read_text().strip().splitlines()
    assert lines[0] == "alpha,slope,t_start,t_end,status"
    assert len(lines) == 4  # 0.2, 0.5, 0.8


def test_sweep_dimension_axis(tmp_path):
    out = tmp_path / "out"
    cfg = write_config(tmp_path, "map = baker\nalpha = 0.6\nM_fraction = 0.25\nsteps = 5")
    code = main(["sweep", cfg, "--axis", "N=8,16", "--out", str(out)])
    assert code == 0
    lines = (out / "sweep_N.csv").read_text().strip().splitlines()
    assert lines[0] == "N,t,t_over_logN,entropy,entropy_over_logN"
    assert len(lines) == 13


def test_sweep_bad_axis(tmp_path, capsys):
    code = main(["sweep", write_config(tmp_path), "--axis", "gamma=1:2:1",
                 "--out", str(tmp_path / "o")])
    assert code == 2


def test_snapshot_writes_grids(tmp_path):
    out = tmp_path / "snaps"
    cfg = write_config(tmp_path, CONFIG + "classical_parallel = true\n")
    code = main(["snapshot", cfg, "--every", "4", "--out", str(out)])
    assert code == 0
    wigner_files = sorted(out.glob("wigner_t*.wgrd"))
    classical_files = sorted(out.glob("classical_t*.cgrd"))
    assert [f.name for f in wigner_files] == ["wigner_t0000.wgrd", "wigner_t0004.wgrd",
                                              "wigner_t0008.wgrd"]
    assert len(classical_files) == 3
    magic, dim, grid = read_grid(wigner_files[1])
    assert dim == 16 and grid.shape == (32, 32)
    assert abs(grid.sum() - 1.0) < 1e-9


def test_toy_subcommand(tmp_path, capsys):
    out = tmp_path / "toy.csv"
    code = main(["toy", "--alpha", "0.8", "--tmax", "5", "--out", str(out)])
    assert code == 0
    printed = capsys.readouterr().out
    assert "asymptotic rate" in printed
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "t,entropy"
    assert len(lines) == 7


def test_toy_validation(capsys):
    assert main(["toy", "--alpha", "1.4"]) == 2


def test_selftest_command(capsys):
    assert main(["selftest"]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out and "FAIL" not in out
