import numpy as np
import pytest

from openmaps import (
    CLASSICAL_MAGIC,
    WIGNER_MAGIC,
    PhaseSpaceSpec,
    read_grid,
    wigner_transform,
    write_classical,
    write_grid,
    write_grid_csv,
    write_wigner,
)
from conftest import random_density


def test_wigner_roundtrip_bit_exact(tmp_path):
    spec = PhaseSpaceSpec(6)
    w = wigner_transform(random_density(6, seed=0), spec)
    path = tmp_path / "snap.wgrd"
    write_wigner(path, w, 6)
    magic, dim, back = read_grid(path)
    assert magic == WIGNER_MAGIC
    assert dim == 6
    assert back.shape == (12, 12)
    assert back.tobytes() == w.astype("<f8").tobytes()


def test_classical_roundtrip(tmp_path):
    rng = np.random.default_rng(1)
    rho = rng.random((10, 10))
    path = tmp_path / "snap.cgrd"
    write_classical(path, rho)
    magic, dim, back = read_grid(path)
    assert magic == CLASSICAL_MAGIC
    assert dim == 10
    assert np.array_equal(back, rho)


def test_header_is_sixteen_bytes(tmp_path):
    path = tmp_path / "tiny.cgrd"
    write_classical(path, np.zeros((2, 2)))
    raw = path.read_bytes()
    assert raw[:4] == b"CGRD"
    assert len(raw) == 16 + 4 * 8


def test_shape_validation(tmp_path):
    with pytest.raises(ValueError):
        write_grid(tmp_path / "x.wgrd", np.zeros((4, 4)), 4, WIGNER_MAGIC)
    with pytest.raises(ValueError):
        write_grid(tmp_path / "x.bin", np.zeros((4, 4)), 4, b"XXXX")


def test_csv_export(tmp_path):
    grid = np.array([[1.0, 0.5], [0.25, 1e-17]])
    path = tmp_path / "grid.csv"
    write_grid_csv(path, grid)
    lines = path.read_text().strip().splitlines()
    assert lines[0] == "q,p,value"
    assert len(lines) == 5
    q, p, v = lines[4].split(",")
    assert (int(q), int(p)) == (1, 1)
    assert float(v) == 1e-17
