"""Binary and CSV snapshot formats for phase-space grids.

Layout: a 16-byte header (4-byte magic, u32 dimension tag, u32 reserved,
4 bytes padding, all little endian) followed by the grid as row-major
little-endian float64.  Magic "WGRD" tags a Wigner grid, whose dimension tag
is the Hilbert dimension N and whose payload is 2N x 2N; magic "CGRD" tags a
classical density with a G x G payload and dimension tag G.  Round trips are
bit exact.
"""

from __future__ import annotations

import struct

import numpy as np

__all__ = [
    "WIGNER_MAGIC",
    "CLASSICAL_MAGIC",
    "write_grid",
    "read_grid",
    "write_wigner",
    "write_classical",
    "write_grid_csv",
]

WIGNER_MAGIC = b"WGRD"
CLASSICAL_MAGIC = b"CGRD"
_HEADER = struct.Struct("<4sII4x")


def _rows_for(magic: bytes, dim: int) -> int:
    return 2 * dim if magic == WIGNER_MAGIC else dim


def write_grid(path, values: np.ndarray, dim: int, magic: bytes) -> None:
    if magic not in (WIGNER_MAGIC, CLASSICAL_MAGIC):
        raise ValueError(f"unknown grid magic {magic!r}")
    rows = _rows_for(magic, dim)
    if values.shape != (rows, rows):
        raise ValueError(f"expected a {rows} x {rows} grid for {magic!r}, got {values.shape}")
    data = np.ascontiguousarray(values, dtype="<f8")
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(magic, dim, 0))
        fh.write(data.tobytes())


def read_grid(path) -> tuple[bytes, int, np.ndarray]:
    """Returns (magic, dimension tag, grid values)."""
    with open(path, "rb") as fh:
        raw = fh.read()
    magic, dim, _reserved = _HEADER.unpack_from(raw)
    if magic not in (WIGNER_MAGIC, CLASSICAL_MAGIC):
        raise ValueError(f"unknown grid magic {magic!r}")
    rows = _rows_for(magic, dim)
    values = np.frombuffer(raw, dtype="<f8", offset=_HEADER.size)
    if values.size != rows * rows:
        raise ValueError(f"payload holds {values.size} values, expected {rows * rows}")
    return magic, dim, values.reshape(rows, rows).copy()


def write_wigner(path, w: np.ndarray, n: int) -> None:
    write_grid(path, w, n, WIGNER_MAGIC)


def write_classical(path, rho_c: np.ndarray) -> None:
    write_grid(path, rho_c, rho_c.shape[0], CLASSICAL_MAGIC)


def write_grid_csv(path, values: np.ndarray) -> None:
    """Plain (q, p, value) rows with full float64 precision; for small grids."""
    with open(path, "w") as fh:
        fh.write("q,p,value\n")
        for q in range(values.shape[0]):
            for p in range(values.shape[1]):
                fh.write(f"{q},{p},{values[q, p]:.17g}\n")
