"""Classical counterparts: point maps, grid transport, diffusion, entropy.

A classical density is a G x G array of nonnegative cell masses on the unit
torus summing to 1, indexed [q_cell, p_cell] with cell centers at
((i+1/2)/G, (j+1/2)/G).  The default G = 2N aligns the cells with the Wigner
lattice, so quantum and classical grids can be compared entry by entry.
"""

from __future__ import annotations

import math

import numpy as np

from .channel import DiffusionChannel

__all__ = [
    "classical_baker_point",
    "classical_harper_point",
    "uniform_density",
    "delta_density",
    "gaussian_density",
    "density_from_wigner",
    "classical_grid_step",
    "classical_diffuse",
    "classical_linear_entropy",
]


def classical_baker_point(q, p):
    """Baker map on the unit square: q' = 2q mod 1, p' = (p + [2q]) / 2.

    Stretches by 2 along q, contracts by 2 along p; uniformly hyperbolic with
    Lyapunov exponent ln 2.  Accepts scalars or arrays.
    """
    q = np.asarray(q, dtype=float)
    p = np.asarray(p, dtype=float)
    cut = np.floor(2.0 * q)
    q_new = 2.0 * q - cut
    p_new = 0.5 * (p + cut)
    if q_new.ndim == 0:
        return float(q_new), float(p_new)
    return q_new, p_new


def classical_harper_point(q, p, gamma: float):
    """Kicked Harper map: q' = q - gamma sin(2 pi p), then p' = p + gamma sin(2 pi q').

    Both lines mod 1; the second kick uses the updated coordinate.  Area
    preserving for every gamma.  Accepts scalars or arrays.
    """
    q = np.asarray(q, dtype=float)
    p = np.asarray(p, dtype=float)
    q_new = np.mod(q - gamma * np.sin(2 * np.pi * p), 1.0)
    p_new = np.mod(p + gamma * np.sin(2 * np.pi * q_new), 1.0)
    if q_new.ndim == 0:
        return float(q_new), float(p_new)
    return q_new, p_new


def uniform_density(grid: int) -> np.ndarray:
    return np.full((grid, grid), 1.0 / (grid * grid))


def delta_density(grid: int, q_cell: int, p_cell: int) -> np.ndarray:
    rho = np.zeros((grid, grid))
    rho[q_cell, p_cell] = 1.0
    return rho


def gaussian_density(grid: int, q0: float, p0: float, variance: float) -> np.ndarray:
    """Wrapped product Gaussian with the given per-axis variance, mass 1.

    With variance = 1/(4 pi N) this matches the phase-space footprint of a
    quantum coherent state.
    """
    x = (np.arange(grid) + 0.5) / grid
    marginals = []
    for center in (q0, p0):
        g = np.zeros(grid)
        for m in range(-2, 3):
            d = x - center + m
            g += np.exp(-0.5 * d * d / variance)
        marginals.append(g)
    rho = np.outer(marginals[0], marginals[1])
    return rho / rho.sum()


def density_from_wigner(w: np.ndarray) -> np.ndarray:
    """Clip a Wigner grid at zero and renormalize into a classical density."""
    rho = np.clip(w, 0.0, None)
    total = rho.sum()
    if total <= 0.0:
        raise ValueError("Wigner grid has no positive mass to build a density from")
    return rho / total


def classical_grid_step(rho_c: np.ndarray, map_name: str, gamma: float | None = None) -> np.ndarray:
    """Transport cell masses through one step of the chosen map.

    baker: exact transport.  On an even grid each source cell maps onto two
    q-cells and half a p-cell, so the image masses are computed without any
    interpolation; mass is conserved exactly and stays nonnegative.

    harper: backward semi-Lagrangian transport.  Each target cell center is
    pulled back through the inverse map and the density is interpolated
    bilinearly with periodic wrap, then renormalized to unit mass.
    """
    grid = rho_c.shape[0]
    if rho_c.shape != (grid, grid):
        raise ValueError(f"density must be square, got shape {rho_c.shape}")
    if map_name == "baker":
        if grid % 2 != 0:
            raise ValueError(f"baker grid transport needs an even grid, got G={grid}")
        half = grid // 2
        lo, hi = rho_c[:half], rho_c[half:]
        merged_lo = lo[:, 0::2] + lo[:, 1::2]  # p-cell pairs -> one target cell
        merged_hi = hi[:, 0::2] + hi[:, 1::2]
        out = np.empty_like(rho_c)
        out[0::2, :half] = 0.5 * merged_lo
        out[1::2, :half] = 0.5 * merged_lo
        out[0::2, half:] = 0.5 * merged_hi
        out[1::2, half:] = 0.5 * merged_hi
        return out
    if map_name == "harper":
        if gamma is None:
            raise ValueError("harper transport needs gamma")
        centers = (np.arange(grid) + 0.5) / grid
        qt, pt = np.meshgrid(centers, centers, indexing="ij")
        # inverse map: undo the kicks in reverse order
        p_src = np.mod(pt - gamma * np.sin(2 * np.pi * qt), 1.0)
        q_src = np.mod(qt + gamma * np.sin(2 * np.pi * p_src), 1.0)
        out = _bilinear_periodic(rho_c, q_src, p_src)
        return out / out.sum()
    raise ValueError(f"unknown map {map_name!r}")


def _bilinear_periodic(values: np.ndarray, q: np.ndarray, p: np.ndarray) -> np.ndarray:
    """Bilinear interpolation of a cell-centered field on the periodic torus."""
    grid = values.shape[0]
    uq = q * grid - 0.5
    up = p * grid - 0.5
    i0 = np.floor(uq).astype(int)
    j0 = np.floor(up).astype(int)
    fq = uq - i0
    fp = up - j0
    i0 %= grid
    j0 %= grid
    i1 = (i0 + 1) % grid
    j1 = (j0 + 1) % grid
    return (
        values[i0, j0] * (1 - fq) * (1 - fp)
        + values[i1, j0] * fq * (1 - fp)
        + values[i0, j1] * (1 - fq) * fp
        + values[i1, j1] * fq * fp
    )


def classical_diffuse(rho_c: np.ndarray, channel: DiffusionChannel) -> np.ndarray:
    """Same smearing stencil as the Wigner-space diffusion, applied to cell masses.

    Shifts are 2n*dq and 2n*dp cells, matching the doubled quantum lattice
    when G = 2N.  The stencil weights sum to 1, so mass is conserved exactly
    and nonnegativity is preserved.
    """
    if not channel.is_collinear:
        raise NotImplementedError("direction mixtures have no single-direction stencil")
    out = (1.0 - channel.alpha) * rho_c
    coef = channel.alpha / (2 * channel.terms)
    for dq, dp in channel.displacement_steps():
        out = out + coef * (
            np.roll(rho_c, (-2 * dq, -2 * dp), axis=(0, 1))
            + np.roll(rho_c, (2 * dq, 2 * dp), axis=(0, 1))
        )
    return out


def classical_linear_entropy(rho_c: np.ndarray) -> float:
    """S_c = -ln(sum of squared cell masses).

    Zero for a single-cell delta, 2 ln G for the uniform density; the same
    pure-to-mixed anchoring as the quantum linear entropy, whose saturation
    level ln N differs from 2 ln(2N) by the constant ln 4N.
    """
    total = float(np.sum(rho_c * rho_c))
    if total <= 0.0:
        raise ValueError("density has no mass")
    return -math.log(total)
