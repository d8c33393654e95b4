"""Finite-dimensional Hilbert space on the unit torus.

States are length-N vectors of position amplitudes; operators are dense
N x N complex matrices acting on them.  The Floquet angles (chi_q, chi_p)
fix the quasi-periodic boundary conditions; the default chi_q = chi_p = 1/2
(antiperiodic) is the convention every map in this package is validated for.

Everything here is materialized densely.  FFT-structured application of the
Fourier kernel lives in :mod:`openmaps.maps`; this module is the oracle layer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "PhaseSpaceSpec",
    "position_grid",
    "momentum_grid",
    "fourier_kernel",
    "shift_operator",
    "displacement",
    "basis_state",
    "coherent_state",
    "pure_density",
    "maximally_mixed",
    "check_density",
    "linear_entropy",
]


@dataclass(frozen=True)
class PhaseSpaceSpec:
    """Hilbert-space dimension N plus the Floquet angles (chi_q, chi_p).

    The effective Planck constant is tied to the dimension by h = 1/N (one
    state per phase-space cell of area 1/N); it is derived, never stored.
    """

    N: int
    chi_q: float = 0.5
    chi_p: float = 0.5

    def __post_init__(self):
        if not isinstance(self.N, (int, np.integer)) or self.N < 1:
            raise ValueError(f"dimension must be a positive integer, got {self.N!r}")
        if not (0.0 <= self.chi_q < 1.0 and 0.0 <= self.chi_p < 1.0):
            raise ValueError(
                f"Floquet angles must lie in [0, 1), got chi_q={self.chi_q}, chi_p={self.chi_p}"
            )

    @property
    def planck_h(self) -> float:
        return 1.0 / self.N

    @property
    def antiperiodic(self) -> bool:
        return self.chi_q == 0.5 and self.chi_p == 0.5


def position_grid(spec: PhaseSpaceSpec) -> np.ndarray:
    """Position eigenvalues q_n = (n + chi_p)/N."""
    return (np.arange(spec.N) + spec.chi_p) / spec.N


def momentum_grid(spec: PhaseSpaceSpec) -> np.ndarray:
    """Momentum eigenvalues p_m = (m + chi_q)/N."""
    return (np.arange(spec.N) + spec.chi_q) / spec.N


def fourier_kernel(spec: PhaseSpaceSpec) -> np.ndarray:
    """Change of basis from position to momentum amplitudes.

    G[m, n] = exp(-2 pi i (m + chi_q)(n + chi_p) / N) / sqrt(N), i.e. the
    overlap of the m-th momentum with the n-th position eigenstate.  Unitary.
    """
    m = np.arange(spec.N) + spec.chi_q
    n = np.arange(spec.N) + spec.chi_p
    return np.exp(-2j * np.pi * np.outer(m, n) / spec.N) / math.sqrt(spec.N)


def _position_shift_power(spec: PhaseSpaceSpec, steps: int) -> np.ndarray:
    """U^steps in the position representation, closed form for any integer power.

    The wrap phase exp(-2 pi i chi_q) per full cycle follows the quasi-periodic
    identification of position labels.  That single phase is what makes the
    operator exactly diagonal in the momentum basis.
    """
    n = np.arange(spec.N)
    rows = (n + steps) % spec.N
    wraps = (n + steps) // spec.N
    u = np.zeros((spec.N, spec.N), dtype=complex)
    u[rows, n] = np.exp(-2j * np.pi * spec.chi_q * wraps)
    return u


def _clock_power(spec: PhaseSpaceSpec, steps: int) -> np.ndarray:
    """V^steps: diagonal in position with phases exp(2 pi i * steps * (n + chi_p)/N)."""
    n = np.arange(spec.N)
    return np.diag(np.exp(2j * np.pi * steps * (n + spec.chi_p) / spec.N))


def shift_operator(spec: PhaseSpaceSpec, axis: str) -> np.ndarray:
    """One-step shift operator in the position representation.

    axis="position" returns U with U|q_n> = |q_{n+1}>; axis="momentum" returns
    V with V|p_m> = |p_{m+1}>.  Shifts wrap through the quasi-periodic label
    identification (a single phase exp(-2 pi i chi_q), resp. exp(2 pi i chi_p),
    per full cycle), which keeps each operator exactly diagonal in the
    conjugate basis and gives the exchange relation V U = U V exp(2 pi i / N).
    """
    if axis == "position":
        return _position_shift_power(spec, 1)
    if axis == "momentum":
        return _clock_power(spec, 1)
    raise ValueError(f"axis must be 'position' or 'momentum', got {axis!r}")


def displacement(spec: PhaseSpaceSpec, dq: int, dp: int) -> np.ndarray:
    """Phase-space displacement D(dq, dp) = U^dq V^dp exp(i pi dq dp / N).

    dq and dp may be any integers; D(0, 0) is the identity and
    D(a, b)^n = D(n a, n b) exactly.
    """
    n = np.arange(spec.N)
    rows = (n + dq) % spec.N
    wraps = (n + dq) // spec.N
    phases = (
        np.exp(-2j * np.pi * spec.chi_q * wraps)
        * np.exp(2j * np.pi * dp * (n + spec.chi_p) / spec.N)
        * np.exp(1j * np.pi * dq * dp / spec.N)
    )
    d = np.zeros((spec.N, spec.N), dtype=complex)
    d[rows, n] = phases
    return d


def basis_state(spec: PhaseSpaceSpec, kind: str, index: int) -> np.ndarray:
    """Position amplitudes of the position or momentum eigenstate with the given index.

    The eigenvalue the state belongs to is position_grid(spec)[index] or
    momentum_grid(spec)[index] respectively.
    """
    if not 0 <= index < spec.N:
        raise ValueError(f"index {index} outside [0, {spec.N})")
    if kind == "position":
        e = np.zeros(spec.N, dtype=complex)
        e[index] = 1.0
        return e
    if kind == "momentum":
        return fourier_kernel(spec)[index].conj()
    raise ValueError(f"kind must be 'position' or 'momentum', got {kind!r}")


def coherent_state(spec: PhaseSpaceSpec, q0: float, p0: float) -> np.ndarray:
    """Normalized minimum-uncertainty Gaussian centred at (q0, p0) on the torus.

    psi_n is a sum over five wrapped images of
    exp(-pi N (x_n - q0 + m)^2 + 2 pi i N p0 (x_n - q0 + m)); images beyond
    |m| = 2 are below 1e-15 for N >= 8.  Position and momentum variances are
    both 1/(4 pi N).
    """
    x = position_grid(spec)
    psi = np.zeros(spec.N, dtype=complex)
    for m in range(-2, 3):
        d = x - q0 + m
        psi += np.exp(-np.pi * spec.N * d * d + 2j * np.pi * spec.N * p0 * d)
    return psi / np.linalg.norm(psi)


def pure_density(psi: np.ndarray) -> np.ndarray:
    """Rank-one density matrix |psi><psi| (psi assumed normalized)."""
    return np.outer(psi, psi.conj())


def maximally_mixed(spec: PhaseSpaceSpec) -> np.ndarray:
    return np.eye(spec.N, dtype=complex) / spec.N


def check_density(rho: np.ndarray, herm_tol: float = 1e-12, trace_tol: float = 1e-12,
                  eig_tol: float = 1e-10) -> None:
    """On-demand validation of density-matrix invariants; raises ValueError.

    Meant for checkpoints, not per-step use: the eigenvalue check is O(N^3).
    """
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"density matrix must be square, got shape {rho.shape}")
    herm = np.max(np.abs(rho - rho.conj().T))
    if herm > herm_tol:
        raise ValueError(f"not Hermitian: max deviation {herm:.3e} > {herm_tol:.1e}")
    tr = abs(np.trace(rho) - 1.0)
    if tr > trace_tol:
        raise ValueError(f"trace deviates from 1 by {tr:.3e} > {trace_tol:.1e}")
    wmin = float(np.linalg.eigvalsh(rho)[0])
    if wmin < -eig_tol:
        raise ValueError(f"negative eigenvalue {wmin:.3e} below -{eig_tol:.1e}")


def linear_entropy(rho: np.ndarray) -> float:
    """S = -ln Tr(rho^2); zero for pure states, ln N for the maximally mixed state."""
    tr2 = float(np.einsum("ij,ji->", rho, rho).real)
    if tr2 <= 0.0:
        raise ValueError(f"Tr(rho^2) = {tr2} is not positive; not a valid density matrix")
    return -math.log(tr2)
