"""One-step unitary propagators for the quantized baker and Harper maps.

Each propagator carries its dense matrix plus an optional FFT-structured
application.  The factored form turns the O(N^3) conjugation U rho U^dagger
into O(N^2 log N) per step, which is what makes desk-scale density-matrix
runs cheap; below DENSE_FALLBACK the dense multiply wins and is used instead.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from .kinematics import PhaseSpaceSpec, fourier_kernel

__all__ = [
    "DENSE_FALLBACK",
    "UnitaryPropagator",
    "fourier_apply",
    "baker_propagator",
    "harper_propagator",
    "unitary_step",
]

# Measured crossover on commodity hardware; below this the dense conjugation
# is faster than two FFT passes per side.
DENSE_FALLBACK = 64


def fourier_apply(a: np.ndarray, spec: PhaseSpaceSpec, inverse: bool = False) -> np.ndarray:
    """Apply the Fourier kernel G (or its inverse) to a vector or to matrix columns.

    Uses the factorization G = c * diag(pm) F diag(pn) with F the standard
    unitary DFT, so the cost is one FFT of length N per column.
    """
    n = spec.N
    idx = np.arange(n)
    pn = np.exp(-2j * np.pi * spec.chi_q * idx / n)
    pm = np.exp(-2j * np.pi * spec.chi_p * idx / n)
    c = np.exp(-2j * np.pi * spec.chi_q * spec.chi_p / n)
    if a.ndim == 2:
        pn = pn[:, None]
        pm = pm[:, None]
    if not inverse:
        return (c / math.sqrt(n)) * pm * np.fft.fft(pn * a, axis=0)
    return (c.conjugate() * math.sqrt(n)) * pn.conj() * np.fft.ifft(pm.conj() * a, axis=0)


class UnitaryPropagator:
    """One-step unitary with a dense matrix and an optional fast application.

    Instances are immutable after construction and safe to share across
    threads; `evolve` allocates a fresh density matrix.
    """

    def __init__(self, spec: PhaseSpaceSpec, matrix: np.ndarray, kind: str,
                 fast_left: Callable[[np.ndarray], np.ndarray] | None = None):
        self.spec = spec
        self.matrix = matrix
        self.kind = kind
        self._fast_left = fast_left

    @property
    def has_fast_path(self) -> bool:
        return self._fast_left is not None

    def left_apply(self, a: np.ndarray, dense: bool = False) -> np.ndarray:
        """U @ a for a state vector or for every column of a matrix."""
        if dense or self._fast_left is None:
            return self.matrix @ a
        return self._fast_left(a)

    def evolve(self, rho: np.ndarray, dense: bool | None = None) -> np.ndarray:
        """U rho U^dagger, via the fast path when available and worthwhile."""
        if dense is None:
            dense = self._fast_left is None or self.spec.N < DENSE_FALLBACK
        if dense or self._fast_left is None:
            return self.matrix @ rho @ self.matrix.conj().T
        # (U (U rho)^H)^H == U rho U^H; two column passes instead of a transpose-side code path
        half = self._fast_left(rho)
        return self._fast_left(half.conj().T).conj().T


def baker_propagator(spec: PhaseSpaceSpec) -> UnitaryPropagator:
    """One step of the quantum baker map: B = G_N^{-1} blockdiag(G_{N/2}, G_{N/2}).

    Needs even N and the antiperiodic spec; the half-size kernels use the same
    chi = 1/2 angles.  The fast path runs the two half-size kernels and one
    inverse full kernel as FFTs.
    """
    if spec.N % 2 != 0:
        raise ValueError(f"baker map needs even dimension, got N={spec.N}")
    if not spec.antiperiodic:
        raise ValueError(
            "baker quantization is only defined here for antiperiodic boundary "
            "conditions (chi_q = chi_p = 1/2)"
        )
    half = spec.N // 2
    half_spec = PhaseSpaceSpec(half, spec.chi_q, spec.chi_p)
    g_half = fourier_kernel(half_spec)
    inner = np.zeros((spec.N, spec.N), dtype=complex)
    inner[:half, :half] = g_half
    inner[half:, half:] = g_half
    dense = fourier_kernel(spec).conj().T @ inner

    def fast_left(a: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=complex)
        top = fourier_apply(a[:half], half_spec)
        bot = fourier_apply(a[half:], half_spec)
        return fourier_apply(np.concatenate([top, bot], axis=0), spec, inverse=True)

    return UnitaryPropagator(spec, dense, "baker", fast_left)


def harper_propagator(spec: PhaseSpaceSpec, gamma: float) -> UnitaryPropagator:
    """One step of the kicked Harper map: U = U_q G^dagger U_p G.

    U_q multiplies position amplitudes by exp(-i gamma N cos(2 pi q_n)) and
    U_p does the same in the momentum basis with cos(2 pi p_k).  gamma = 0
    gives the identity; gamma near 1 is fully chaotic.
    """
    n = np.arange(spec.N)
    uq = np.exp(-1j * gamma * spec.N * np.cos(2 * np.pi * (n + spec.chi_p) / spec.N))
    up = np.exp(-1j * gamma * spec.N * np.cos(2 * np.pi * (n + spec.chi_q) / spec.N))
    g = fourier_kernel(spec)
    dense = (uq[:, None] * g.conj().T) @ (up[:, None] * g)

    def fast_left(a: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=complex)
        kick_p = up[:, None] if a.ndim == 2 else up
        kick_q = uq[:, None] if a.ndim == 2 else uq
        b = fourier_apply(a, spec)
        b = fourier_apply(kick_p * b, spec, inverse=True)
        return kick_q * b

    return UnitaryPropagator(spec, dense, "kicked", fast_left)


def unitary_step(rho: np.ndarray, prop: UnitaryPropagator, dense: bool | None = None) -> np.ndarray:
    """rho -> U rho U^dagger.  Trace and spectrum are preserved."""
    if rho.shape != (prop.spec.N, prop.spec.N):
        raise ValueError(f"state shape {rho.shape} does not match dimension N={prop.spec.N}")
    return prop.evolve(rho, dense=dense)
