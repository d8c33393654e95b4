"""Diffusive non-unitary step: operator-sum application and its fast kernel form.

The channel mixes the identity with symmetric phase-space displacements:

    rho' = (1 - alpha) rho + alpha/(2M) sum_n (D_n rho D_n^dag + D_n^dag rho D_n)

For displacements along a single direction, D_n = D(n dq, n dp) = D(dq, dp)^n,
so in the eigenbasis of the elementary displacement the whole step is an
entrywise multiplication of the density matrix by a real damping kernel.  The
kernel leaves the diagonal untouched and suppresses off-diagonal elements by a
diffraction-like factor that decays with distance from the diagonal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.linalg

from .kinematics import PhaseSpaceSpec, displacement
from .maps import fourier_apply

__all__ = [
    "DiffusionChannel",
    "momentum_diffusion",
    "position_diffusion",
    "kraus_set",
    "apply_kraus",
    "apply_diffusion",
    "damping_factor",
    "large_m_suppression",
]


@dataclass(frozen=True)
class DiffusionChannel:
    """Coupling strength alpha, term count M, and the displacement direction.

    By default the channel is collinear: the M displacement pairs form the
    ladder (n*dq, n*dp), n = 1..M, and the fast kernel path applies.  An
    explicit `displacements` tuple describes a mixture of arbitrary
    directions; mixtures are evolved through the operator sum only.
    """

    spec: PhaseSpaceSpec
    alpha: float
    dq: int = 0
    dp: int = 1
    terms: int = 1
    displacements: tuple[tuple[int, int], ...] | None = None

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"coupling alpha must lie in [0, 1], got {self.alpha}")
        if not 1 <= self.terms <= self.spec.N:
            raise ValueError(f"term count must satisfy 1 <= M <= N, got M={self.terms}")
        if self.displacements is None:
            if (self.dq, self.dp) == (0, 0):
                raise ValueError("elementary displacement (dq, dp) must be nonzero")
        else:
            if len(self.displacements) != self.terms:
                raise ValueError(
                    f"terms={self.terms} but {len(self.displacements)} displacements given"
                )
            if any(pair == (0, 0) for pair in self.displacements):
                raise ValueError("displacement mixture must not contain (0, 0)")

    @property
    def is_collinear(self) -> bool:
        return self.displacements is None

    def displacement_steps(self) -> tuple[tuple[int, int], ...]:
        """The M displacement index pairs entering the operator sum."""
        if self.displacements is not None:
            return self.displacements
        return tuple((n * self.dq, n * self.dp) for n in range(1, self.terms + 1))


def momentum_diffusion(spec: PhaseSpaceSpec, alpha: float, terms: int = 1) -> DiffusionChannel:
    """Diffusion along the momentum axis (elementary displacement V)."""
    return DiffusionChannel(spec, alpha, dq=0, dp=1, terms=terms)


def position_diffusion(spec: PhaseSpaceSpec, alpha: float, terms: int = 1) -> DiffusionChannel:
    """Diffusion along the position axis (elementary displacement U)."""
    return DiffusionChannel(spec, alpha, dq=1, dp=0, terms=terms)


def kraus_set(channel: DiffusionChannel) -> list[np.ndarray]:
    """Operator-sum representation: sqrt(1-alpha) I plus the weighted D_n, D_n^dag.

    Exactly zero-weight operators are dropped, so alpha = 0 yields the single
    identity operator.  The completeness sum E_k^dag E_k = I holds exactly
    because every displacement is unitary.
    """
    ops: list[np.ndarray] = []
    w0 = math.sqrt(1.0 - channel.alpha)
    if w0 > 0.0:
        ops.append(w0 * np.eye(channel.spec.N, dtype=complex))
    w = math.sqrt(channel.alpha / (2 * channel.terms))
    if w > 0.0:
        for dq, dp in channel.displacement_steps():
            d = displacement(channel.spec, dq, dp)
            ops.append(w * d)
            ops.append(w * d.conj().T)
    return ops


def apply_kraus(rho: np.ndarray, ops: list[np.ndarray]) -> np.ndarray:
    """Plain operator sum sum_k E_k rho E_k^dag."""
    out = np.zeros_like(rho, dtype=complex)
    for e in ops:
        out += e @ rho @ e.conj().T
    return out


def _damping_profile(dtheta, alpha: float, terms: int):
    """Off-diagonal decay factor for eigenphase separation dtheta (vectorized).

    1 - alpha [1 - cos((M+1) x/2) sin(M x/2) / (M sin(x/2))], with the
    removable point x = 0 (mod 2 pi) evaluated to 1 exactly.
    """
    x = np.asarray(dtheta, dtype=float)
    half = 0.5 * x
    s = np.sin(half)
    with np.errstate(divide="ignore", invalid="ignore"):
        cos_sum = np.cos((terms + 1) * half) * np.sin(terms * half) / s
    cos_sum = np.where(np.abs(s) < 1e-9, float(terms), cos_sum)
    return 1.0 - alpha * (1.0 - cos_sum / terms)


def damping_factor(channel: DiffusionChannel, k: int) -> float:
    """Damping of the off-diagonal at offset k in the displacement eigenbasis.

    k = i - i' counts eigenphase steps of 2 pi / N; k = 0 (and any multiple of
    N) returns exactly 1, so diagonal elements are untouched.
    """
    value = _damping_profile(2 * np.pi * k / channel.spec.N, channel.alpha, channel.terms)
    return float(value)


def large_m_suppression(alpha: float) -> float:
    """Many-term limit of the suppression of far off-diagonals: 1 - alpha.

    For offsets k where sin(pi k M / N)/(M sin(pi k / N)) is O(1/M), one
    channel step multiplies the matrix element by approximately 1 - alpha.
    """
    return 1.0 - alpha


@lru_cache(maxsize=64)
def _ladder_kernel(n: int, scale: int, alpha: float, terms: int) -> np.ndarray:
    offsets = np.subtract.outer(np.arange(n), np.arange(n))
    return _damping_profile(2 * np.pi * scale * offsets / n, alpha, terms)


@lru_cache(maxsize=16)
def _displacement_eigenbasis(spec: PhaseSpaceSpec, dq: int, dp: int):
    """Orthonormal eigenbasis and eigenphases of D(dq, dp), built once per direction.

    D is unitary, hence normal, so the complex Schur form is diagonal; the
    returned arrays must be treated as read-only.
    """
    d = displacement(spec, dq, dp)
    t, z = scipy.linalg.schur(d, output="complex")
    return np.angle(np.diag(t)), z


def apply_diffusion(rho: np.ndarray, channel: DiffusionChannel) -> np.ndarray:
    """One dissipative step.  Trace, Hermiticity and positivity are preserved.

    Collinear channels go through the entrywise damping kernel in the
    eigenbasis of the elementary displacement: the position basis for
    (dq, dp) = (0, b), the momentum basis for (a, 0), and a cached Schur
    eigenbasis otherwise.  Mixtures fall back to the operator sum.
    """
    n = channel.spec.N
    if rho.shape != (n, n):
        raise ValueError(f"state shape {rho.shape} does not match dimension N={n}")
    if channel.alpha == 0.0:
        return rho.astype(complex, copy=True)
    if not channel.is_collinear:
        return apply_kraus(rho, kraus_set(channel))

    alpha, m = channel.alpha, channel.terms
    if channel.dq == 0:
        kernel = _ladder_kernel(n, channel.dp, alpha, m)
        return rho * kernel
    if channel.dp == 0:
        kernel = _ladder_kernel(n, channel.dq, alpha, m)
        spec = channel.spec
        # G rho G^dag, entrywise damping in the momentum basis, then back
        rho_m = fourier_apply(fourier_apply(rho, spec).conj().T, spec).conj().T
        rho_m *= kernel
        back = fourier_apply(fourier_apply(rho_m, spec, inverse=True).conj().T,
                             spec, inverse=True).conj().T
        return back
    phases, z = _displacement_eigenbasis(channel.spec, channel.dq, channel.dp)
    kernel = _damping_profile(np.subtract.outer(phases, phases), alpha, m)
    return z @ (kernel * (z.conj().T @ rho @ z)) @ z.conj().T
