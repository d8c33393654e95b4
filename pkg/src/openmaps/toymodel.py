"""Analytic element-counting model of entropy growth for the diffusive baker map.

The model replaces one baker step by the folding rule that turns each momentum
eigenstate into an equal superposition of two momentum states half a torus
apart, and replaces the many-term diffusion step by the flat suppression
1 - alpha of every off-diagonal element.  After t steps the density matrix
holds 2^t diagonal elements of size 2^-t plus, for each age n = 1..t,
2^(t+n-1) off-diagonal elements of size 2^-t (1-alpha)^n.  Summing squares
gives the purity in closed form:

    Tr rho^2 = 2^-t [1 + (x/2)(x^t - 1)/(x - 1)],   x = 2 (1-alpha)^2,

with the removable point x = 1 evaluating to 2^-t (1 + t/2).  The entropy
S = -ln Tr rho^2 grows with asymptotic rate ln 2 above the critical coupling
and -2 ln(1-alpha) below it; the two branches meet at alpha_c = 1 - 2^-1/2.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "toy_purity",
    "toy_entropy",
    "toy_entropy_series",
    "alpha_critical",
    "asymptotic_rate",
]

_X_TIE = 1e-12  # below this |x-1| the geometric sum is replaced by its limit


def _check_args(alpha: float, t: int) -> None:
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    if t < 0 or int(t) != t:
        raise ValueError(f"t must be a nonnegative integer, got {t}")


def _log_bracket(alpha: float, t: int) -> float:
    """ln of 1 + (x/2)(x^t - 1)/(x - 1), stable for any t."""
    x = 2.0 * (1.0 - alpha) ** 2
    if t == 0:
        return 0.0
    if abs(x - 1.0) < _X_TIE:
        return math.log1p(0.5 * t)
    if x < 1.0:
        return math.log1p(0.5 * x * (1.0 - x**t) / (1.0 - x))
    c = 0.5 * x / (x - 1.0)
    t_log_x = t * math.log(x)
    if t_log_x < 500.0:
        return math.log1p(c * (x**t - 1.0))
    # x^t overflows double precision; 1 + c(x^t - 1) = c x^t (1 + (1 - c)/(c x^t))
    return math.log(c) + t_log_x + math.log1p((1.0 - c) * math.exp(-t_log_x) / c)


def toy_purity(alpha: float, t: int) -> float:
    """Tr rho^2 after t steps; 1 at t = 0 and, for alpha = 0, at every t."""
    _check_args(alpha, t)
    return math.exp(-t * math.log(2.0) + _log_bracket(alpha, t))


def toy_entropy(alpha: float, t: int) -> float:
    """S(t) = t ln 2 - ln[1 + (x/2)(x^t - 1)/(x - 1)], evaluated in log space."""
    _check_args(alpha, t)
    return t * math.log(2.0) - _log_bracket(alpha, t)


def toy_entropy_series(alpha: float, t_max: int) -> np.ndarray:
    """S(t) for t = 0..t_max as a float array."""
    return np.array([toy_entropy(alpha, t) for t in range(t_max + 1)])


def alpha_critical() -> float:
    """Coupling separating the two growth regimes: 1 - 2^-1/2, about 0.2929."""
    return 1.0 - 1.0 / math.sqrt(2.0)


def asymptotic_rate(alpha: float) -> float:
    """Large-t entropy slope: min(ln 2, -2 ln(1-alpha))."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    if alpha >= 1.0:
        return math.log(2.0)
    return min(math.log(2.0), -2.0 * math.log(1.0 - alpha))
