"""Experiment harness: configs, evolution loops, entropy series, slope fits, sweeps.

One experiment alternates a unitary map step with a dissipative step and
records the linear entropy after each composed step.  Everything is
deterministic: identical configs produce bit-identical series and snapshots.

Config files are flat `key = value` text, one pair per line, `#` comments:

    map = baker
    N = 128
    alpha = 0.6
    direction = alpha_p
    steps = 30
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields, replace

import numpy as np

from . import classical as cl
from .channel import DiffusionChannel, apply_diffusion, apply_kraus, kraus_set
from .kinematics import PhaseSpaceSpec, basis_state, coherent_state, linear_entropy, pure_density
from .maps import baker_propagator, harper_propagator, unitary_step
from .toymodel import asymptotic_rate, toy_entropy_series
from .wigner import wigner_diffuse, wigner_transform

__all__ = [
    "ConfigError",
    "ExperimentConfig",
    "ExperimentResult",
    "SlopeFit",
    "parse_config",
    "load_config",
    "run_experiment",
    "fit_slope",
    "sweep_alpha",
    "sweep_dimensions",
    "selftest",
]

TRACE_RESIDUAL_LIMIT = 1e-10


class ConfigError(ValueError):
    """A configuration field failed validation; `field` names the offender."""

    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


@dataclass
class ExperimentConfig:
    """Everything one run needs; validated up front so runs fail fast."""

    map_name: str = "baker"
    gamma: float = 0.45
    n: int = 128
    chi_q: float = 0.5
    chi_p: float = 0.5
    state: str = "coherent"
    q0: float = 1.0 / 3.0
    p0: float = 1.0 / 3.0
    index: int = 0
    direction: str = "alpha_p"
    dq: int = 0
    dp: int = 0
    alpha: float = 0.5
    terms: int | None = None
    terms_fraction: float | None = None
    steps: int = 30
    classical_parallel: bool = False
    classical_grid: int | None = None
    wigner_every: int = 0
    slope_lower: float = 0.1
    slope_upper: float = 0.75

    def resolved_terms(self) -> int:
        if self.terms is not None:
            return self.terms
        fraction = 1.0 if self.terms_fraction is None else self.terms_fraction
        return max(1, min(self.n, round(fraction * self.n)))

    def resolved_direction(self) -> tuple[int, int]:
        if self.direction == "alpha_p":
            return (0, 1)
        if self.direction == "alpha_q":
            return (1, 0)
        return (self.dq, self.dp)

    def spec(self) -> PhaseSpaceSpec:
        return PhaseSpaceSpec(self.n, self.chi_q, self.chi_p)

    def validate(self) -> None:
        if self.map_name not in ("baker", "harper"):
            raise ConfigError("map", f"must be 'baker' or 'harper', got {self.map_name!r}")
        if self.n < 1:
            raise ConfigError("N", f"must be a positive integer, got {self.n}")
        if self.map_name == "baker" and self.n % 2 != 0:
            raise ConfigError("N", f"baker map needs even N, got {self.n}")
        if not (0.0 <= self.chi_q < 1.0 and 0.0 <= self.chi_p < 1.0):
            raise ConfigError("chi_q", "Floquet angles must lie in [0, 1)")
        if self.map_name == "baker" and not (self.chi_q == 0.5 and self.chi_p == 0.5):
            raise ConfigError("chi_q", "baker map requires chi_q = chi_p = 1/2")
        if self.state not in ("coherent", "momentum", "position"):
            raise ConfigError("state", f"unknown initial state {self.state!r}")
        if self.state == "coherent" and not (0.0 <= self.q0 < 1.0 and 0.0 <= self.p0 < 1.0):
            raise ConfigError("q0", "coherent center must lie in [0, 1) x [0, 1)")
        if self.state in ("momentum", "position") and not 0 <= self.index < self.n:
            raise ConfigError("index", f"basis index must lie in [0, {self.n})")
        if self.direction not in ("alpha_p", "alpha_q", "custom"):
            raise ConfigError("direction", f"must be alpha_p, alpha_q or custom, got {self.direction!r}")
        if self.direction == "custom" and (self.dq, self.dp) == (0, 0):
            raise ConfigError("dq", "custom direction needs a nonzero (dq, dp)")
        if not 0.0 <= self.alpha <= 1.0:
            raise ConfigError("alpha", f"must lie in [0, 1], got {self.alpha}")
        if self.terms is not None and not 1 <= self.terms <= self.n:
            raise ConfigError("M", f"must satisfy 1 <= M <= N, got {self.terms}")
        if self.terms_fraction is not None and not 0.0 < self.terms_fraction <= 1.0:
            raise ConfigError("M_fraction", "must lie in (0, 1]")
        if self.steps < 0:
            raise ConfigError("steps", "must be nonnegative")
        if self.wigner_every < 0:
            raise ConfigError("wigner_every", "must be nonnegative")
        if self.classical_grid is not None:
            if self.classical_grid < 2:
                raise ConfigError("classical_grid", "must be at least 2")
            if self.map_name == "baker" and self.classical_grid % 2 != 0:
                raise ConfigError("classical_grid", "baker transport needs an even grid")
        if not 0.0 <= self.slope_lower < self.slope_upper <= 1.0:
            raise ConfigError("slope_lower", "need 0 <= lower < upper <= 1")

    def channel(self) -> DiffusionChannel:
        dq, dp = self.resolved_direction()
        return DiffusionChannel(self.spec(), self.alpha, dq=dq, dp=dp, terms=self.resolved_terms())


# config-file key -> (dataclass field, parser)
def _parse_bool(text: str) -> bool:
    low = text.lower()
    if low in ("true", "yes", "1", "on"):
        return True
    if low in ("false", "no", "0", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


_KEYS = {
    "map": ("map_name", str),
    "gamma": ("gamma", float),
    "n": ("n", int),
    "chi_q": ("chi_q", float),
    "chi_p": ("chi_p", float),
    "state": ("state", str),
    "q0": ("q0", float),
    "p0": ("p0", float),
    "index": ("index", int),
    "direction": ("direction", str),
    "dq": ("dq", int),
    "dp": ("dp", int),
    "alpha": ("alpha", float),
    "m": ("terms", int),
    "terms": ("terms", int),
    "m_fraction": ("terms_fraction", float),
    "terms_fraction": ("terms_fraction", float),
    "steps": ("steps", int),
    "classical_parallel": ("classical_parallel", _parse_bool),
    "classical_grid": ("classical_grid", int),
    "wigner_every": ("wigner_every", int),
    "slope_lower": ("slope_lower", float),
    "slope_upper": ("slope_upper", float),
}


def parse_config(text: str) -> ExperimentConfig:
    """Parse flat `key = value` lines into a validated config."""
    cfg = ExperimentConfig()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}", f"expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        entry = _KEYS.get(key.lower())
        if entry is None:
            raise ConfigError(key, "unknown configuration key")
        field_name, parser = entry
        try:
            setattr(cfg, field_name, parser(value))
        except (TypeError, ValueError) as exc:
            raise ConfigError(key, f"bad value {value!r} ({exc})") from None
    cfg.validate()
    return cfg


def load_config(path) -> ExperimentConfig:
    with open(path) as fh:
        return parse_config(fh.read())


@dataclass(frozen=True)
class SlopeFit:
    slope: float
    t_start: int
    t_end: int
    points: int


def fit_slope(t, s, s_ref: float | None = None, lower: float = 0.1,
              upper: float = 0.75, min_points: int = 4) -> SlopeFit | None:
    """Least-squares slope of s(t) over the pre-saturation window.

    The window keeps points with lower * s_ref < s < upper * s_ref, where
    s_ref defaults to max(s).  Returns None when fewer than min_points points
    qualify: that is the explicit no-linear-regime answer, not an error.
    """
    t = np.asarray(t, dtype=float)
    s = np.asarray(s, dtype=float)
    if s_ref is None:
        s_ref = float(np.max(s)) if s.size else 0.0
    if s_ref <= 0.0:
        return None
    mask = (s > lower * s_ref) & (s < upper * s_ref)
    if int(mask.sum()) < min_points:
        return None
    tw, sw = t[mask], s[mask]
    slope = float(np.polyfit(tw, sw, 1)[0])
    return SlopeFit(slope, int(tw[0]), int(tw[-1]), int(mask.sum()))


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    t: np.ndarray
    entropy: np.ndarray
    trace_residual: np.ndarray
    classical_entropy: np.ndarray | None = None
    wigner_snapshots: dict = field(default_factory=dict)
    classical_snapshots: dict = field(default_factory=dict)
    final_state: np.ndarray | None = None
    final_classical: np.ndarray | None = None

    def slope(self) -> SlopeFit | None:
        return fit_slope(self.t, self.entropy, s_ref=math.log(self.config.n),
                         lower=self.config.slope_lower, upper=self.config.slope_upper)

    def max_trace_residual(self) -> float:
        return float(np.max(self.trace_residual))


def _initial_density(cfg: ExperimentConfig) -> np.ndarray:
    spec = cfg.spec()
    if cfg.state == "coherent":
        return pure_density(coherent_state(spec, cfg.q0, cfg.p0))
    return pure_density(basis_state(spec, cfg.state, cfg.index))


def _initial_classical(cfg: ExperimentConfig, grid: int) -> np.ndarray:
    if cfg.state == "coherent":
        return cl.gaussian_density(grid, cfg.q0, cfg.p0, 1.0 / (4 * np.pi * cfg.n))
    if cfg.state == "position":
        rho = np.zeros((grid, grid))
        cell = min(grid - 1, int((cfg.index + cfg.chi_p) / cfg.n * grid))
        rho[cell, :] = 1.0
        return rho / rho.sum()
    rho = np.zeros((grid, grid))
    cell = min(grid - 1, int((cfg.index + cfg.chi_q) / cfg.n * grid))
    rho[:, cell] = 1.0
    return rho / rho.sum()


def _propagator(cfg: ExperimentConfig):
    spec = cfg.spec()
    if cfg.map_name == "baker":
        return baker_propagator(spec)
    return harper_propagator(spec, cfg.gamma)


def run_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """Alternate unitary and dissipative steps, recording entropy after each pair.

    The t = 0 record holds the initial state's entropy.  Wigner and classical
    snapshots are collected every `wigner_every` steps (including t = 0) when
    requested.  No randomness anywhere: reruns are bit identical.
    """
    cfg.validate()
    spec = cfg.spec()
    prop = _propagator(cfg)
    channel = cfg.channel()
    rho = _initial_density(cfg)

    grid = cfg.classical_grid or 2 * cfg.n
    rho_c = _initial_classical(cfg, grid) if cfg.classical_parallel else None

    entropies = [linear_entropy(rho)]
    residuals = [abs(float(np.trace(rho).real) - 1.0)]
    classical_entropies = [cl.classical_linear_entropy(rho_c)] if rho_c is not None else None
    wigner_snaps: dict = {}
    classical_snaps: dict = {}

    def snapshot(t: int) -> None:
        if cfg.wigner_every > 0 and t % cfg.wigner_every == 0:
            wigner_snaps[t] = wigner_transform(rho, spec)
            if rho_c is not None:
                classical_snaps[t] = rho_c.copy()

    snapshot(0)
    for t in range(1, cfg.steps + 1):
        rho = unitary_step(rho, prop)
        rho = apply_diffusion(rho, channel)
        entropies.append(linear_entropy(rho))
        residuals.append(abs(float(np.trace(rho).real) - 1.0))
        if rho_c is not None:
            rho_c = cl.classical_grid_step(rho_c, cfg.map_name, cfg.gamma)
            rho_c = cl.classical_diffuse(rho_c, channel)
            classical_entropies.append(cl.classical_linear_entropy(rho_c))
        snapshot(t)

    return ExperimentResult(
        config=cfg,
        t=np.arange(cfg.steps + 1),
        entropy=np.array(entropies),
        trace_residual=np.array(residuals),
        classical_entropy=np.array(classical_entropies) if classical_entropies is not None else None,
        wigner_snapshots=wigner_snaps,
        classical_snapshots=classical_snaps,
        final_state=rho,
        final_classical=rho_c,
    )


def sweep_alpha(template: ExperimentConfig, alphas) -> list[dict]:
    """Run the template once per coupling value; one result row per run.

    Failures are recorded in the row's status and the sweep continues.
    """
    rows = []
    for alpha in alphas:
        row = {"alpha": float(alpha), "slope": None, "t_start": None, "t_end": None}
        try:
            result = run_experiment(replace(template, alpha=float(alpha)))
            fit = result.slope()
            if fit is None:
                row["status"] = "no linear regime"
            else:
                row.update(slope=fit.slope, t_start=fit.t_start, t_end=fit.t_end, status="ok")
        except (ConfigError, ValueError) as exc:
            row["status"] = f"error: {exc}"
        rows.append(row)
    return rows


def sweep_dimensions(template: ExperimentConfig, n_values) -> list[dict]:
    """Run the template per dimension; rows carry the log-rescaled curves.

    Each row holds t, t/ln N, S, S/ln N for one run, the scaling that
    collapses the curves onto a dimension-independent shape.
    """
    rows = []
    for n in n_values:
        cfg = replace(template, n=int(n))
        result = run_experiment(cfg)
        log_n = math.log(int(n))
        for t, s in zip(result.t, result.entropy):
            rows.append({
                "N": int(n),
                "t": int(t),
                "t_over_logN": t / log_n,
                "entropy": float(s),
                "entropy_over_logN": float(s) / log_n,
            })
    return rows


# ---------------------------------------------------------------------------
# built-in oracle equivalence suite

def _random_density(rng, n: int) -> np.ndarray:
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def selftest() -> list[tuple[str, bool, str]]:
    """Fast cross-checks of every dual-route pair; returns (name, ok, detail) rows."""
    rng = np.random.default_rng(20240915)
    checks: list[tuple[str, bool, str]] = []

    worst = 0.0
    for _ in range(6):
        n = int(rng.integers(3, 13))
        spec = PhaseSpaceSpec(n)
        m = int(rng.integers(1, n + 1))
        alpha = float(rng.choice([0.1, 0.4, 0.7, 1.0]))
        dq, dp = 0, 0
        while (dq, dp) == (0, 0):
            dq, dp = int(rng.integers(-2, 3)), int(rng.integers(-2, 3))
        channel = DiffusionChannel(spec, alpha, dq=dq, dp=dp, terms=m)
        rho = _random_density(rng, n)
        dev = float(np.max(np.abs(apply_diffusion(rho, channel)
                                  - apply_kraus(rho, kraus_set(channel)))))
        worst = max(worst, dev)
    checks.append(("channel kernel vs operator sum", worst < 1e-12, f"max dev {worst:.2e}"))

    spec = PhaseSpaceSpec(16)
    rho = _random_density(rng, 16)
    dev = 0.0
    for prop in (baker_propagator(spec), harper_propagator(spec, 0.45)):
        dev = max(dev, float(np.max(np.abs(prop.evolve(rho, dense=False)
                                           - prop.evolve(rho, dense=True)))))
    checks.append(("factored propagator vs dense", dev < 1e-10, f"max dev {dev:.2e}"))

    spec = PhaseSpaceSpec(8)
    rho = _random_density(rng, 8)
    channel = DiffusionChannel(spec, 0.6, dq=0, dp=1, terms=3)
    via_rho = wigner_transform(apply_diffusion(rho, channel), spec)
    via_grid = wigner_diffuse(wigner_transform(rho, spec), channel)
    dev = float(np.max(np.abs(via_rho - via_grid)))
    checks.append(("Wigner smearing vs channel", dev < 1e-10, f"max dev {dev:.2e}"))

    ops = kraus_set(DiffusionChannel(PhaseSpaceSpec(6), 0.7, dq=1, dp=1, terms=4))
    total = sum(e.conj().T @ e for e in ops)
    dev = float(np.max(np.abs(total - np.eye(6))))
    checks.append(("operator-sum completeness", dev < 1e-12, f"max dev {dev:.2e}"))

    series = toy_entropy_series(0.8, 60)
    dev = abs((series[-1] - series[-2]) - math.log(2))
    series = toy_entropy_series(0.1, 60)
    dev = max(dev, abs((series[-1] - series[-2]) - asymptotic_rate(0.1)))
    checks.append(("analytic model slopes", dev < 1e-3, f"max dev {dev:.2e}"))

    return checks
