"""Dissipative quantum maps on the discrete torus.

Density matrices of quantized chaotic maps (baker, kicked Harper) evolved
under a diffusive operator-sum channel, with discrete Wigner functions,
classical grid counterparts, an analytic entropy-growth model, and a
reproducible experiment runner.
"""

from .channel import (
    DiffusionChannel,
    apply_diffusion,
    apply_kraus,
    damping_factor,
    kraus_set,
    large_m_suppression,
    momentum_diffusion,
    position_diffusion,
)
from .classical import (
    classical_baker_point,
    classical_diffuse,
    classical_grid_step,
    classical_harper_point,
    classical_linear_entropy,
    delta_density,
    density_from_wigner,
    gaussian_density,
    uniform_density,
)
from .gridio import (
    CLASSICAL_MAGIC,
    WIGNER_MAGIC,
    read_grid,
    write_classical,
    write_grid,
    write_grid_csv,
    write_wigner,
)
from .kinematics import (
    PhaseSpaceSpec,
    basis_state,
    check_density,
    coherent_state,
    displacement,
    fourier_kernel,
    linear_entropy,
    maximally_mixed,
    momentum_grid,
    position_grid,
    pure_density,
    shift_operator,
)
from .maps import (
    UnitaryPropagator,
    baker_propagator,
    fourier_apply,
    harper_propagator,
    unitary_step,
)
from .runner import (
    ConfigError,
    ExperimentConfig,
    ExperimentResult,
    SlopeFit,
    fit_slope,
    load_config,
    parse_config,
    run_experiment,
    selftest,
    sweep_alpha,
    sweep_dimensions,
)
from .toymodel import (
    alpha_critical,
    asymptotic_rate,
    toy_entropy,
    toy_entropy_series,
    toy_purity,
)
from .wigner import (
    momentum_marginal,
    point_operator,
    position_marginal,
    reflection_operator,
    wigner_diffuse,
    wigner_transform,
)

__version__ = "0.1.0"
