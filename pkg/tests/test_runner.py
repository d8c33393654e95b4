import math
from dataclasses import replace

import numpy as np
import pytest

from openmaps import (
    ConfigError,
    ExperimentConfig,
    fit_slope,
    parse_config,
    run_experiment,
    selftest,
    sweep_alpha,
    sweep_dimensions,
    toy_entropy_series,
)

SAMPLE = """
# baker run
map = baker
N = 32
alpha = 0.6
direction = alpha_p
M = 4
steps = 10
state = coherent
q0 = 0.3
p0 = 0.6
"""


def test_parse_config_roundtrip():
    cfg = parse_config(SAMPLE)
    assert cfg.map_name == "baker"
    assert cfg.n == 32
    assert cfg.resolved_terms() == 4
    assert cfg.resolved_direction() == (0, 1)
    assert cfg.steps == 10


def test_parse_config_errors_carry_field():
    with pytest.raises(ConfigError) as err:
        parse_config("unknown_key = 3")
    assert err.value.field == "unknown_key"
    with pytest.raises(ConfigError) as err:
        parse_config("map = baker\nN = 33")
    assert err.value.field == "N"
    with pytest.raises(ConfigError) as err:
        parse_config("alpha = not_a_number")
    assert err.value.field == "alpha"
    with pytest.raises(ConfigError) as err:
        parse_config("direction = custom")
    assert err.value.field == "dq"


def test_terms_fraction_resolution():
    cfg = parse_config("N = 64\nM_fraction = 0.25")
    assert cfg.resolved_terms() == 16
    cfg = parse_config("N = 64")
    assert cfg.resolved_terms() == 64  # default fraction covers the full span


def test_zero_steps_yields_initial_record():
    cfg = ExperimentConfig(n=16, steps=0, terms=2)
    result = run_experiment(cfg)
    assert list(result.t) == [0]
    assert len(result.entropy) == 1
    assert result.entropy[0] < 1e-10


def test_unitary_run_keeps_pure_state_pure():
    cfg = ExperimentConfig(n=32, alpha=0.0, steps=50, terms=2)
    result = run_experiment(cfg)
    assert np.max(np.abs(result.entropy)) < 1e-9
    assert result.max_trace_residual() < 1e-10


def test_entropy_bounded_and_trace_clean():
    cfg = ExperimentConfig(n=32, alpha=0.7, steps=25, terms=8)
    result = run_experiment(cfg)
    assert np.all(result.entropy >= -1e-10)
    assert np.all(result.entropy <= math.log(32) + 1e-9)
    assert result.max_trace_residual() < 1e-10


def test_classical_parallel_series():
    cfg = ExperimentConfig(n=16, alpha=0.5, steps=8, terms=4, classical_parallel=True)
    result = run_experiment(cfg)
    assert result.classical_entropy is not None
    assert len(result.classical_entropy) == 9
    diffs = np.diff(result.classical_entropy)
    assert np.all(diffs >= -1e-9)


def test_snapshot_cadence():
    cfg = ExperimentConfig(n=16, alpha=0.5, steps=6, terms=4, wigner_every=3,
                           classical_parallel=True)
    result = run_experiment(cfg)
    assert sorted(result.wigner_snapshots) == [0, 3, 6]
    assert sorted(result.classical_snapshots) == [0, 3, 6]
    assert result.wigner_snapshots[3].shape == (32, 32)
    assert result.classical_snapshots[6].shape == (32, 32)


def test_determinism():
    cfg = ExperimentConfig(n=32, alpha=0.55, steps=12, terms=6)
    a = run_experiment(cfg)
    b = run_experiment(cfg)
    assert np.array_equal(a.entropy, b.entropy)
    assert np.array_equal(a.final_state, b.final_state)


def test_fit_slope_exact_line():
    t = np.arange(11)
    fit = fit_slope(t, 0.7 * t)
    assert fit is not None
    assert abs(fit.slope - 0.7) < 1e-12


def test_fit_slope_on_toy_series():
    s = toy_entropy_series(0.8, 30)
    fit = fit_slope(np.arange(31), s)
    assert abs(fit.slope - math.log(2)) < 1e-2


def test_fit_slope_saturated_series_has_no_window():
    s = np.full(20, math.log(32))
    assert fit_slope(np.arange(20), s, s_ref=math.log(32)) is None


def test_fit_slope_too_few_points():
    t = np.arange(3)
    assert fit_slope(t, 0.5 * t) is None


def test_sweep_alpha_rows_and_empty_grid():
    template = ExperimentConfig(n=16, steps=12, terms=4)
    rows = sweep_alpha(template, [0.0, 0.6])
    assert [r["alpha"] for r in rows] == [0.0, 0.6]
    assert rows[0]["status"] == "no linear regime"
    assert rows[1]["status"] == "ok"
    assert rows[1]["slope"] > 0
    assert sweep_alpha(template, []) == []


def test_sweep_alpha_records_errors_and_continues():
    template = ExperimentConfig(n=16, steps=12, terms=4)
    rows = sweep_alpha(template, [2.0, 0.6])
    assert rows[0]["status"].startswith("error")
    assert rows[1]["status"] == "ok"


def test_sweep_dimensions_rescaled_rows():
    template = ExperimentConfig(steps=6, alpha=0.6, terms_fraction=0.125, terms=None)
    rows = sweep_dimensions(template, [16, 32])
    by_n = {n: [r for r in rows if r["N"] == n] for n in (16, 32)}
    assert all(len(v) == 7 for v in by_n.values())
    row = by_n[32][3]
    assert abs(row["t_over_logN"] - 3 / math.log(32)) < 1e-12
    assert abs(row["entropy_over_logN"] * math.log(32) - row["entropy"]) < 1e-12


def test_selftest_all_green():
    results = selftest()
    assert len(results) >= 5
    for name, ok, detail in results:
        assert ok, f"{name}: {detail}"


def test_replace_keeps_validation():
    cfg = ExperimentConfig(n=16, terms=4)
    bad = replace(cfg, alpha=1.5)
    with pytest.raises(ConfigError):
        bad.validate()
