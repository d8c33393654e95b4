import math

import numpy as np
import pytest

from openmaps import alpha_critical, asymptotic_rate, toy_entropy, toy_entropy_series, toy_purity

LN2 = math.log(2)


def census_purity(alpha, t):
    """Independent element count: 2^t diagonal cells of 2^-t plus, per age n,
    2^(t+n-1) off-diagonal cells of 2^-t (1-alpha)^n."""
    total = (2**t) * (2.0**-t) ** 2
    for n in range(1, t + 1):
        total += 2 ** (t + n - 1) * (2.0**-t * (1 - alpha) ** n) ** 2
    return total


def test_purity_anchors():
    assert toy_purity(0.3, 0) == 1.0
    for t in (1, 5, 20):
        assert abs(toy_purity(0.0, t) - 1.0) < 1e-12


@pytest.mark.parametrize("alpha,t", [(0.5, 6), (0.1, 12), (0.9, 9), (alpha_critical(), 8)])
def test_purity_matches_census_loop(alpha, t):
    assert abs(toy_purity(alpha, t) - census_purity(alpha, t)) < 1e-14


def test_entropy_zero_under_unitary():
    for t in range(10):
        assert abs(toy_entropy(0.0, t)) < 1e-12


def test_strong_coupling_slope_is_ln2():
    s = toy_entropy_series(0.8, 12)
    assert abs((s[11] - s[10]) - LN2) < 1e-3


def test_weak_coupling_slope():
    s = toy_entropy_series(0.1, 60)
    assert abs((s[60] - s[59]) - (-2 * math.log(0.9))) < 1e-3


def test_alpha_critical_value():
    ac = alpha_critical()
    assert 0.29 < ac < 0.30
    assert abs(2 * (1 - ac) ** 2 - 1.0) < 1e-15


def test_slope_continuous_across_critical_coupling():
    # both one-sided large-t slopes approach ln 2 at the threshold
    ac = alpha_critical()
    t = 4000
    for alpha in (ac - 1e-4, ac, ac + 1e-4):
        slope = toy_entropy(alpha, t) - toy_entropy(alpha, t - 1)
        assert abs(slope - LN2) < 2e-3


def test_entropy_monotone_in_time_and_coupling():
    alphas = np.linspace(0.0, 0.98, 50)
    for alpha in alphas:
        prev = -1.0
        for t in range(0, 61, 5):
            s = toy_entropy(alpha, t)
            assert s >= prev - 1e-12
            prev = s
    for t in (5, 25, 60):
        values = [toy_entropy(a, t) for a in alphas]
        assert all(b >= a - 1e-12 for a, b in zip(values, values[1:]))


def test_asymptotic_rate_matches_finite_differences():
    # deep in the asymptotic regime the finite difference lands on
    # min(ln 2, -2 ln(1-alpha)) over the whole coupling grid
    t = 400
    for alpha in np.arange(0.02, 0.99, 0.02):
        fd = toy_entropy(alpha, t) - toy_entropy(alpha, t - 1)
        assert abs(fd - asymptotic_rate(alpha)) < 1e-3


def test_log_space_stability():
    # far beyond double-precision 2^t overflow territory
    s = toy_entropy(0.05, 20000)
    assert np.isfinite(s)
    assert abs((toy_entropy(0.05, 20000) - toy_entropy(0.05, 19999)) - asymptotic_rate(0.05)) < 1e-9


def test_argument_validation():
    with pytest.raises(ValueError):
        toy_purity(1.5, 3)
    with pytest.raises(ValueError):
        toy_entropy(0.5, -1)
