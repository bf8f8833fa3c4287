from math import pi, sqrt

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cesarolab.carleson import GROWING
from cesarolab.errors import DomainError, ParameterError
from cesarolab.series import ConformalKernel, Constant, GeometricOnes, Lacunary, LogKernel, Monomial, PowerKernel, make_series
from cesarolab.spaces import (BlochType, Hardy, Lambda11, MeanLip, Morrey, angle_count, bloch_coefficient_profile,
                              bloch_coefficient_statistic, bloch_norm, estimate_norm, growth_envelope_check,
                              hardy_norm, integral_mean, lambda11_statistic, mean_lipschitz_norm, morrey_norm,
                              radial_grid)


def test_parseval_at_one_half():
    f = make_series(GeometricOnes(), 512)
    assert integral_mean(f, 0.5, 2) == pytest.approx(sqrt(4 / 3), abs=1e-10)


@settings(max_examples=30, deadline=None)
@given(st.floats(0.0, 0.99))
def test_parseval_identity(r):
    f = make_series(ConformalKernel(0.5), 64)
    exact = np.sum(np.abs(f.coeffs)**2 * r**(2 * np.arange(65)))
    assert abs(integral_mean(f, r, 2)**2 - exact) <= 1e-10


def test_maximum_modulus():
    f = make_series(ConformalKernel(0.5), 64)
    assert integral_mean(f, 0.9, np.inf) == pytest.approx(0.5 / (1 - 0.45), rel=1e-12)


def test_radial_grid_stops_at_admissible_radius():
    r = radial_grid(0.9, depth=10)
    assert r[0] == 0.0
    assert r[-1] == 0.9
    assert np.all(np.diff(r) > 0)


def test_angle_count():
    assert angle_count(10) == 64
    assert angle_count(4096) == 32768


def test_hardy_norm_of_log_kernel():
    est = hardy_norm(make_series(LogKernel(), 4096), 2)
    assert 1.2 < est.value < pi / sqrt(6)
    assert np.all(np.diff(est.profile[:, 1]) > 0)
    assert est.grid_spec['space'] == 'hardy'


@settings(max_examples=10, deadline=None)
@given(st.floats(0.1, 10.0), st.sampled_from([1.0, 2.0, np.inf]))
def test_hardy_norm_is_homogeneous(c, p):
    f = make_series(ConformalKernel(0.5), 64)
    assert hardy_norm(c * f, p, depth=20).value == pytest.approx(c * hardy_norm(f, p, depth=20).value, rel=1e-9)


def test_bloch_norm_of_log_kernel():
    est = bloch_norm(make_series(LogKernel(), 4096), 1.0)
    assert 1.95 < est.value <= 2.0
    assert est.verdict != GROWING


def test_bloch_norm_with_complex_coefficients():
    f = make_series(ConformalKernel(0.5), 64)
    g = 1j * f
    assert bloch_norm(g, 1.0, depth=16).value == pytest.approx(bloch_norm(f, 1.0, depth=16).value, rel=1e-9)


def test_lacunary_coefficient_statistic():
    assert bloch_coefficient_statistic(make_series(Lacunary(), 4096), 1.0) <= 2.0


def test_coefficient_profile():
    profile = bloch_coefficient_profile(make_series(GeometricOnes(), 4), 1.0)
    assert np.allclose(profile, [1, 3 / 2, 6 / 3, 10 / 4])


def test_coefficient_statistic_needs_nonnegative_coefficients():
    with pytest.raises(DomainError):
        bloch_coefficient_statistic(make_series(Constant(1j), 8), 1.0)


@pytest.mark.parametrize('lam', [0.5, 1.0])
def test_morrey_methods_agree(lam):
    f = make_series(Monomial(3), 8)
    spectral = morrey_norm(f, lam, method='spectral', depth=10)
    tensor = morrey_norm(f, lam, method='tensor', depth=10)
    assert tensor.value == pytest.approx(spectral.value, rel=1e-5)


def test_morrey_area_at_the_origin():
    # integral of (1-|z|^2) dA is 1/2
    est = morrey_norm(make_series(Monomial(1), 4), 1.0, depth=8)
    assert est.profile[0, 1] == pytest.approx(sqrt(0.5), rel=1e-12)


def test_morrey_parameter():
    with pytest.raises(ParameterError):
        morrey_norm(make_series(Monomial(1), 4), 0.0)
    with pytest.raises(ParameterError):
        morrey_norm(make_series(Monomial(1), 4), 0.5, method='grid')


def test_growth_envelope():
    grows = growth_envelope_check(make_series(PowerKernel(0.75), 4096), Morrey(0.5))
    assert grows.verdict == GROWING
    flat = growth_envelope_check(make_series(PowerKernel(0.25), 4096), Morrey(0.5))
    assert flat.verdict != GROWING
    with pytest.raises(ParameterError):
        growth_envelope_check(make_series(PowerKernel(0.25), 64), Hardy(2))


def test_mean_lipschitz():
    assert mean_lipschitz_norm(make_series(LogKernel(), 4096), 2, 0.5).bounded
    assert mean_lipschitz_norm(make_series(GeometricOnes(), 4096), 2, 0.5).verdict == GROWING


def test_lambda11():
    assert lambda11_statistic(make_series(PowerKernel(2.0), 1024)).verdict == GROWING


def test_estimate_norm_dispatch():
    f = make_series(ConformalKernel(0.5), 64)
    assert estimate_norm(f, Hardy(2)).value == hardy_norm(f, 2).value
    assert estimate_norm(f, BlochType(1.0)).value == bloch_norm(f, 1.0).value
    assert estimate_norm(f, MeanLip(2, 0.5)).value == mean_lipschitz_norm(f, 2, 0.5).value
    assert estimate_norm(f, Lambda11()).value == lambda11_statistic(f).value
    with pytest.raises(ParameterError):
        estimate_norm(f, 'hardy')


@pytest.mark.parametrize('build', [lambda: Hardy(0), lambda: BlochType(-1), lambda: Morrey(1.5),
                                   lambda: MeanLip(np.inf, 0.5), lambda: MeanLip(2, 0)])
def test_space_parameters(build):
    with pytest.raises(ParameterError):
        build()


def _refinement(norm, kind):
    """Ratio of a norm estimate between truncations 4096 and 1024."""
    return norm(make_series(kind, 4096)).value / norm(make_series(kind, 1024)).value


@pytest.mark.parametrize('c, member', [(0.25, True), (0.75, False)])
def test_morrey_power_kernel(c, member):
    big = morrey_norm(make_series(PowerKernel(c), 4096), 0.5)
    ratio = _refinement(lambda f: morrey_norm(f, 0.5), PowerKernel(c))
    if member:
        assert big.trend_slope < 0.2
        assert 0.8 < ratio < 1.25
    else:
        assert big.verdict == GROWING
        assert ratio > 1.5


@pytest.mark.parametrize('kind, alpha, member', [
    (LogKernel(), 0.5, False), (LogKernel(), 1.0, True), (LogKernel(), 1.5, True),
    (PowerKernel(0.5), 1.0, False), (PowerKernel(0.5), 1.5, True), (GeometricOnes(), 1.5, False)])
def test_coefficient_statistic_tracks_bloch_norm(kind, alpha, member):
    by_norm = _refinement(lambda f: bloch_norm(f, alpha), kind)
    by_coefficients = (bloch_coefficient_statistic(make_series(kind, 4096), alpha)
                       / bloch_coefficient_statistic(make_series(kind, 1024), alpha))
    for ratio in (by_norm, by_coefficients):
        assert (ratio < 1.2) == member
        assert ratio < 1.2 or ratio > 1.5


@pytest.mark.parametrize('kind', [LogKernel(), PowerKernel(0.2), ConformalKernel(0.5)])
def test_hardy_functions_are_morrey_functions(kind):
    # lambda = 0.5 pairs with H^4
    assert _refinement(lambda f: hardy_norm(f, 4), kind) < 1.2
    est = morrey_norm(make_series(kind, 4096), 0.5)
    assert est.verdict != GROWING
    assert _refinement(lambda f: morrey_norm(f, 0.5), kind) < 1.2
