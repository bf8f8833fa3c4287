from math import log, pi

import numpy as np
import pytest

from cesarolab.carleson import GROWING, tail_statistic
from cesarolab.errors import DomainError, ParameterError, UnsupportedRegimeError
from cesarolab.estimates import circle_integral, disk_integral, prop31_suprema
from cesarolab.measure import Atoms, BetaLog, Lebesgue


def test_poisson_kernel_identity():
    cmp = circle_integral(0.5, 2.0)
    assert cmp.computed == pytest.approx(2 * pi / 0.75, abs=1e-8)
    assert cmp.regime == 'alpha>1'


@pytest.mark.parametrize('alpha', [0.5, 1.0, 2.0, 3.0])
@pytest.mark.parametrize('r', [0.5, 0.9, 0.99, 0.999])
def test_circle_integral_ratio(alpha, r):
    assert 0.1 <= circle_integral(r, alpha).ratio <= 10


def test_circle_integral_is_rotation_invariant():
    assert circle_integral(0.6j, 1.5).computed == pytest.approx(circle_integral(0.6, 1.5).computed, rel=1e-10)


def test_circle_integral_domain():
    with pytest.raises(DomainError):
        circle_integral(1.0, 1.0)


@pytest.mark.parametrize('delta', [0.0, 1.0, 2.5])
def test_disk_integral_degenerate(delta):
    cmp = disk_integral(0, 0, 0, 0, delta, 0)
    assert cmp.regime == 'degenerate'
    assert cmp.computed == pytest.approx(1 / (delta + 1), rel=1e-8)


def test_disk_integral_against_series():
    x = 0.81
    exact = 1 / (1 - x) - (-log(1 - x) - x) / x**2
    cmp = disk_integral(0.9, 0, 4, 0, 1, 0)
    assert cmp.regime == 'case2'
    assert cmp.assumption == 'dimension n=1'
    assert cmp.computed == pytest.approx(exact, rel=1e-6)


@pytest.mark.parametrize('w', [0.5, 0.9, 0.99])
def test_disk_integral_first_regime(w):
    cmp = disk_integral(w, 0.5j, 1.5, 1.5, 0.0, 0.0)
    assert cmp.regime == 'case1'
    assert 0.1 <= cmp.ratio <= 10


@pytest.mark.parametrize('w', [0.5, 0.9, 0.99])
def test_disk_integral_second_regime(w):
    assert 0.1 <= disk_integral(w, 0.3, 3.0, 0.5, 0.0, 1.0).ratio <= 10


def test_disk_integral_symmetry():
    one = disk_integral(0.5, 0.3j, 1.5, 1.5, 0.0, 0.0).computed
    other = disk_integral(0.3j, 0.5, 1.5, 1.5, 0.0, 0.0).computed
    assert abs(one - other) <= 1e-6 * abs(one)


def test_disk_integral_regimes():
    with pytest.raises(UnsupportedRegimeError):
        disk_integral(0.5, 0.5, 1.0, 1.0, 0.0, 0.0)
    with pytest.raises(DomainError):
        disk_integral(1.0, 0.0, 3.0, 0.0, 0.0, 0.0)
    with pytest.raises(ParameterError):
        disk_integral(0.5, 0.0, 3.0, 0.0, -1.0, 0.0)


def test_suprema_of_log_carleson_measure():
    reports = prop31_suprema(BetaLog(0.75, 1.0), beta=1.0, gamma=1.0, q=0.0, s=0.75, depth=24)
    assert set(reports) == {'S1', 'S2', 'S3'}
    for rep in reports.values():
        assert rep.verdict != GROWING


def test_suprema_of_lebesgue_grow_beyond_its_exponent():
    reports = prop31_suprema(Lebesgue(), beta=1.0, gamma=0.0, q=0.0, s=1.5, depth=24)
    assert reports['S1'].verdict == GROWING
    assert reports['S2'].sup >= reports['S1'].sup


def test_suprema_parameters():
    with pytest.raises(ParameterError):
        prop31_suprema(Lebesgue(), beta=1.0, gamma=0.0, q=1.0, s=1.0)
    with pytest.raises(ParameterError):
        prop31_suprema(Lebesgue(), beta=0.0, gamma=0.0, q=0.0, s=1.0)


TRIANGLE = [
    (BetaLog(1.5), 1.0, 0.0), (BetaLog(1.5), 2.0, 0.0),
    (BetaLog(2.0), 1.5, 0.0), (BetaLog(2.0), 2.5, 0.0),
    (BetaLog(1.5, 1.0), 1.0, 1.0), (BetaLog(1.5, 1.0), 2.0, 1.0),
    (BetaLog(2.0, 1.0), 1.5, 1.0), (BetaLog(2.0, 1.0), 2.5, 1.0),
    (Lebesgue(), 0.5, 0.0), (Lebesgue(), 1.5, 0.0),
    (Atoms(((0.5, 1.0), (0.9, 0.5))), 0.5, 0.0), (Atoms(((0.5, 1.0), (0.9, 0.5))), 1.5, 1.0),
]


@pytest.mark.parametrize('half_q', [False, True])
@pytest.mark.parametrize('m, s, gamma', TRIANGLE)
def test_suprema_agree_with_tail_statistic(m, s, gamma, half_q):
    q = s / 2 if half_q else 0.0
    reports = prop31_suprema(m, beta=1.0, gamma=gamma, q=q, s=s, depth=20)
    tail = tail_statistic(m, s, gamma, depth=20)
    assert {rep.verdict for rep in reports.values()} == {tail.verdict}
    assert (tail.verdict == GROWING) == (s > m.exponent[0])


@pytest.mark.parametrize('m, s, gamma', TRIANGLE[::3])
def test_first_supremum_dominates_tail(m, s, gamma):
    s1 = prop31_suprema(m, beta=1.0, gamma=gamma, q=0.0, s=s, depth=20)['S1']
    d = 1.0 - s1.grid
    tails = np.array([m.tail_mass(x) for x in s1.grid])
    bound = tails * np.log(np.e / d)**gamma / d**s / (2.0 - d)**(s + 1.0)
    assert np.all(s1.values >= bound * (1 - 1e-6))
