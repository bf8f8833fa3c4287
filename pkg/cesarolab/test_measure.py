import numpy as np
import pytest
from scipy.integrate import quad

from cesarolab.errors import ParameterError, QuadratureError
from cesarolab.measure import Atoms, BetaLog, Lebesgue, MeasureSum, moment, moments, tail_mass, total_mass
from cesarolab.quadrature import integrate_dyadic
from cesarolab.settings import DEFAULT


def test_lebesgue_moments():
    seq = moments(Lebesgue(), 4096)
    assert seq.truncation == 4096
    assert np.max(np.abs(seq.values - 1.0 / np.arange(1, 4098))) < 1e-14
    assert set(seq.method) == {'closed_form'}


def test_beta_moment():
    value, err = moment(BetaLog(2.0, 0.0, 2.0), 3)
    assert value == pytest.approx(0.1, rel=1e-14)
    assert err < 1e-15


def test_total_mass():
    assert total_mass(BetaLog(0.5, 0.0, 0.5)) == pytest.approx(1.0, rel=1e-14)
    assert total_mass(Lebesgue()) == 1.0


def test_log_beta_moment_against_scipy():
    value, _ = moment(BetaLog(1.0, 1.0), 0)
    ref, _ = quad(lambda t: 1.0 / np.log(np.e / (1.0 - t)), 0.0, 1.0, epsabs=1e-13, epsrel=1e-13, limit=200)
    assert value == pytest.approx(ref, rel=1e-9)


def test_log_beta_moments_are_monotone():
    seq = moments(BetaLog(1.0, 1.0), 300)
    assert np.all(np.diff(seq.values) <= 0)
    assert set(seq.method) == {'quadrature'}


def test_atoms():
    m = Atoms(((0.5, 1.0), (0.25, 2.0)))
    assert moment(m, 2)[0] == pytest.approx(0.375)
    assert tail_mass(m, 0.3) == 1.0
    assert m.support_top == 0.5
    assert m.exponent[0] == np.inf


@pytest.mark.parametrize('atoms', [((1.0, 1.0),), ((0.5, 0.0),), ()])
def test_atoms_are_checked(atoms):
    with pytest.raises(ParameterError):
        Atoms(atoms)


def test_sum_of_measures():
    m = MeasureSum((Lebesgue(), Atoms(((0.5, 1.0),))))
    seq = moments(m, 10)
    assert np.allclose(seq.values, 1.0 / np.arange(1, 12) + 0.5**np.arange(11), rtol=1e-14)
    assert m.tail_mass(0.75) == pytest.approx(0.25)
    assert m.exponent == (1.0, 0.0)


def test_tail_mass_domain():
    with pytest.raises(ParameterError):
        tail_mass(Lebesgue(), 1.0)


def test_moment_order_checked():
    with pytest.raises(ParameterError):
        moment(Lebesgue(), -1)


def test_moment_frame():
    df = moments(BetaLog(2.0), 8).to_frame()
    assert list(df.columns) == ['n', 'value', 'method', 'err']
    assert len(df) == 9


def test_threaded_moments_are_deterministic():
    m = BetaLog(1.5, 1.0)
    one = moments(m, 700, DEFAULT.replace(threads=1)).values
    many = moments(m, 700, DEFAULT.replace(threads=4)).values
    assert np.array_equal(one, many)


def test_dyadic_quadrature_of_endpoint_singularity():
    res = integrate_dyadic(lambda u: u**-0.5)
    assert float(res.value) == pytest.approx(2.0, rel=1e-10)


def test_dyadic_quadrature_shares_panels():
    res = integrate_dyadic(lambda u: np.vstack((u, u**2)))
    assert np.allclose(res.value, [0.5, 1 / 3], rtol=1e-12)


def test_dyadic_quadrature_refuses_divergence():
    with pytest.raises(QuadratureError):
        integrate_dyadic(lambda u: u**-1.5)
