"""Norm estimators for Hardy, Bloch-type, Morrey and mean Lipschitz spaces.

Every supremum over the disk is taken over a declared finite grid: radii
r_j = 1 - 2^(-j/2) up to the admissible radius of the series, angles on an
FFT grid fine enough to resolve the truncated spectrum. Boundedness is
read off as a trend verdict of the statistic against log 1/(1-r).
"""

import logging
from dataclasses import dataclass, field
from math import inf, isinf

import numpy as np
import pandas as pd
from scipy.signal import lfilter

from .array_ops import next_pow2, which_max_leq
from .carleson import GROWING, verdict_from_trend
from .errors import DomainError, ParameterError
from .iterators import half_powers
from .quadrature import integrate_dyadic
from .series import R_CAP
from .settings import DEFAULT

logger = logging.getLogger(__name__)

RING = (0.5, 0.9)
RING_ANGLES = 8
W_MARGIN = 4.0
MAX_ANGLES = 1 << 16


# space specifications

@dataclass(frozen=True)
class Hardy:
    p: float
    tag = 'hardy'

    def __post_init__(self):
        if not self.p > 0:
            raise ParameterError(f"Hardy space needs p > 0, got p={self.p}.")

    def to_spec(self):
        return {'space': self.tag, 'p': 'inf' if isinf(self.p) else self.p}


@dataclass(frozen=True)
class BlochType:
    alpha: float
    tag = 'bloch'

    def __post_init__(self):
        if not self.alpha > 0:
            raise ParameterError(f"Bloch-type space needs alpha > 0, got alpha={self.alpha}.")

    def to_spec(self):
        return {'space': self.tag, 'alpha': self.alpha}


@dataclass(frozen=True)
class Morrey:
    lam: float
    tag = 'morrey'

    def __post_init__(self):
        if not 0 < self.lam <= 1:
            raise ParameterError(f"Morrey space needs 0 < lambda <= 1, got {self.lam}.")

    def to_spec(self):
        return {'space': self.tag, 'lam': self.lam}


@dataclass(frozen=True)
class MeanLip:
    p: float
    alpha: float
    tag = 'mean_lip'

    def __post_init__(self):
        if not 1 <= self.p < inf:
            raise ParameterError(f"Mean Lipschitz space needs 1 <= p < inf, got p={self.p}.")
        if not 0 < self.alpha <= 1:
            raise ParameterError(f"Mean Lipschitz space needs 0 < alpha <= 1, got alpha={self.alpha}.")

    def to_spec(self):
        return {'space': self.tag, 'p': self.p, 'alpha': self.alpha}


@dataclass(frozen=True)
class Lambda11:
    """Pseudo-space of functions with (1-r) M_1(r, f'') bounded."""
    tag = 'lambda11'

    def to_spec(self):
        return {'space': self.tag}


SPACES = {cls.tag: cls for cls in (Hardy, BlochType, Morrey, MeanLip, Lambda11)}


@dataclass(frozen=True, eq=False)
class NormEstimate:
    """Maximum of a statistic over a declared grid, with its trend verdict.

    profile holds (radius or |w|, statistic) rows along the boundary direction.
    """
    value: float
    grid_spec: dict
    converged: bool
    profile: np.ndarray = field(default_factory=lambda: np.zeros((0, 2)))
    trend_slope: float = -inf
    verdict: str = 'consistent_bounded'

    @property
    def bounded(self):
        return self.verdict != GROWING

    def to_frame(self):
        return pd.DataFrame(self.profile, columns=['r', 'statistic'])


# grids and circle values

def radial_grid(r_max, depth=None, settings=DEFAULT):
    """Radii 1 - 2^(-j/2), j = 0..depth, not beyond r_max, closed by r_max itself."""
    depth = settings.depth if depth is None else depth
    r = np.array([1.0 - d for _, d in half_powers(0, depth)])
    r = r[:which_max_leq(r, r_max) + 1]
    if r_max - r[-1] > 1e-15:
        r = np.append(r, r_max)
    return r


def angle_count(N):
    """FFT size: a power of two, at least 64 and at least 4(N+1)."""
    return next_pow2(max(64, 4 * (N + 1)))


def circle_values(coeffs, radii, M=None):
    """Values of sum c_n z^n on the circles |z| = r at z = r e^(2 pi i k/M).

    Returns:
        np.array: shape (len(radii), M).
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    radii = np.atleast_1d(np.asarray(radii, dtype=float))
    M = angle_count(len(coeffs) - 1) if M is None else M
    assert M >= len(coeffs), 'FFT size must exceed the truncation order'
    padded = np.zeros((len(radii), M), dtype=complex)
    padded[:, :len(coeffs)] = np.power.outer(radii, np.arange(len(coeffs), dtype=float)) * coeffs
    return np.fft.ifft(padded, axis=1) * M


def _means(values, p):
    a = np.abs(values)
    if isinf(p):
        return a.max(axis=-1)
    return np.mean(a**p, axis=-1)**(1.0 / p)


def _derivative_coeffs(f, order):
    if order == 0:
        return f.coeffs
    if order > f.truncation_order:
        return np.zeros(1, dtype=complex)
    return f.derivative(order).coeffs


def _admissible(f, order):
    if order == 0:
        return f.r_max
    if order > f.truncation_order:
        return R_CAP
    return f.derivative(order).r_max


def integral_mean(f, r, p):
    """M_p(r, f): the L^p mean of f over the circle |z| = r; p = inf gives the maximum modulus."""
    if not p > 0:
        raise ParameterError(f"Integral means need p > 0, got p={p}.")
    f.check_radius(r)
    return float(_means(circle_values(f.coeffs, [r])[0], p))


def _estimate(radii, stats, offset, spec, settings):
    """NormEstimate from a radial profile; offset is added to the supremum."""
    stats = np.asarray(stats, dtype=float)
    value = offset + float(stats.max())
    previous = offset + float(stats[:-1].max()) if len(stats) > 1 else value
    converged = bool(abs(value - previous) <= 0.02 * max(abs(value), 1e-300))
    slope, verdict = verdict_from_trend(1.0 - radii, stats, settings)
    spec = dict(spec, points=len(radii), r_first=float(radii[0]), r_last=float(radii[-1]))
    return NormEstimate(value, spec, converged, np.column_stack((radii, stats)), slope, verdict)


def _mean_profile(f, order, p, weight, depth, settings):
    radii = radial_grid(_admissible(f, order), depth, settings)
    c = _derivative_coeffs(f, order)
    M = angle_count(len(c) - 1)
    stats = weight(radii) * _means(circle_values(c, radii, M), p)
    logger.debug("profile of order %d, p=%s over %d radii and %d angles", order, p, len(radii), M)
    return radii, stats, M


def hardy_norm(f, p, depth=None, settings=DEFAULT):
    """sup_r M_p(r, f) over the radial grid.

    Args:
        f (PowerSeries): the function.
        p (float): exponent in (0, inf].
        depth (int): grid depth, settings.depth by default.

    Returns:
        NormEstimate: value, radial profile of the means and trend verdict.
    """
    if not p > 0:
        raise ParameterError(f"Hardy norms need p > 0, got p={p}.")
    radii, stats, M = _mean_profile(f, 0, p, np.ones_like, depth, settings)
    return _estimate(radii, stats, 0.0, {'space': 'hardy', 'p': p, 'angles': M}, settings)


def bloch_norm(f, alpha, depth=None, settings=DEFAULT):
    """|f(0)| + sup (1-|z|^2)^alpha |f'(z)|.

    For nonnegative coefficients |f'| peaks on the positive radius and the
    angular grid collapses to theta = 0.
    """
    if not alpha > 0:
        raise ParameterError(f"Bloch-type norms need alpha > 0, got alpha={alpha}.")
    radii = radial_grid(_admissible(f, 1), depth, settings)
    d = _derivative_coeffs(f, 1)
    if f.nonnegative:
        M = 1
        moduli = np.abs(np.power.outer(radii, np.arange(len(d), dtype=float)) @ d)
    else:
        M = angle_count(len(d) - 1)
        moduli = _means(circle_values(d, radii, M), inf)
    stats = (1.0 - radii**2)**alpha * moduli
    return _estimate(radii, stats, abs(f.coeffs[0]), {'space': 'bloch', 'alpha': alpha, 'angles': M}, settings)


def bloch_coefficient_profile(f, alpha):
    """n^-alpha sum_{k<=n} k c_k for n = 1..N; needs real nonnegative coefficients."""
    if not alpha > 0:
        raise ParameterError(f"alpha must be positive, got {alpha}.")
    if not f.nonnegative:
        raise DomainError("The coefficient statistic needs real nonnegative coefficients.")
    c = f.coeffs.real
    n = np.arange(len(c), dtype=float)
    return (np.cumsum(n * c) / np.where(n > 0, n, 1.0)**alpha)[1:]


def bloch_coefficient_statistic(f, alpha):
    profile = bloch_coefficient_profile(f, alpha)
    return float(profile.max()) if len(profile) else 0.0


# Morrey spaces

def _morrey_grid(f, depth, settings):
    depth = settings.depth if depth is None else depth
    reach = 1.0 - W_MARGIN * (1.0 - _admissible(f, 1))
    w = np.array([1.0 - d for _, d in half_powers(0, depth)])
    w = w[:which_max_leq(w, reach) + 1]
    ring = np.array([rho * np.exp(2j * np.pi * k / RING_ANGLES)
                     for rho in RING if rho <= reach for k in range(RING_ANGLES)])
    return w, ring


def _spectral_area(d, w, settings=DEFAULT):
    """Integral of |g'|^2 (1-|z|^2)/|1-conj(w) z|^2 dA for the polynomial g' = sum d_k z^k.

    g'(z)/(1-conj(w) z) has coefficients B_n = sum_{k<=n} d_k conj(w)^(n-k), geometric
    beyond the degree K-1. The geometric part sum_{j>=1} x^j/((K+j)(K+j+1)),
    x = |w|^2, equals the integral of u (1-u)^K x/(1-x+xu) over (0, 1].
    """
    B = lfilter([1.0], [1.0, -np.conj(w)], d)
    n = np.arange(len(d), dtype=float)
    head = np.sum(np.abs(B)**2 / ((n + 1.0) * (n + 2.0)))
    x = abs(w)**2
    if x == 0.0:
        return head
    K = len(d)
    tail = integrate_dyadic(lambda u: u * np.exp(K * np.log1p(-u)) * x / (1.0 - x + x * u), 1.0, settings)
    return head + abs(B[-1])**2 * float(tail.value)


def _tensor_area(d, w, settings):
    """Same integral on dyadic annuli towards |z| = 1 times an FFT angle grid.

    The angle count grows like 1/(1-|w|) so the kernel peak at w is resolved,
    up to MAX_ANGLES.
    """
    areas = []
    for w_i in np.atleast_1d(w):
        M = max(angle_count(len(d) - 1), next_pow2(48.0 / (1.0 - abs(w_i))))
        if M > MAX_ANGLES:
            logger.warning("tensor Morrey grid at |w|=%.6g capped at %d angles", abs(w_i), MAX_ANGLES)
            M = MAX_ANGLES
        e = np.exp(2j * np.pi * np.arange(M) / M)

        def integrand(u, M=M, e=e, w_i=w_i):
            r = 1.0 - u
            vals = np.abs(circle_values(d, r, M))**2 * (1.0 - r**2)[:, None]
            kernel = np.abs(1.0 - np.conj(w_i) * np.multiply.outer(r, e))**2
            return 2.0 * np.mean(vals / kernel, axis=-1) * r
        areas.append(float(np.real(integrate_dyadic(integrand, 1.0, settings).value)))
    return np.array(areas)


def morrey_norm(f, lam, method=None, depth=None, settings=DEFAULT):
    """|f(0)| + sup_w ((1-|w|^2)^(1-lam) int |f'|^2 (1-|sigma_w|^2) dA)^(1/2).

    w runs over the real grid 1 - 2^(-j/2), stopping where 1-w is within
    W_MARGIN times the unresolved distance 1 - r_max(f'), plus a ring of
    8 angles at |w| = 0.5 and 0.9.

    Args:
        f (PowerSeries): the function.
        lam (float): Morrey parameter in (0, 1].
        method (str): 'spectral' (exact for the truncated polynomial) or 'tensor';
            settings.morrey_method by default.
    """
    if not 0 < lam <= 1:
        raise ParameterError(f"Morrey norms need 0 < lambda <= 1, got {lam}.")
    method = settings.morrey_method if method is None else method
    if method not in ('spectral', 'tensor'):
        raise ParameterError(f"Unknown Morrey method '{method}'.")
    w, ring = _morrey_grid(f, depth, settings)
    if not len(w):
        raise ParameterError(f"Admissible radius {_admissible(f, 1):.6g} of f' leaves no Morrey grid point.")
    d = _derivative_coeffs(f, 1)
    points = np.concatenate((w.astype(complex), ring))
    if method == 'spectral':
        areas = np.array([_spectral_area(d, p, settings) for p in points])
    else:
        areas = _tensor_area(d, points, settings)
    stats = np.sqrt(np.maximum((1.0 - np.abs(points)**2)**(2.0 - lam) * areas, 0.0))
    offset = abs(f.coeffs[0])
    spec = {'space': 'morrey', 'lam': lam, 'method': method, 'ring': len(ring)}
    est = _estimate(w, stats[:len(w)], offset, spec, settings)
    if len(ring) and stats[len(w):].max() + offset > est.value:
        logger.info("Morrey supremum attained on the ring, not on the positive radius")
        return NormEstimate(offset + float(stats.max()), est.grid_spec, est.converged,
                            est.profile, est.trend_slope, est.verdict)
    return est


def mean_lipschitz_norm(f, p, alpha, depth=None, settings=DEFAULT):
    """|f(0)| + sup (1-r)^(1-alpha) M_p(r, f')."""
    space = MeanLip(p, alpha)
    radii, stats, M = _mean_profile(f, 1, p, lambda r: (1.0 - r)**(1.0 - alpha), depth, settings)
    spec = dict(space.to_spec(), angles=M)
    return _estimate(radii, stats, abs(f.coeffs[0]), spec, settings)


def lambda11_statistic(f, depth=None, settings=DEFAULT):
    """sup (1-r) M_1(r, f'')."""
    radii, stats, M = _mean_profile(f, 2, 1.0, lambda r: 1.0 - r, depth, settings)
    return _estimate(radii, stats, 0.0, {'space': 'lambda11', 'angles': M}, settings)


def _growth_envelope(space, r):
    u = 1.0 - r
    if isinstance(space, Morrey):
        return u**(-(1.0 - space.lam) / 2.0)
    if space.alpha < 1:
        return np.ones_like(r)
    if space.alpha == 1:
        return np.log(2.0 / u)
    return u**(1.0 - space.alpha)


def growth_envelope_check(f, space, depth=None, settings=DEFAULT):
    """Maximum modulus of f on |z| = r against the pointwise growth allowed by the space.

    Bloch-type spaces allow a constant for alpha < 1, log 2/(1-r) for
    alpha = 1 and (1-r)^(1-alpha) beyond; Morrey spaces allow
    (1-r)^(-(1-lam)/2).
    """
    if not isinstance(space, (BlochType, Morrey)):
        raise ParameterError(f"No growth envelope for {space}.")
    radii, moduli, M = _mean_profile(f, 0, inf, np.ones_like, depth, settings)
    stats = moduli / _growth_envelope(space, radii)
    spec = dict(space.to_spec(), check='growth_envelope', angles=M)
    return _estimate(radii, stats, 0.0, spec, settings)


def estimate_norm(f, space, depth=None, settings=DEFAULT):
    """Dispatch a space specification to its estimator."""
    if isinstance(space, Hardy):
        return hardy_norm(f, space.p, depth, settings)
    if isinstance(space, BlochType):
        return bloch_norm(f, space.alpha, depth, settings)
    if isinstance(space, Morrey):
        return morrey_norm(f, space.lam, depth=depth, settings=settings)
    if isinstance(space, MeanLip):
        return mean_lipschitz_norm(f, space.p, space.alpha, depth, settings)
    if isinstance(space, Lambda11):
        return lambda11_statistic(f, depth, settings)
    raise ParameterError(f"Unknown space {space!r}.")
