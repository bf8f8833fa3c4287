"""Carleson-type classification of radial measures.

A measure on [0,1) is (beta-logarithmic) t-Carleson when
mu([a,1)) log^beta(e/(1-a)) <= M (1-a)^t. The supremum over a in [0,1) is
replaced by a trend on the grid a_j = 1 - 2^(-j/2): a statistic whose log
grows linearly in log 1/(1-a) is unbounded, a flat one is bounded and a
decreasing one is vanishing. Moment decay gives a second classifier, since
mu is t-Carleson exactly when mu_n = O(n^-t).
"""

import logging
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np
import pandas as pd
from scipy.special import zeta

from .array_ops import loglog_fit, trend_slope
from .errors import DegenerateFitError, ParameterError, UnreliableTailError
from .iterators import half_powers
from .measure import moments
from .settings import DEFAULT

logger = logging.getLogger(__name__)

BOUNDED = 'consistent_bounded'
VANISHING = 'consistent_vanishing'
GROWING = 'growing'


def verdict_from_trend(distance, values, settings=DEFAULT):
    """Trend slope and verdict of a statistic sampled towards the boundary.

    Args:
        distance (np.array): distances to the boundary, decreasing.
        values (np.array): the statistic at those distances.

    Returns:
        tuple: (slope, verdict) with verdict one of BOUNDED, VANISHING, GROWING.
    """
    values = np.asarray(values, dtype=float)
    slope = trend_slope(distance, values)
    sup = float(np.nanmax(values)) if np.any(~np.isnan(values)) else 0.0
    if slope > settings.slope_threshold:
        return slope, GROWING
    last = values[~np.isnan(values)][-1] if sup > 0 else 0.0
    if sup == 0.0 or slope < -settings.slope_threshold or last < settings.vanish_fraction * sup:
        return slope, VANISHING
    return slope, BOUNDED


class MomentFit(NamedTuple):
    s_hat: float
    residual: float
    superpolynomial: bool = False


class LogMomentFit(NamedTuple):
    c_hat: float
    trend: float
    consistent: bool


@dataclass(frozen=True, eq=False)
class CarlesonReport:
    target_exponent: float
    log_exponent: float
    grid: np.ndarray
    statistic: np.ndarray
    sup_statistic: float
    trend_slope: float
    verdict: str
    fitted_moment_exponent: Optional[MomentFit] = None

    @property
    def growing(self):
        return self.verdict == GROWING

    def to_frame(self):
        return pd.DataFrame({'a': self.grid, 'statistic': self.statistic})


def _grid(depth):
    d = np.array([dist for _, dist in half_powers(1, depth)])
    a = 1.0 - d
    return a, 1.0 - a


def tail_statistic(m, t, beta=0.0, depth=None, settings=DEFAULT, fit=None):
    """mu([a,1)) log^beta(e/(1-a)) / (1-a)^t on the half-power grid.

    The grid is cut where the tail quadrature error exceeds 1% of the tail.

    Args:
        m (RadialMeasure): the measure.
        t (float): Carleson exponent to test.
        beta (float): logarithmic exponent.
        depth (int): number of grid points, settings.depth by default.
        fit (MomentFit): optional moment fit to attach to the report.

    Returns:
        CarlesonReport: the statistic, its trend and the verdict.
    """
    depth = settings.depth if depth is None else depth
    if not t > 0:
        raise ParameterError(f"Carleson exponent must be positive, got t={t}.")
    if beta < 0:
        raise ParameterError(f"Logarithmic exponent must be nonnegative, got beta={beta}.")
    if depth < 8:
        raise ParameterError(f"Grid depth must be at least 8, got {depth}.")
    a, d = _grid(depth)
    tails = []
    for a_j in a:
        tail = m.tail_mass(a_j, settings)
        if tail > 0 and m.tail_error(a_j, settings) > 0.01 * tail:
            logger.warning("tail grid of %s cut at a=%.6g: quadrature error above 1%%", m, a_j)
            break
        tails.append(tail)
    a, d = a[:len(tails)], d[:len(tails)]
    tails = np.array(tails)
    with np.errstate(divide='ignore', over='ignore'):
        log_stat = np.log(tails) + beta * np.log(np.log(np.e / d)) - t * np.log(d)
        statistic = np.where(tails > 0, np.exp(log_stat), 0.0)
    slope, verdict = verdict_from_trend(d, statistic, settings)
    logger.debug("tail statistic t=%g beta=%g: slope %.4g -> %s", t, beta, slope, verdict)
    return CarlesonReport(t, beta, a, statistic, float(statistic.max()), slope, verdict, fit)


def _window(moms, minimum):
    M = moms.truncation
    if M < minimum:
        raise ParameterError(f"At least {minimum} moments are needed, got M={M}.")
    n = np.arange(max(1, M // 4), M + 1)
    v = np.asarray(moms.values[n], dtype=float)
    if not np.all(np.isfinite(v)) or np.any(v < 0):
        raise DegenerateFitError("Moment window holds negative or non-finite values.")
    return n, v


def moment_decay_fit(moms, settings=DEFAULT):
    """Exponent s with mu_n ~ n^-s from a log-log fit over n in [M/4, M].

    Zeros in the window, or a fit that steepens markedly from the lower to
    the upper half of the window, flag decay faster than every power.
    """
    n, v = _window(moms, 256)
    if np.any(v == 0):
        return MomentFit(np.inf, np.nan, True)
    slope, _, residual = loglog_fit(n, v)
    half = len(n) // 2
    lower = -loglog_fit(n[:half], v[:half])[0]
    upper = -loglog_fit(n[half:], v[half:])[0]
    return MomentFit(-slope, residual, upper - lower > 0.5)


def log_moment_decay_fit(moms, s, settings=DEFAULT):
    """Sup and trend of mu_n n^s log(n+1) over n in [M/4, M]."""
    if not s > 0:
        raise ParameterError(f"Exponent must be positive, got s={s}.")
    n, v = _window(moms, 256)
    with np.errstate(divide='ignore', over='ignore'):
        log_y = np.log(v) + s * np.log(n) + np.log(np.log(n + 1.0))
        sup = float(np.exp(log_y.max()))
    if np.any(v == 0):
        return LogMomentFit(sup, -np.inf, True)
    trend = float(np.polyfit(np.log(n), log_y, 1)[0])
    return LogMomentFit(sup, trend, trend <= settings.slope_threshold)


@dataclass(frozen=True, eq=False)
class BlascoReport:
    sup_value: float
    argmax_n: int
    values: np.ndarray
    tail: float
    trend_slope: float
    bounded: bool


def blasco_statistic(moms, settings=DEFAULT):
    """sup over n <= M/2 of (n+1)^3 sum_{k>=n} mu_k^2.

    The sum beyond M is the fitted power law mu_M (k/M)^-s summed with the
    Hurwitz zeta function.
    """
    M = moms.truncation
    if M < 512:
        raise ParameterError(f"At least 512 moments are needed, got M={M}.")
    fit = moment_decay_fit(moms, settings)
    mu = np.asarray(moms.values, dtype=float)
    if fit.superpolynomial:
        tail = 0.0
    elif fit.residual > settings.fit_residual_max:
        raise UnreliableTailError(fit.residual, settings.fit_residual_max)
    elif 2 * fit.s_hat <= 1:
        tail = np.inf
    else:
        C = mu[-1] * M**fit.s_hat
        tail = float(C**2 * zeta(2 * fit.s_hat, M + 1))
    suffix = np.cumsum((mu**2)[::-1])[::-1] + tail
    n = np.arange(M // 2 + 1)
    values = (n + 1.0)**3 * suffix[:M // 2 + 1]
    argmax = int(np.argmax(values))
    window = n[M // 8:]
    w_values = values[M // 8:]
    keep = w_values > 0
    if np.any(np.isinf(w_values)):
        slope = np.inf
    elif keep.sum() < 2:
        slope = -np.inf
    else:
        slope = loglog_fit(window[keep] + 1.0, w_values[keep])[0]
    return BlascoReport(float(values[argmax]), argmax, values, tail, slope,
                        slope <= settings.slope_threshold)


def classify(m, t=None, beta=0.0, M=None, settings=DEFAULT):
    """Tail verdict, moment fits and the Blasco statistic of one measure."""
    M = settings.truncation if M is None else M
    moms = moments(m, M, settings)
    fit = moment_decay_fit(moms, settings)
    t = m.exponent[0] if t is None else t
    if not np.isfinite(t):
        t = 1.0 if fit.superpolynomial or not np.isfinite(fit.s_hat) else fit.s_hat
    report = tail_statistic(m, t, beta, settings=settings, fit=fit)
    log_fit = log_moment_decay_fit(moms, t, settings)
    try:
        blasco = blasco_statistic(moms, settings)
    except UnreliableTailError as err:
        logger.warning("Blasco statistic skipped: %s", err)
        blasco = None
    return {'tail': report, 'moment_fit': fit, 'log_fit': log_fit, 'blasco': blasco}
