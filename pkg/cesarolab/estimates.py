"""Numerical checks of the integral estimates used in the boundedness proofs.

Each estimate is computed by quadrature and compared with its asymptotic
form; a comparison is a ratio that should stay within a fixed constant.
"""

import logging
from dataclasses import dataclass

import numpy as np
import pandas as pd

from .carleson import verdict_from_trend
from .errors import DomainError, ParameterError, QuadratureError, UnsupportedRegimeError
from .iterators import half_powers
from .quadrature import integrate_dyadic
from .settings import DEFAULT

logger = logging.getLogger(__name__)

CIRCLE_TOL = 1e-10
DISK_TOL = 1e-8
MAX_NODES = 1 << 20
RING = (0.5, 0.9)
RING_ANGLES = 8


@dataclass(frozen=True)
class EstimateComparison:
    computed: float
    asymptotic_form: float
    ratio: float
    regime: str
    assumption: str = ''


def _compare(computed, asymptotic, regime, assumption=''):
    return EstimateComparison(float(computed), float(asymptotic), float(computed / asymptotic),
                              regime, assumption)


def _trapezoid(func, start=64, tol=CIRCLE_TOL):
    """Periodic trapezoid rule over [0, 2 pi), nodes doubled until the relative change is below tol."""
    M = start
    value = 2.0 * np.pi * np.mean(func(2.0 * np.pi * np.arange(M) / M))
    while M < MAX_NODES:
        M *= 2
        refined = 2.0 * np.pi * np.mean(func(2.0 * np.pi * np.arange(M) / M))
        if abs(refined - value) <= tol * abs(refined):
            return refined, M
        value = refined
    raise QuadratureError("Trapezoid rule did not settle", partial=value, panels=M)


def circle_integral(z, alpha):
    """Integral of |1 - z e^(-i theta)|^(-alpha) over the circle.

    Compared with 1 for alpha < 1, log 2/(1-|z|^2) for alpha = 1 and
    (1-|z|^2)^(1-alpha) for alpha > 1.
    """
    z = complex(z)
    if not abs(z) < 1:
        raise DomainError(f"circle_integral needs |z| < 1, got |z|={abs(z)}.")
    value, M = _trapezoid(lambda th: np.abs(1.0 - z * np.exp(-1j * th))**(-alpha))
    logger.debug("circle integral at |z|=%.6g, alpha=%g with %d nodes", abs(z), alpha, M)
    rho = 1.0 - abs(z)**2
    if alpha < 1:
        return _compare(value, 1.0, 'alpha<1')
    if alpha == 1:
        return _compare(value, np.log(2.0 / rho), 'alpha=1')
    return _compare(value, rho**(1.0 - alpha), 'alpha>1')


def _disk_quadrature(w, a, t, r, delta, k, settings):
    wc, ac = np.conj(w), np.conj(a)

    def on_circles(M):
        theta = 2.0 * np.pi * np.arange(M) / M
        e = np.exp(1j * theta)

        def integrand(u):
            rho = 1.0 - u
            one_minus = u * (2.0 - u)
            z = np.multiply.outer(rho, e)
            angular = np.mean(np.abs(1.0 - z * wc)**(-t) * np.abs(1.0 - z * ac)**(-r), axis=-1)
            radial = one_minus**delta * np.log(np.e / one_minus)**k
            return 2.0 * rho * radial * angular
        return float(integrate_dyadic(integrand, 1.0, settings).value)

    M = 64
    value = on_circles(M)
    while M < MAX_NODES:
        M *= 2
        refined = on_circles(M)
        if abs(refined - value) <= DISK_TOL * abs(refined):
            logger.debug("disk integral settled with %d angles", M)
            return refined
        value = refined
    raise QuadratureError("Angular refinement of the disk integral did not settle", partial=value, panels=M)


def disk_integral(w, a, t, r, delta, k, settings=DEFAULT):
    """Normalized-area integral of (1-|z|^2)^delta log^k(e/(1-|z|^2)) / (|1-z conj(w)|^t |1-z conj(a)|^r).

    Two regimes carry asymptotic forms: t+r-delta > 2 with t-delta < 2 and
    r-delta < 2, and t-delta > 2 > r-delta. With t = r = k = 0 the integral
    is exactly 1/(delta+1).
    """
    w, a = complex(w), complex(a)
    if not (abs(w) < 1 and abs(a) < 1):
        raise DomainError("disk_integral needs |w| < 1 and |a| < 1.")
    if not delta > -1:
        raise ParameterError(f"disk_integral needs delta > -1, got {delta}.")
    if min(t, r, k) < 0:
        raise ParameterError("disk_integral needs t, r, k >= 0.")
    inner = abs(1.0 - w * np.conj(a))
    if t + r - delta > 2 and t - delta < 2 and r - delta < 2:
        regime, assumption = 'case1', ''
        asymptotic = inner**(-(t + r - delta - 2)) * np.log(np.e / inner)**k
    elif t - delta > 2 > r - delta:
        regime, assumption = 'case2', 'dimension n=1'
        rho = 1.0 - abs(w)**2
        asymptotic = rho**(-(t - delta - 2)) * inner**(-r) * np.log(np.e / rho)**k
    elif t == 0 and r == 0 and k == 0:
        regime, assumption = 'degenerate', ''
        asymptotic = 1.0 / (delta + 1.0)
    else:
        raise UnsupportedRegimeError(f"No asymptotic form for t={t}, r={r}, delta={delta}.")
    return _compare(_disk_quadrature(w, a, t, r, delta, k, settings), asymptotic, regime, assumption)


@dataclass(frozen=True, eq=False)
class SupremumReport:
    name: str
    grid: np.ndarray
    values: np.ndarray
    sup: float
    trend_slope: float
    verdict: str

    def to_frame(self):
        return pd.DataFrame({'w': self.grid, self.name: self.values})


def _supremum_integrals(beta, gamma, q, s):
    expo = s + beta - q

    def s1(w):
        x = abs(w)
        lead = (1.0 - x)**beta * np.log(np.e / (1.0 - x))**gamma
        return lambda t, u: lead / (u**q * (1.0 - x * t)**expo)

    def s2(w):
        x = abs(w)
        lead = (1.0 - x)**beta * np.log(np.e / (1.0 - x))**gamma
        return lambda t, u: lead / (u**q * np.abs(1.0 - w * t)**expo)

    def s3(w):
        x = abs(w)
        return lambda t, u: (1.0 - x)**beta * np.log(np.e / u)**gamma / (u**q * (1.0 - x * t)**expo)

    return {'S1': s1, 'S2': s2, 'S3': s3}


def _safe_integral(m, g, settings):
    try:
        return float(np.real(m.integrate(g, settings).value))
    except QuadratureError as err:
        logger.warning("supremum integral did not converge, counted as unbounded: %s", err)
        return np.inf


def prop31_suprema(m, beta, gamma, q, s, depth=30, settings=DEFAULT):
    """S1, S2 and S3 over w = 1 - 2^(-j/2), j = 1..depth.

    S2 also runs over a ring of complex w; the ring enters the supremum but
    not the trend, which follows the positive radius.

    Returns:
        dict: name -> SupremumReport.
    """
    if not beta > 0:
        raise ParameterError(f"beta must be positive, got {beta}.")
    if gamma < 0:
        raise ParameterError(f"gamma must be nonnegative, got {gamma}.")
    if not 0 <= q < s:
        raise ParameterError(f"Need 0 <= q < s, got q={q}, s={s}.")
    w = np.array([1.0 - d for _, d in half_powers(1, depth)])
    d = 1.0 - w
    ring = [rho * np.exp(2j * np.pi * k / RING_ANGLES) for rho in RING for k in range(RING_ANGLES)]
    reports = {}
    for name, make in _supremum_integrals(beta, gamma, q, s).items():
        values = np.array([_safe_integral(m, make(x), settings) for x in w])
        sup = float(values.max())
        if name == 'S2':
            sup = max(sup, max(_safe_integral(m, make(x), settings) for x in ring))
        slope, verdict = verdict_from_trend(d, values, settings)
        reports[name] = SupremumReport(name, w, values, sup, slope, verdict)
        logger.debug("%s: sup %.6g, slope %.4g -> %s", name, sup, slope, verdict)
    return reports
