"""The Cesaro-like operator C_mu.

On coefficients, C_mu(f) has n-th coefficient mu_n (c_0 + ... + c_n); in
integral form C_mu(f)(z) is the integral of f(tz)/(1-tz) against dmu(t).
The coefficient form is the computational path, the integral form checks
it and provides derivatives at points near the boundary.
"""

import logging
import threading

import numpy as np

from .errors import ParameterError
from .measure import RadialMeasure, moments
from .series import Envelope, PowerSeries, partial_sum_transform
from .settings import DEFAULT

logger = logging.getLogger(__name__)


class OperatorInstance:
    """C_mu for a fixed measure, with its moments cached.

    The cache only grows; extending it is idempotent and guarded by a lock,
    so one instance can serve several threads.

    Args:
        measure (RadialMeasure): the measure mu.
        settings (Settings): quadrature settings for the moments.
    """
    def __init__(self, measure, settings=DEFAULT):
        if not isinstance(measure, RadialMeasure):
            raise ParameterError(f"Expected a radial measure, got {type(measure).__name__}.")
        self.measure = measure
        self.settings = settings
        self._moments = None
        self._lock = threading.Lock()

    def __repr__(self):
        cached = -1 if self._moments is None else self._moments.truncation
        return f"OperatorInstance({self.measure}, cached to {cached})"

    @property
    def moments(self):
        return self._moments

    def ensure(self, N):
        """Moments mu_0..mu_N, computed on first request."""
        with self._lock:
            if self._moments is None or self._moments.truncation < N:
                logger.debug("extending moment cache of %s to %d", self.measure, N)
                self._moments = moments(self.measure, N, self.settings)
            return self._moments.values[:N + 1]

    def __call__(self, f):
        return apply(self, f)


def _as_operator(op, settings):
    if isinstance(op, OperatorInstance):
        if settings is not None and settings != op.settings:
            raise ParameterError(f"{op} carries its own settings; got conflicting settings {settings}.")
        return op
    return OperatorInstance(op, DEFAULT if settings is None else settings)


def apply(op, f, settings=None):
    """Coefficients mu_n A_n with A the prefix sums of f.

    Args:
        op (OperatorInstance or RadialMeasure): the operator or its measure.
        f (PowerSeries): input series.
        settings (Settings): moment settings for a bare measure, DEFAULT when omitted.
            An OperatorInstance keeps its own settings; different ones are rejected.

    Returns:
        PowerSeries: C_mu(f) at the truncation order of f.
    """
    op = _as_operator(op, settings)
    N = f.truncation_order
    mu = op.ensure(N)
    A = partial_sum_transform(f)
    env = A.envelope
    if env is not None:
        env = Envelope(env.C * float(mu[0]), env.m, env.rate * op.measure.support_top)
    return PowerSeries(mu * A.coeffs, env, f.label)


def _eval(f, w):
    return f(w) if w.size else w


def _radius(f, z):
    f.check_radius(np.abs(z))


def apply_integral(m, f, z, settings=DEFAULT):
    """Integral of f(tz)/(1-tz) dmu(t).

    Args:
        m (RadialMeasure): the measure.
        f (PowerSeries or ClosedForm): the function.
        z (complex): point with |z| inside the admissible radius of f.
    """
    z = complex(z)
    _radius(f, z)

    def g(t, u):
        w = t * z
        return _eval(f, w) / (1.0 - w)
    res = m.integrate(g, settings)
    logger.debug("integral form at z=%s: error estimate %.3g", z, float(np.abs(res.err)))
    return complex(res.value)


def derivative_at(m, f, z, order=1, settings=DEFAULT):
    """First or second derivative of C_mu(f) at z from the integral form."""
    if order not in (1, 2):
        raise ParameterError(f"Only first and second derivatives are supported, got {order}.")
    z = complex(z)
    f1 = f.derivative(1)
    _radius(f, z)
    _radius(f1, z)
    if order == 1:
        def g(t, u):
            w = t * z
            q = 1.0 / (1.0 - w)
            return t * q * (_eval(f1, w) + _eval(f, w) * q)
    else:
        f2 = f.derivative(2)
        _radius(f2, z)

        def g(t, u):
            w = t * z
            q = 1.0 / (1.0 - w)
            return t**2 * q * (_eval(f2, w) + 2.0 * q * (_eval(f1, w) + q * _eval(f, w)))
    return complex(m.integrate(g, settings).value)


def representation_residual(m, f, z_grid, settings=DEFAULT, op=None):
    """Largest gap between the coefficient and integral forms of C_mu(f) on a grid.

    Each gap is divided by 1 + |C_mu(f)(z)|.
    """
    op = OperatorInstance(m, settings) if op is None else op
    Cf = apply(op, f)
    worst = 0.0
    for z in np.atleast_1d(np.asarray(z_grid, dtype=complex)):
        coeff_side = Cf(z)
        gap = abs(coeff_side - apply_integral(m, f, z, settings)) / (1.0 + abs(coeff_side))
        worst = max(worst, gap)
    return worst
