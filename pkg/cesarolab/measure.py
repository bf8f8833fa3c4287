"""Finite positive Borel measures on [0,1) and their moment sequences."""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from math import inf

import numpy as np
import pandas as pd
from scipy.special import betaln

from .errors import ParameterError
from .iterators import ranges
from .quadrature import QuadResult, integrate_dyadic
from .settings import DEFAULT

logger = logging.getLogger(__name__)

CHUNK = 256
EPS = np.finfo(float).eps


class RadialMeasure:
    """Base class of the measure families.

    Subclasses implement moments_block, tail_mass, integrate and scaled.
    """
    family = ''

    def moments_block(self, n, settings=DEFAULT):
        """Moments for an integer array n.

        Returns:
            tuple: values, absolute errors and a boolean array telling which entries came from quadrature.
        """
        raise NotImplementedError

    def tail_mass(self, a, settings=DEFAULT):
        raise NotImplementedError

    def integrate(self, g, settings=DEFAULT):
        """Integrate g(t, u) dmu(t) with u = 1-t; g maps node arrays to (..., nodes)."""
        raise NotImplementedError

    def scaled(self, factor):
        raise NotImplementedError

    @property
    def exponent(self):
        """(s, gamma) such that mu([a,1)) behaves like (1-a)^s log^-gamma(e/(1-a))."""
        raise NotImplementedError

    def tail_error(self, a, settings=DEFAULT):
        """Absolute error estimate of tail_mass(a)."""
        return 0.0

    @property
    def support_top(self):
        """Right end of the support; moments decay at least like support_top^n."""
        return 1.0

    def total_mass(self, settings=DEFAULT):
        return self.tail_mass(0.0, settings)

    def to_spec(self):
        return {'family': self.family}


def _check_a(a):
    if not 0.0 <= a < 1.0:
        raise ParameterError(f"Tail masses need 0 <= a < 1, got a={a}.")


@dataclass(frozen=True)
class Atoms(RadialMeasure):
    atoms: tuple
    family = 'atoms'

    def __post_init__(self):
        atoms = tuple((float(t), float(m)) for t, m in self.atoms)
        if not atoms:
            raise ParameterError("Atoms needs at least one atom.")
        for t, m in atoms:
            if not 0.0 <= t < 1.0:
                raise ParameterError(f"Atom location {t} is not in [0,1).")
            if not m > 0:
                raise ParameterError(f"Atom weight {m} is not positive.")
        object.__setattr__(self, 'atoms', atoms)

    @property
    def locations(self):
        return np.array([t for t, _ in self.atoms])

    @property
    def weights(self):
        return np.array([m for _, m in self.atoms])

    def moments_block(self, n, settings=DEFAULT):
        n = np.asarray(n)
        values = np.power.outer(self.locations, n.astype(float)).T @ self.weights
        return values, EPS * values, np.zeros(len(n), dtype=bool)

    def tail_mass(self, a, settings=DEFAULT):
        _check_a(a)
        return float(self.weights[self.locations >= a].sum())

    def integrate(self, g, settings=DEFAULT):
        t = self.locations
        value = g(t, 1.0 - t) @ self.weights
        return QuadResult(value, 0.0 * np.abs(value), 0, 0.0 * value)

    @property
    def support_top(self):
        return float(self.locations.max())

    def scaled(self, factor):
        return Atoms(tuple((t, factor * m) for t, m in self.atoms))

    @property
    def exponent(self):
        return inf, 0.0

    def to_spec(self):
        return {'family': self.family, 'atoms': [[t, m] for t, m in self.atoms]}


@dataclass(frozen=True)
class Lebesgue(RadialMeasure):
    family = 'lebesgue'

    def moments_block(self, n, settings=DEFAULT):
        values = 1.0 / (np.asarray(n, dtype=float) + 1.0)
        return values, EPS * values, np.zeros(len(values), dtype=bool)

    def tail_mass(self, a, settings=DEFAULT):
        _check_a(a)
        return 1.0 - a

    def integrate(self, g, settings=DEFAULT):
        return integrate_dyadic(lambda u: g(1.0 - u, u), 1.0, settings)

    def scaled(self, factor):
        return BetaLog(1.0, 0.0, factor)

    @property
    def exponent(self):
        return 1.0, 0.0


@dataclass(frozen=True)
class BetaLog(RadialMeasure):
    """Density normalizer (1-t)^(s-1) log^-gamma(e/(1-t)) dt."""
    s: float
    gamma: float = 0.0
    normalizer: float = 1.0
    family = 'beta_log'

    def __post_init__(self):
        if not self.s > 0:
            raise ParameterError(f"BetaLog needs s > 0, got s={self.s}.")
        if not np.isfinite(self.gamma):
            raise ParameterError(f"BetaLog needs a finite gamma, got {self.gamma}.")
        if not self.normalizer > 0:
            raise ParameterError(f"BetaLog needs a positive normalizer, got {self.normalizer}.")

    def density(self, u):
        """Density as a function of u = 1-t."""
        out = self.normalizer * u**(self.s - 1.0)
        if self.gamma != 0.0:
            out = out * (1.0 - np.log(u))**(-self.gamma)
        return out

    def moments_block(self, n, settings=DEFAULT):
        n = np.asarray(n, dtype=float)
        if self.gamma == 0.0:
            values = self.normalizer * np.exp(betaln(n + 1.0, self.s))
            return values, 4 * EPS * values, np.zeros(len(n), dtype=bool)

        def integrand(u):
            return np.exp(np.multiply.outer(n, np.log1p(-u))) * self.density(u)
        res = integrate_dyadic(integrand, 1.0, settings)
        loose = res.err > 1e-12 * np.abs(res.value)
        if np.any(loose):
            logger.warning("%d moments of %s carry relative error above 1e-12", loose.sum(), self)
        return np.real(res.value), res.err, np.ones(len(n), dtype=bool)

    def tail_mass(self, a, settings=DEFAULT):
        _check_a(a)
        if self.gamma == 0.0:
            return self.normalizer * (1.0 - a)**self.s / self.s
        return self._tail_quad(a, settings).value

    @lru_cache(maxsize=256)
    def _tail_quad(self, a, settings):
        res = integrate_dyadic(self.density, 1.0 - a, settings)
        return QuadResult(float(res.value), float(res.err), res.panels, res.remainder)

    def tail_error(self, a, settings=DEFAULT):
        if self.gamma == 0.0:
            return 0.0
        return self._tail_quad(a, settings).err

    def integrate(self, g, settings=DEFAULT):
        return integrate_dyadic(lambda u: g(1.0 - u, u) * self.density(u), 1.0, settings)

    def scaled(self, factor):
        return BetaLog(self.s, self.gamma, factor * self.normalizer)

    @property
    def exponent(self):
        return self.s, self.gamma

    def to_spec(self):
        return {'family': self.family, 's': self.s, 'gamma': self.gamma, 'normalizer': self.normalizer}


@dataclass(frozen=True)
class MeasureSum(RadialMeasure):
    parts: tuple
    family = 'sum'

    def __post_init__(self):
        parts = tuple(self.parts)
        if not parts:
            raise ParameterError("A sum of measures needs at least one part.")
        object.__setattr__(self, 'parts', parts)

    def moments_block(self, n, settings=DEFAULT):
        blocks = [p.moments_block(n, settings) for p in self.parts]
        values = sum(b[0] for b in blocks)
        err = sum(b[1] for b in blocks)
        quad = np.logical_or.reduce([b[2] for b in blocks])
        return values, err, quad

    def tail_mass(self, a, settings=DEFAULT):
        return sum(p.tail_mass(a, settings) for p in self.parts)

    def tail_error(self, a, settings=DEFAULT):
        return sum(p.tail_error(a, settings) for p in self.parts)

    @property
    def support_top(self):
        return max(p.support_top for p in self.parts)

    def integrate(self, g, settings=DEFAULT):
        results = [p.integrate(g, settings) for p in self.parts]
        return QuadResult(sum(r.value for r in results), sum(r.err for r in results),
                          max(r.panels for r in results), sum(r.remainder for r in results))

    def scaled(self, factor):
        return MeasureSum(tuple(p.scaled(factor) for p in self.parts))

    @property
    def exponent(self):
        return min(p.exponent for p in self.parts)

    def to_spec(self):
        return {'family': self.family, 'parts': [p.to_spec() for p in self.parts]}


@dataclass(frozen=True, eq=False)
class MomentSequence:
    """mu_0..mu_M with per-entry method tags and absolute errors."""
    values: np.ndarray
    method: np.ndarray
    err: np.ndarray

    def __len__(self):
        return len(self.values)

    @property
    def truncation(self):
        return len(self.values) - 1

    def __getitem__(self, idx):
        return self.values[idx]

    def to_frame(self):
        return pd.DataFrame({'n': np.arange(len(self.values)), 'value': self.values,
                             'method': self.method, 'err': self.err})


def moment(m, n, settings=DEFAULT):
    """mu_n with its absolute error estimate."""
    if int(n) != n or n < 0:
        raise ParameterError(f"Moment order must be an integer >= 0, got {n}.")
    values, err, _ = m.moments_block(np.array([int(n)]), settings)
    return float(values[0]), float(err[0])


def moments(m, M, settings=DEFAULT):
    """mu_0..mu_M; blocks of orders run on a thread pool, results kept in order.

    Monotonicity is enforced afterwards; repairs beyond twice the error
    estimate are logged.
    """
    if int(M) != M or M < 0:
        raise ParameterError(f"Moment count must be an integer >= 0, got {M}.")
    blocks = [np.arange(lo, hi) for lo, hi in ranges(0, int(M) + 1, CHUNK)]
    if len(blocks) == 1 or settings.workers == 1:
        results = [m.moments_block(b, settings) for b in blocks]
    else:
        with ThreadPoolExecutor(max_workers=settings.workers) as pool:
            results = list(pool.map(lambda b: m.moments_block(b, settings), blocks))
    values = np.concatenate([r[0] for r in results])
    err = np.concatenate([r[1] for r in results])
    quad = np.concatenate([r[2] for r in results])
    repaired = np.minimum.accumulate(values)
    jump = values - repaired
    if np.any(jump > 2 * err + EPS * np.abs(values)):
        logger.warning("moment monotonicity repaired at %d orders (max jump %.3g)",
                       int(np.sum(jump > 2 * err)), float(jump.max()))
    values = np.clip(repaired, 0.0, None)
    method = np.where(quad, 'quadrature', 'closed_form')
    return MomentSequence(values, method, err)


def tail_mass(m, a, settings=DEFAULT):
    return m.tail_mass(a, settings)


def total_mass(m, settings=DEFAULT):
    return m.total_mass(settings)
