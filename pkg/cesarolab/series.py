"""Truncated Taylor series on the unit disk and the test functions fed to C_mu."""

import logging
from dataclasses import dataclass
from functools import cached_property
from math import inf, isinf

import numpy as np
from scipy.special import gammaln

from .errors import ParameterError, RadiusError
from .settings import DEFAULT

logger = logging.getLogger(__name__)

R_CAP = 1.0 - 2.0**-40


@dataclass(frozen=True)
class Envelope:
    """Claimed bound |c_k| <= C (k+1)^m rate^k for the coefficients beyond the truncation."""
    C: float
    m: float = 0.0
    rate: float = 1.0

    def tail_bound(self, N, r):
        """Upper bound on sum_{k>N} C (k+1)^m (rate r)^k."""
        q = self.rate * r
        if self.C == 0.0 or q == 0.0:
            return 0.0
        growth = ((N + 3.0) / (N + 2.0))**self.m if self.m > 0 else 1.0
        ratio = q * growth
        if ratio >= 1.0:
            return inf
        log_term = np.log(self.C) + self.m * np.log(N + 2.0) + (N + 1.0) * np.log(q)
        return float(np.exp(log_term) / (1.0 - ratio))

    def admissible_radius(self, N, tol):
        """Largest r in [0, R_CAP] whose tail bound stays below tol (bisection)."""
        if self.tail_bound(N, R_CAP) < tol:
            return R_CAP
        lo, hi = 0.0, R_CAP
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            if self.tail_bound(N, mid) < tol:
                lo = mid
            else:
                hi = mid
        return lo

    def derivative(self, order):
        m = self.m + order
        C = self.C * self.rate**order * (order + 1.0)**max(m, 0.0)
        return Envelope(C, m, self.rate)

    def partial_sums(self):
        if self.rate < 1.0:
            if self.rate == 0.0:
                return Envelope(self.C, 0.0, 1.0)
            K = int(min(1e7, np.ceil((60.0 + 10.0 * abs(self.m)) / -np.log(self.rate))))
            k = np.arange(K, dtype=float)
            S = np.sum(np.exp(self.m * np.log1p(k) + k * np.log(self.rate)))
            return Envelope(self.C * S, 0.0, 1.0)
        if self.m >= 0:
            return Envelope(self.C, self.m + 1.0, 1.0)
        if self.m > -1:
            return Envelope(self.C / (self.m + 1.0), self.m + 1.0, 1.0)
        return Envelope(2.5 * self.C, 0.25, 1.0)

    def scaled(self, factor):
        return Envelope(self.C * abs(factor), self.m, self.rate)

    def combined(self, other):
        return Envelope(self.C + other.C, max(self.m, other.m), max(self.rate, other.rate))


def _combine(e1, e2):
    if e1 is None:
        return e2
    if e2 is None:
        return e1
    return e1.combined(e2)


@dataclass(frozen=True, eq=False)
class PowerSeries:
    """Coefficients c_0..c_N of an analytic function.

    An envelope of None means the function is the polynomial itself.
    """
    coeffs: np.ndarray
    envelope: Envelope = None
    label: str = ''

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).ravel()
        if len(c) == 0:
            raise ParameterError("A power series needs at least one coefficient.")
        c.flags.writeable = False
        object.__setattr__(self, 'coeffs', c)

    def __len__(self):
        return len(self.coeffs)

    def __repr__(self):
        return f"PowerSeries({self.label or 'custom'}, N={self.truncation_order})"

    @property
    def truncation_order(self):
        return len(self.coeffs) - 1

    @property
    def tail_hint(self):
        if self.envelope is not None and self.envelope.rate < 1.0:
            return self.envelope.rate
        return None

    @property
    def nonnegative(self):
        return bool(np.all(self.coeffs.imag == 0) and np.all(self.coeffs.real >= 0))

    def admissible_radius(self, tol=DEFAULT.radius_tol):
        if self.envelope is None:
            return R_CAP
        return self.envelope.admissible_radius(self.truncation_order, tol)

    @cached_property
    def r_max(self):
        return self.admissible_radius()

    def check_radius(self, z):
        r = float(np.max(np.abs(z)))
        if r > self.r_max + 1e-15:
            raise RadiusError(r, self.r_max)

    def __call__(self, z):
        return evaluate(self, z)

    def derivative(self, order):
        return differentiate(self, order)

    def _other(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        if other.truncation_order != self.truncation_order:
            raise ParameterError("Series of different truncation orders cannot be combined.")
        return other

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return PowerSeries(self.coeffs + other.coeffs, _combine(self.envelope, other.envelope))

    def __sub__(self, other):
        return self + (-1.0) * other

    def __mul__(self, scalar):
        if not np.isscalar(scalar):
            return NotImplemented
        env = None if self.envelope is None else self.envelope.scaled(scalar)
        return PowerSeries(scalar * self.coeffs, env, self.label)

    __rmul__ = __mul__

    def __neg__(self):
        return (-1.0) * self


# test functions

class TestFunctionKind:
    """A named analytic function with exact Taylor coefficients."""
    tag = ''
    __test__ = False

    def coefficients(self, N):
        raise NotImplementedError

    def envelope(self, N):
        raise NotImplementedError

    def derivative_value(self, z, order):
        raise ParameterError(f"{self.tag} has no closed form.")

    def to_spec(self):
        return {'kind': self.tag}


def _log_gamma_ratios(b, N):
    """log Gamma(b+k) - log Gamma(b) - log k! for k = 0..N, accumulated by recurrence."""
    k = np.arange(N, dtype=float)
    return np.concatenate(([0.0], np.cumsum(np.log((b + k) / (k + 1.0)))))


def _rising(b, order):
    out = 1.0
    for i in range(order):
        out *= b + i
    return out


@dataclass(frozen=True)
class ConformalKernel(TestFunctionKind):
    """f_a(z) = (1-a)/(1-az)^(1+1/p)."""
    a: float
    p: float = inf
    tag = 'conformal_kernel'

    def __post_init__(self):
        if not 0 < self.a < 1:
            raise ParameterError(f"ConformalKernel needs 0 < a < 1, got a={self.a}.")
        if not self.p > 0:
            raise ParameterError(f"ConformalKernel needs p > 0, got p={self.p}.")

    @property
    def b(self):
        return 1.0 if isinf(self.p) else 1.0 + 1.0 / self.p

    def coefficients(self, N):
        k = np.arange(N + 1, dtype=float)
        logs = _log_gamma_ratios(self.b, N) + k * np.log(self.a) + np.log1p(-self.a)
        return np.exp(logs)

    def envelope(self, N):
        C = 2.0 * (1.0 - self.a) * max(1.0, float(np.exp(-gammaln(self.b))))
        return Envelope(C, self.b - 1.0, self.a)

    def derivative_value(self, z, order):
        b, a = self.b, self.a
        return (1 - a) * _rising(b, order) * a**order * (1 - a * z)**(-b - order)

    def to_spec(self):
        return {'kind': self.tag, 'a': self.a, 'p': 'inf' if isinf(self.p) else self.p}


@dataclass(frozen=True)
class PowerKernel(TestFunctionKind):
    """(1-z)^(-c)."""
    c: float
    tag = 'power_kernel'

    def __post_init__(self):
        if not self.c > 0:
            raise ParameterError(f"PowerKernel needs c > 0, got c={self.c}.")

    def coefficients(self, N):
        return np.exp(_log_gamma_ratios(self.c, N))

    def envelope(self, N):
        return Envelope(2.0 * max(1.0, float(np.exp(-gammaln(self.c)))), self.c - 1.0)

    def derivative_value(self, z, order):
        return _rising(self.c, order) * (1 - z)**(-self.c - order)

    def to_spec(self):
        return {'kind': self.tag, 'c': self.c}


@dataclass(frozen=True)
class GeometricOnes(TestFunctionKind):
    """1/(1-z)."""
    tag = 'geometric_ones'

    def coefficients(self, N):
        return np.ones(N + 1)

    def envelope(self, N):
        return Envelope(1.0)

    def derivative_value(self, z, order):
        return _rising(1.0, order) * (1 - z)**(-1.0 - order)


@dataclass(frozen=True)
class LogKernel(TestFunctionKind):
    """log 1/(1-z)."""
    tag = 'log_kernel'

    def coefficients(self, N):
        c = np.zeros(N + 1)
        c[1:] = 1.0 / np.arange(1, N + 1)
        return c

    def envelope(self, N):
        return Envelope(1.0)

    def derivative_value(self, z, order):
        if order == 0:
            return -np.log(1 - z)
        return _rising(1.0, order - 1) * (1 - z)**(-float(order))


@dataclass(frozen=True)
class Lacunary(TestFunctionKind):
    """sum_k z^(2^k)."""
    tag = 'lacunary'

    def coefficients(self, N):
        c = np.zeros(N + 1)
        j = 1
        while j <= N:
            c[j] = 1.0
            j *= 2
        return c

    def envelope(self, N):
        return Envelope(1.0)


@dataclass(frozen=True)
class Monomial(TestFunctionKind):
    n: int
    tag = 'monomial'

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise ParameterError(f"Monomial needs an integer n >= 0, got {self.n}.")

    def coefficients(self, N):
        c = np.zeros(N + 1)
        if self.n <= N:
            c[self.n] = 1.0
        return c

    def envelope(self, N):
        return None if self.n <= N else Envelope(1.0)

    def derivative_value(self, z, order):
        n = self.n
        if order > n:
            return 0 * z
        fall = 1.0
        for i in range(order):
            fall *= n - i
        return fall * z**(n - order)

    def to_spec(self):
        return {'kind': self.tag, 'n': self.n}


@dataclass(frozen=True)
class Constant(TestFunctionKind):
    v: complex = 1.0
    tag = 'constant'

    def coefficients(self, N):
        c = np.zeros(N + 1, dtype=complex)
        c[0] = self.v
        return c

    def envelope(self, N):
        return None

    def derivative_value(self, z, order):
        return self.v + 0 * z if order == 0 else 0 * z

    def to_spec(self):
        v = complex(self.v)
        return {'kind': self.tag, 'v': v.real if v.imag == 0 else [v.real, v.imag]}


KINDS = {cls.tag: cls for cls in (ConformalKernel, PowerKernel, GeometricOnes,
                                  LogKernel, Lacunary, Monomial, Constant)}


@dataclass(frozen=True)
class ClosedForm:
    """Exact evaluation of a test function (or one of its first two derivatives) on the open disk."""
    kind: TestFunctionKind
    order: int = 0

    def __post_init__(self):
        if self.order > 2:
            raise ParameterError("Closed forms are available up to the second derivative.")
        self.kind.derivative_value(0.0, self.order)

    @property
    def r_max(self):
        return R_CAP

    def check_radius(self, z):
        r = float(np.max(np.abs(z)))
        if r >= 1.0:
            raise RadiusError(r, R_CAP)

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        self.check_radius(z)
        return self.kind.derivative_value(z, self.order)

    def derivative(self, order):
        return ClosedForm(self.kind, self.order + order)


def make_series(kind, N):
    """First N+1 Taylor coefficients of a test function.

    Args:
        kind (TestFunctionKind): the function.
        N (int): truncation order.

    Returns:
        PowerSeries: exact coefficients carrying the kind's tail envelope.
    """
    if int(N) != N or N < 0:
        raise ParameterError(f"Truncation order must be an integer >= 0, got {N}.")
    N = int(N)
    return PowerSeries(kind.coefficients(N), kind.envelope(N), kind.tag)


def _horner(c, z):
    """Blocked Horner scheme: sqrt(N) blocks evaluated side by side, then combined in z^B."""
    B = int(np.ceil(np.sqrt(len(c))))
    blocks = np.concatenate((c, np.zeros((-len(c)) % B, dtype=complex))).reshape(-1, B)
    acc = np.zeros((blocks.shape[0], z.size), dtype=complex)
    for i in range(B - 1, -1, -1):
        acc = acc * z + blocks[:, i:i + 1]
    zB = z**B
    out = np.zeros(z.size, dtype=complex)
    for row in acc[::-1]:
        out = out * zB + row
    return out


def evaluate(f, z):
    """Horner evaluation of f at z (scalar or array) inside the admissible radius."""
    f.check_radius(z)
    z = np.asarray(z, dtype=complex)
    out = _horner(f.coeffs, z.ravel()).reshape(z.shape)
    return complex(out) if out.ndim == 0 else out


def differentiate(f, order):
    """Series of the order-th derivative, truncated at N - order."""
    if order not in (1, 2):
        raise ParameterError(f"Only first and second derivatives are supported, got {order}.")
    N = f.truncation_order
    if order > N:
        raise ParameterError(f"Cannot differentiate {order} times a series of order {N}.")
    k = np.arange(order, N + 1, dtype=float)
    scale = k if order == 1 else k * (k - 1.0)
    env = None if f.envelope is None else f.envelope.derivative(order)
    return PowerSeries(f.coeffs[order:] * scale, env, f.label)


def partial_sum_transform(f):
    """Prefix sums A_n = sum_{k<=n} c_k, same truncation order."""
    A = np.cumsum(f.coeffs)
    if f.envelope is None:
        env = Envelope(float(abs(A[-1]))) if A[-1] != 0 else None
    else:
        env = f.envelope.partial_sums()
    return PowerSeries(A, env, f.label)
