"""Gauss-Legendre quadrature on dyadic panels accumulating at zero.

Integrals over (0, top] are split into panels [top 2^-(j+1), top 2^-j]. Each
panel carries a fixed-order Gauss-Legendre rule, which resolves integrands
behaving like powers and logarithms of the distance to zero at every scale.
"""

import logging
from collections import deque
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import QuadratureError
from .iterators import dyadic_panels
from .settings import DEFAULT

logger = logging.getLogger(__name__)

MIN_PANELS = 4


@lru_cache(maxsize=8)
def gauss_legendre(nodes):
    """Nodes and weights of the Gauss-Legendre rule on [-1, 1]."""
    x, w = np.polynomial.legendre.leggauss(nodes)
    x.flags.writeable = False
    w.flags.writeable = False
    return x, w


@dataclass(frozen=True)
class QuadResult:
    value: object
    err: object
    panels: int
    remainder: object


def _panel(func, lo, hi, x, w):
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    return half * (func(mid + half * x) @ w)


def integrate_dyadic(func, top=1.0, settings=DEFAULT):
    """Integrate func over (0, top].

    Panels are added from top towards zero until a panel contributes less than
    settings.panel_rel_stop of the running total. When the panel budget runs
    out the remainder is extrapolated geometrically from the last panels.

    Args:
        func (callable): maps nodes u (1-D array) to values of shape (..., len(u));
            several integrands can share the panels through the leading axes.
        top (float): upper end of the interval.
        settings (Settings): quadrature order, panel cap and stopping rule.

    Returns:
        QuadResult: value and error estimate with the shape of func's leading axes.
    """
    x, w = gauss_legendre(settings.quad_nodes)
    xc, wc = gauss_legendre(max(2, (3 * settings.quad_nodes) // 4))
    acc = 0.0
    err = 0.0
    last = deque(maxlen=3)
    panels = 0
    for j, lo, hi in dyadic_panels(top, settings.panel_cap):
        part = _panel(func, lo, hi, x, w)
        coarse = _panel(func, lo, hi, xc, wc)
        acc = acc + part
        err = err + np.abs(part - coarse)
        last.append(part)
        panels = j + 1
        if j >= MIN_PANELS and np.all(np.abs(part) < settings.panel_rel_stop * np.abs(acc)):
            logger.debug("dyadic quadrature stopped after %d panels", panels)
            return QuadResult(acc, err, panels, np.zeros_like(acc))
    a_last = np.abs(last[-1])
    a_prev = np.abs(last[-2])
    with np.errstate(divide='ignore', invalid='ignore'):
        ratio = np.where(a_prev > 0, a_last / a_prev, np.where(a_last > 0, np.inf, 0.0))
        ratio_before = np.where(np.abs(last[0]) > 0, a_prev / np.abs(last[0]), ratio)
    if np.any(ratio >= 1.0):
        raise QuadratureError("Dyadic panel contributions did not decay", partial=acc, panels=panels)
    remainder = last[-1] * (ratio / (1.0 - ratio))
    drift = np.minimum(1.0, np.abs(ratio - ratio_before) / (1.0 - ratio))
    err = err + np.abs(remainder) * drift
    logger.debug("dyadic quadrature used all %d panels, remainder extrapolated", panels)
    return QuadResult(acc + remainder, err, panels, remainder)
