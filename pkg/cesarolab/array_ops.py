import numpy as np

from .errors import DegenerateFitError


def which_max_leq(x, y):
    """Index of the last entry of the sorted array x not above y, -1 if there is none."""
    return np.searchsorted(x, y, side='right') - 1


def next_pow2(n):
    """Smallest power of two not below n."""
    return 1 << max(0, int(np.ceil(np.log2(max(n, 1)))))


def round_sig(x, digits=15):
    """Round to a number of significant digits; non-finite values pass through."""
    x = float(x)
    if not np.isfinite(x) or x == 0.0:
        return x
    return float(f"{x:.{digits}g}")


def loglog_fit(x, y):
    """Least-squares line through (log x, log y).

    Args:
        x (np.array): positive abscissae.
        y (np.array): positive ordinates.

    Returns:
        tuple: slope, intercept and the RMS residual of the fit.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    assert x.shape == y.shape, 'x and y must have equal shapes'
    if len(x) < 2:
        raise DegenerateFitError("At least two points are needed for a fit.")
    if not (np.all(np.isfinite(y)) and np.all(y > 0) and np.all(x > 0)):
        raise DegenerateFitError("Log-log fit needs finite positive values.")
    lx, ly = np.log(x), np.log(y)
    slope, intercept = np.polyfit(lx, ly, 1)
    residual = np.sqrt(np.mean((ly - (slope * lx + intercept))**2))
    return float(slope), float(intercept), float(residual)


def trend_slope(distance, values):
    """Slope of log(values) against log(1/distance) over the last half of a grid.

    Nonpositive values are dropped; fewer than two positive points give -inf
    (the statistic died out) and an infinite value gives +inf.

    Args:
        distance (np.array): distances to the boundary, decreasing along the grid.
        values (np.array): statistic on the grid.
    """
    distance = np.asarray(distance, dtype=float)
    values = np.asarray(values, dtype=float)
    half = len(values) // 2
    d, v = distance[half:], values[half:]
    if np.any(np.isposinf(v)):
        return np.inf
    keep = np.isfinite(v) & (v > 0)
    if keep.sum() < 2:
        return -np.inf
    slope, _, _ = loglog_fit(1.0 / d[keep], v[keep])
    return slope
