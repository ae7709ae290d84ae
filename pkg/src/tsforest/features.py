"""Interval summary features: mean, standard deviation, least-squares slope.

Every feature is evaluated from prefix-sum tables so one evaluation costs
O(1) regardless of interval length. The same three scalar kernels serve both
the public functions here and the tree-growing engine, which keeps the two
paths numerically identical.

For an interval (t1, t2) of length n = t2 - t1 + 1 over values v_t:

* mean      = S / n with S the windowed sum of v
* stddev    = sqrt((S2 - S^2 / n) / (n - 1)), the sample standard deviation,
  defined as 0 when n == 1
* slope     = (Stv - tbar * S) / (n (n^2 - 1) / 12), the least-squares line
  fitted against the time index t, defined as 0 when n == 1; the denominator
  is the closed form of sum (t - tbar)^2 for consecutive integers
"""
from __future__ import annotations

import numpy as np
from numba import njit

from .base import FeatureKind, Interval, as_series_values
from .errors import LengthMismatch

__all__ = [
    "compute_mean",
    "compute_std",
    "compute_slope",
    "compute_feature",
    "prefix_sums",
]


@njit(cache=True, nogil=True)
def _window_mean(pv, t1, t2):
    n = t2 - t1 + 1
    return (pv[t2] - pv[t1 - 1]) / n


@njit(cache=True, nogil=True)
def _window_std(pv, pv2, t1, t2):
    n = t2 - t1 + 1
    if n == 1:
        return 0.0
    s = pv[t2] - pv[t1 - 1]
    s2 = pv2[t2] - pv2[t1 - 1]
    var = (s2 - s * s / n) / (n - 1)
    if var < 0.0:
        # round-off can push an exactly-constant window slightly negative
        var = 0.0
    return np.sqrt(var)


@njit(cache=True, nogil=True)
def _window_slope(pv, ptv, t1, t2):
    n = t2 - t1 + 1
    if n == 1:
        return 0.0
    s = pv[t2] - pv[t1 - 1]
    stv = ptv[t2] - ptv[t1 - 1]
    tbar = 0.5 * (t1 + t2)
    denom = n * (float(n) * n - 1.0) / 12.0
    return (stv - tbar * s) / denom


@njit(cache=True, nogil=True)
def _window_feature(kind, pv, pv2, ptv, t1, t2):
    if kind == 1:
        return _window_mean(pv, t1, t2)
    elif kind == 2:
        return _window_std(pv, pv2, t1, t2)
    return _window_slope(pv, ptv, t1, t2)


def prefix_sums(values: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Prefix tables (pv, pv2, ptv) for a matrix of series, one row each.

    Each table has shape (N, M + 1) with column 0 equal to zero, so the
    windowed sum over the 1-based closed interval (t1, t2) is
    ``table[:, t2] - table[:, t1 - 1]``. pv accumulates v, pv2 accumulates
    v^2, ptv accumulates t * v.
    """
    x = np.ascontiguousarray(values, dtype=np.float64)
    if x.ndim == 1:
        x = x.reshape(1, -1)
    n, m = x.shape
    pv = np.zeros((n, m + 1))
    pv2 = np.zeros((n, m + 1))
    ptv = np.zeros((n, m + 1))
    np.cumsum(x, axis=1, out=pv[:, 1:])
    np.cumsum(x * x, axis=1, out=pv2[:, 1:])
    t = np.arange(1.0, m + 1.0)
    np.cumsum(x * t, axis=1, out=ptv[:, 1:])
    return pv, pv2, ptv


def _coerce(series, interval) -> tuple[np.ndarray, int, int]:
    values = as_series_values(series)
    if not isinstance(interval, Interval):
        interval = Interval(int(interval[0]), int(interval[1]))
    interval.check_fits(values.shape[0])
    return values, interval.t1, interval.t2


def compute_mean(series, interval) -> float:
    """Mean of the series over a closed 1-based interval."""
    values, t1, t2 = _coerce(series, interval)
    pv, _, _ = prefix_sums(values)
    return float(_window_mean(pv[0], t1, t2))


def compute_std(series, interval) -> float:
    """Sample standard deviation over the interval; 0 for a single point."""
    values, t1, t2 = _coerce(series, interval)
    pv, pv2, _ = prefix_sums(values)
    return float(_window_std(pv[0], pv2[0], t1, t2))


def compute_slope(series, interval) -> float:
    """Slope of the least-squares line over the interval; 0 for a single point.

    The line is fitted against the absolute time index, so a sub-interval of a
    longer series sees the same slope it would as a standalone series shifted
    in time.
    """
    values, t1, t2 = _coerce(series, interval)
    pv, _, ptv = prefix_sums(values)
    return float(_window_slope(pv[0], ptv[0], t1, t2))


def compute_feature(kind: FeatureKind, series, interval) -> float:
    """Dispatch to one of the three interval features by kind."""
    kind = FeatureKind(kind)
    if kind == FeatureKind.MEAN:
        return compute_mean(series, interval)
    if kind == FeatureKind.STDDEV:
        return compute_std(series, interval)
    return compute_slope(series, interval)
