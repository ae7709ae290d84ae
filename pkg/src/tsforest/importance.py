"""Temporal importance curves.

Every split node contributes its entropy gain to every time index inside its
interval, one curve per feature kind. Summing raw gains over a forest makes
regions that many trees found informative stand out; the curves are reported
unnormalized by default. Because short intervals cover few time indexes while
long ones cover many, an optional normalization divides each curve point by
the number of intervals containing it, a variant that goes beyond the plain
gain-sum definition and is clearly flagged as such.
"""
from __future__ import annotations

from dataclasses import dataclass
from io import StringIO
from typing import Optional

import numpy as np

from . import _engine
from .base import FeatureKind
from .errors import IndexOutOfRange
from .forest import Forest

__all__ = [
    "ImportanceCurves",
    "importance_curves",
    "interval_count",
    "curves_to_csv",
]


@dataclass(frozen=True)
class ImportanceCurves:
    """Per-kind gain sums over time, each array of length series_length."""

    mean: np.ndarray
    stddev: np.ndarray
    slope: np.ndarray
    series_length: int

    def for_kind(self, kind: FeatureKind) -> np.ndarray:
        kind = FeatureKind(kind)
        if kind == FeatureKind.MEAN:
            return self.mean
        if kind == FeatureKind.STDDEV:
            return self.stddev
        return self.slope


def importance_curves(forest: Forest) -> ImportanceCurves:
    """Accumulate split gains over time for each feature kind.

    A split on interval (t1, t2) with gain g adds g to curve positions
    t1..t2 of its kind's curve. Splits are taken from every tree of the
    forest; leaves contribute nothing.
    """
    m = forest.series_length
    curves = np.zeros((4, m), dtype=np.float64)
    for tree in forest.trees:
        kinds = tree.kind
        for i in range(tree.n_nodes):
            k = int(kinds[i])
            if k == _engine.LEAF:
                continue
            curves[k, int(tree.t1[i]) - 1 : int(tree.t2[i])] += float(tree.gain[i])
    return ImportanceCurves(
        mean=curves[int(FeatureKind.MEAN)],
        stddev=curves[int(FeatureKind.STDDEV)],
        slope=curves[int(FeatureKind.SLOPE)],
        series_length=m,
    )


def interval_count(t: int, series_length: int) -> int:
    """Number of closed intervals of 1..series_length containing index t.

    An interval (t1, t2) contains t when t1 <= t and t2 >= t, giving
    t * (series_length - t + 1) choices. Useful as a coverage correction
    when comparing curve values between the middle and the edges of the
    series.
    """
    t = int(t)
    m = int(series_length)
    if t < 1 or t > m:
        raise IndexOutOfRange(f"index {t} outside 1..{m}")
    return t * (m - t + 1)


def curves_to_csv(
    curves: ImportanceCurves,
    path: Optional[str] = None,
    *,
    normalize: bool = False,
) -> str:
    """Render curves as CSV with header ``t,mean,stddev,slope``.

    With ``normalize`` three extra columns divide each value by the count of
    intervals covering t (not part of the plain gain-sum definition; useful
    when comparing positions at different distances from the series edges).
    Returns the CSV text; also writes it to ``path`` when given.
    """
    out = StringIO()
    header = "t,mean,stddev,slope"
    if normalize:
        header += ",mean_normalized,stddev_normalized,slope_normalized"
    out.write(header + "\n")
    m = curves.series_length
    for t in range(1, m + 1):
        row = [
            str(t),
            repr(float(curves.mean[t - 1])),
            repr(float(curves.stddev[t - 1])),
            repr(float(curves.slope[t - 1])),
        ]
        if normalize:
            denom = float(interval_count(t, m))
            row.extend(
                repr(float(v) / denom)
                for v in (curves.mean[t - 1], curves.stddev[t - 1], curves.slope[t - 1])
            )
        out.write(",".join(row) + "\n")
    text = out.getvalue()
    if path is not None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return text
