"""Split evaluation for tree nodes.

A candidate split tests one interval feature against one threshold and routes
instances with ``value <= threshold`` left. Candidates are scored by entropy
gain, with the distance from the threshold to the nearest feature value (the
margin) used as a secondary criterion: among candidates whose gains are equal,
the one whose threshold sits farthest from the data wins. This realizes a
combined objective gain-plus-alpha-times-margin in the limit of vanishing
alpha, without ever mixing margins of different feature kinds, whose scales
are not comparable.

Entropy is natural-log based and computed as ``ln(n) - sum c*ln(c) / n`` from
a table of logarithms of the integers, which is algebraically identical to
``-sum (c/n) ln(c/n)`` but avoids divisions in the hot path.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from numba import njit

from .base import FeatureKind, Interval
from .errors import DistributionMismatch
from .features import (
    _window_feature,
    prefix_sums,
)

__all__ = [
    "GAIN_TIE_TOL",
    "ClassDistribution",
    "SplitCandidate",
    "SplitEvaluation",
    "node_entropy",
    "entropy_gain",
    "candidate_thresholds",
    "split_margin",
    "compare_entrance",
    "best_split_for_kind",
    "select_best_split",
]

# Two gains within this absolute distance are treated as tied; a candidate
# must also exceed this to count as a positive-gain split at all.
GAIN_TIE_TOL = 1e-12


@njit(cache=True, nogil=True)
def _log_table(n):
    out = np.zeros(n + 1)
    for k in range(1, n + 1):
        out[k] = np.log(np.float64(k))
    return out


@njit(cache=True, nogil=True)
def _entropy_from_counts(counts, total, log_table):
    if total <= 0:
        return 0.0
    nonzero = 0
    acc = 0.0
    for c in range(counts.shape[0]):
        k = counts[c]
        if k > 0:
            nonzero += 1
            acc += k * log_table[k]
    if nonzero <= 1:
        return 0.0
    h = log_table[total] - acc / total
    return h if h > 0.0 else 0.0


@njit(cache=True, nogil=True)
def _split_gain(parent_counts, left_counts, class_ids, n, n_left, log_table):
    # class_ids must cover, in ascending order, every class with a nonzero
    # parent count; iterating only those keeps the sum order stable between
    # the dense and sparse callers.
    n_right = n - n_left
    if n_left == 0 or n_right == 0:
        return 0.0
    sp = 0.0
    sl = 0.0
    sr = 0.0
    nzp = 0
    nzl = 0
    nzr = 0
    for i in range(class_ids.shape[0]):
        c = class_ids[i]
        p = parent_counts[c]
        l = left_counts[c]
        r = p - l
        if p > 0:
            nzp += 1
            sp += p * log_table[p]
        if l > 0:
            nzl += 1
            sl += l * log_table[l]
        if r > 0:
            nzr += 1
            sr += r * log_table[r]
    hp = 0.0 if nzp <= 1 else log_table[n] - sp / n
    hl = 0.0 if nzl <= 1 else log_table[n_left] - sl / n_left
    hr = 0.0 if nzr <= 1 else log_table[n_right] - sr / n_right
    g = hp - (n_left / n) * hl - (n_right / n) * hr
    return g if g > 0.0 else 0.0


@njit(cache=True, nogil=True)
def _threshold_grid(lo, hi, kappa, out):
    step = (hi - lo) / (kappa + 1)
    for i in range(kappa):
        out[i] = lo + (i + 1) * step


@dataclass(frozen=True)
class ClassDistribution:
    """Per-class instance counts at a node, indexed by class - 1."""

    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        counts = tuple(int(c) for c in self.counts)
        if len(counts) == 0:
            raise ValueError("distribution needs at least one class")
        if any(c < 0 for c in counts):
            raise ValueError(f"negative class count in {counts}")
        object.__setattr__(self, "counts", counts)

    @property
    def total(self) -> int:
        return sum(self.counts)

    @classmethod
    def from_labels(cls, labels: Sequence[int], num_classes: int) -> "ClassDistribution":
        counts = np.bincount(np.asarray(labels, dtype=np.int64), minlength=num_classes + 1)
        if len(counts) > num_classes + 1:
            raise ValueError("label exceeds num_classes")
        return cls(tuple(int(c) for c in counts[1:]))


@dataclass(frozen=True)
class SplitCandidate:
    """One (feature kind, interval, threshold) triple."""

    kind: FeatureKind
    interval: Interval
    threshold: float


@dataclass(frozen=True)
class SplitEvaluation:
    """A candidate with its scores; margin is only meaningful within a kind."""

    candidate: SplitCandidate
    gain: float
    margin: float


def node_entropy(distribution: ClassDistribution) -> float:
    """Shannon entropy (natural log) of a class distribution.

    Zero counts contribute nothing and a single-class node has entropy
    exactly 0.
    """
    counts = np.asarray(distribution.counts, dtype=np.int64)
    total = int(counts.sum())
    return float(_entropy_from_counts(counts, total, _log_table(total)))


def entropy_gain(
    parent: ClassDistribution,
    left: ClassDistribution,
    right: ClassDistribution,
) -> float:
    """Entropy of the parent minus the size-weighted entropies of the children.

    Clamped to 0 from below. The children must partition the parent class by
    class, otherwise DistributionMismatch is raised.
    """
    if len(parent.counts) != len(left.counts) or len(parent.counts) != len(right.counts):
        raise DistributionMismatch("parent and children disagree on class count")
    for c, (p, l, r) in enumerate(zip(parent.counts, left.counts, right.counts)):
        if l + r != p:
            raise DistributionMismatch(
                f"class {c + 1}: left {l} + right {r} != parent {p}"
            )
    parent_counts = np.asarray(parent.counts, dtype=np.int64)
    left_counts = np.asarray(left.counts, dtype=np.int64)
    n = int(parent_counts.sum())
    n_left = int(left_counts.sum())
    class_ids = np.arange(parent_counts.shape[0], dtype=np.int64)
    return float(
        _split_gain(parent_counts, left_counts, class_ids, n, n_left, _log_table(n))
    )


def candidate_thresholds(values, kappa: int) -> np.ndarray:
    """kappa equally spaced thresholds strictly inside the range of values.

    With lo and hi the extremes of ``values``, threshold i (1-based) is
    ``lo + i * (hi - lo) / (kappa + 1)``, so neither extreme is ever a
    candidate and no child can be empty. Returns an empty array when all
    values are equal.
    """
    values = np.asarray(values, dtype=np.float64)
    if values.size == 0:
        raise ValueError("no values to derive thresholds from")
    kappa = int(kappa)
    if kappa < 1:
        raise ValueError(f"kappa must be >= 1, got {kappa}")
    lo = float(values.min())
    hi = float(values.max())
    if lo == hi:
        return np.empty(0, dtype=np.float64)
    out = np.empty(kappa, dtype=np.float64)
    _threshold_grid(lo, hi, kappa, out)
    return out


def split_margin(values, threshold: float) -> float:
    """Distance from the threshold to the nearest feature value."""
    values = np.asarray(values, dtype=np.float64)
    if values.size == 0:
        raise ValueError("margin of an empty value set is undefined")
    return float(np.min(np.abs(values - float(threshold))))


def compare_entrance(a: SplitEvaluation, b: SplitEvaluation, *, use_margin: bool = True) -> int:
    """Order two evaluations: gain first, margin as tie-break.

    Returns 1 if a is strictly better, -1 if b is, 0 on a full tie. Gains
    within GAIN_TIE_TOL of each other count as equal. With ``use_margin``
    false the margin is ignored and equal gains compare as 0, which makes a
    first-seen candidate win downstream.
    """
    if a.gain > b.gain + GAIN_TIE_TOL:
        return 1
    if a.gain < b.gain - GAIN_TIE_TOL:
        return -1
    if use_margin:
        if a.margin > b.margin:
            return 1
        if a.margin < b.margin:
            return -1
    return 0


def best_split_for_kind(
    values: np.ndarray,
    labels: np.ndarray,
    num_classes: int,
    kind: FeatureKind,
    intervals: Sequence[Interval],
    kappa: int = 20,
    *,
    use_margin: bool = True,
) -> Optional[SplitEvaluation]:
    """Best candidate of one feature kind over the given intervals.

    Enumerates every interval in the order given and, within an interval,
    every threshold in ascending order; a later candidate replaces the
    incumbent only if :func:`compare_entrance` ranks it strictly better, so
    exact ties resolve to the earliest candidate. Candidates whose gain does
    not exceed GAIN_TIE_TOL are ignored entirely. Returns None when nothing
    qualifies, e.g. at a pure node.
    """
    x = np.ascontiguousarray(values, dtype=np.float64)
    if x.ndim == 1:
        x = x.reshape(1, -1)
    y = np.asarray(labels, dtype=np.int64)
    n, m = x.shape
    if y.shape != (n,):
        raise ValueError(f"labels shape {y.shape} does not match {n} instances")
    kind = FeatureKind(kind)
    pv, pv2, ptv = prefix_sums(x)
    table = _log_table(n)
    parent_counts = np.bincount(y, minlength=num_classes + 1)[1:].astype(np.int64)
    class_ids = np.arange(num_classes, dtype=np.int64)
    best: Optional[SplitEvaluation] = None
    feats = np.empty(n, dtype=np.float64)
    for interval in intervals:
        if not isinstance(interval, Interval):
            interval = Interval(int(interval[0]), int(interval[1]))
        interval.check_fits(m)
        for j in range(n):
            feats[j] = _window_feature(
                int(kind), pv[j], pv2[j], ptv[j], interval.t1, interval.t2
            )
        for tau in candidate_thresholds(feats, kappa):
            mask = feats <= tau
            n_left = int(mask.sum())
            left_counts = np.bincount(y[mask], minlength=num_classes + 1)[1:].astype(
                np.int64
            )
            gain = float(
                _split_gain(parent_counts, left_counts, class_ids, n, n_left, table)
            )
            if gain <= GAIN_TIE_TOL:
                continue
            margin = split_margin(feats, tau) if use_margin else 0.0
            evaluation = SplitEvaluation(
                SplitCandidate(kind, interval, float(tau)), gain, margin
            )
            if best is None or compare_entrance(evaluation, best, use_margin=use_margin) > 0:
                best = evaluation
    return best


def select_best_split(
    per_kind: Sequence[Optional[SplitEvaluation]],
    rng: np.random.Generator,
) -> Optional[SplitEvaluation]:
    """Pick the winner across feature kinds by gain alone.

    Margins of different kinds live on different scales, so across kinds only
    the gain is compared. Kinds whose gain comes within GAIN_TIE_TOL of the
    maximum are tied, and a tie is broken uniformly at random with ``rng``;
    the generator is consumed only when two or more kinds actually tie.
    ``per_kind`` must be ordered by kind.
    """
    available = [e for e in per_kind if e is not None]
    if not available:
        return None
    top = max(e.gain for e in available)
    tied = [e for e in available if e.gain >= top - GAIN_TIE_TOL]
    if len(tied) == 1:
        return tied[0]
    return tied[int(rng.integers(0, len(tied)))]
