"""A slow, obviously-correct tree builder used as an oracle.

Grows a tree recursively out of nothing but the public splitting and
sampling operations, consuming the generator in the same order as the
compiled engine: interval draws at each node in preorder, one extra draw
only when two or more feature kinds tie on gain. The engine must reproduce
this composition bit for bit; tests compare via :func:`norm_tree`.
"""
from __future__ import annotations

import numpy as np

from tsforest import (
    Dataset,
    FeatureKind,
    Interval,
    LeafNode,
    SplitNode,
    TreeConfig,
    compute_feature,
    sample_intervals,
)
from tsforest.splitting import best_split_for_kind, select_best_split

KINDS = (FeatureKind.MEAN, FeatureKind.STDDEV, FeatureKind.SLOPE)


def reference_build(
    values: np.ndarray,
    labels: np.ndarray,
    num_classes: int,
    config: TreeConfig,
    rng: np.random.Generator,
    use_margin: bool = True,
    depth: int = 0,
):
    """Grow one tree; returns a LeafNode/SplitNode structure."""
    values = np.asarray(values, dtype=np.float64)
    labels = np.asarray(labels, dtype=np.int64)
    n, m = values.shape
    counts = np.bincount(labels, minlength=num_classes + 1)[1:]
    majority = int(np.argmax(counts)) + 1

    def leaf(reason):
        return LeafNode(majority, tuple(int(c) for c in counts), reason)

    if counts[majority - 1] == n:
        return leaf("pure")
    if n < config.min_node_size:
        return leaf("min-size")
    if config.max_depth is not None and depth >= config.max_depth:
        return leaf("depth")

    intervals = [Interval(int(a), int(b)) for a, b in sample_intervals(rng, m)]
    per_kind = [
        best_split_for_kind(
            values, labels, num_classes, kind, intervals,
            config.kappa, use_margin=use_margin,
        )
        for kind in KINDS
    ]
    chosen = select_best_split(per_kind, rng)
    if chosen is None:
        return leaf("no-gain")

    cand = chosen.candidate
    feats = np.array(
        [compute_feature(cand.kind, values[j], cand.interval) for j in range(n)]
    )
    mask = feats <= cand.threshold
    left = reference_build(
        values[mask], labels[mask], num_classes, config, rng, use_margin, depth + 1
    )
    right = reference_build(
        values[~mask], labels[~mask], num_classes, config, rng, use_margin, depth + 1
    )
    return SplitNode(cand.kind, cand.interval, cand.threshold, chosen.gain, left, right)


def norm_tree(node):
    """Nested tuples for exact comparison.

    Leaf best_gain is excluded: the engine stores the best ineligible gain
    there for the no-gain audit, which the reference does not track.
    """
    if isinstance(node, LeafNode):
        return ("leaf", node.label, node.class_counts, node.reason)
    return (
        "split",
        int(node.kind),
        node.interval.t1,
        node.interval.t2,
        node.threshold,
        node.gain,
        norm_tree(node.left),
        norm_tree(node.right),
    )


def reference_build_dataset(data: Dataset, config: TreeConfig, rng, use_margin=True):
    return reference_build(
        data.values, data.labels, data.num_classes, config, rng, use_margin
    )
