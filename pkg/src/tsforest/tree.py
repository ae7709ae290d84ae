"""A single time-series tree.

Internal nodes test one interval feature against a threshold, sending
``value <= threshold`` left. Leaves predict their majority class. Growth
stops when a node is pure, smaller than ``min_node_size``, at the depth cap,
or when no candidate split has positive entropy gain.

Trees are grown by the compiled engine and exposed both as flat arrays
(:class:`FlatTree`, the form the forest stores and predicts from) and as a
recursive structure of :class:`SplitNode` / :class:`LeafNode` for inspection.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from . import _engine
from .base import Dataset, FeatureKind, Interval, as_series_values
from .errors import LengthMismatch
from .features import compute_feature, prefix_sums
from .sampling import tree_rng
from .splitting import _log_table

__all__ = [
    "TreeConfig",
    "LeafNode",
    "SplitNode",
    "TreeNode",
    "FlatTree",
    "build_tree",
    "predict_tree",
]

STOP_REASONS = {
    _engine.REASON_SPLIT: "split",
    _engine.REASON_PURE: "pure",
    _engine.REASON_NO_GAIN: "no-gain",
    _engine.REASON_MIN_SIZE: "min-size",
    _engine.REASON_DEPTH: "depth",
}


@dataclass(frozen=True)
class TreeConfig:
    """Knobs for growing one tree.

    kappa
        number of candidate thresholds per (kind, interval) pair.
    max_depth
        depth cap; None means unlimited. A node at this depth becomes a
        leaf, so ``max_depth=0`` forces a stump-less single leaf.
    min_node_size
        nodes with fewer instances are not split.
    """

    kappa: int = 20
    max_depth: Optional[int] = None
    min_node_size: int = 2

    def __post_init__(self) -> None:
        if int(self.kappa) < 1:
            raise ValueError(f"kappa must be >= 1, got {self.kappa}")
        if self.max_depth is not None and int(self.max_depth) < 0:
            raise ValueError(f"max_depth must be >= 0 or None, got {self.max_depth}")
        if int(self.min_node_size) < 2:
            raise ValueError(f"min_node_size must be >= 2, got {self.min_node_size}")
        object.__setattr__(self, "kappa", int(self.kappa))
        object.__setattr__(
            self, "max_depth", None if self.max_depth is None else int(self.max_depth)
        )
        object.__setattr__(self, "min_node_size", int(self.min_node_size))


@dataclass(frozen=True)
class LeafNode:
    """Terminal node: majority label, class counts, and why growth stopped."""

    label: int
    class_counts: tuple[int, ...]
    reason: str = "pure"
    best_gain: float = 0.0


@dataclass(frozen=True)
class SplitNode:
    kind: FeatureKind
    interval: Interval
    threshold: float
    gain: float
    left: "TreeNode"
    right: "TreeNode"


TreeNode = Union[LeafNode, SplitNode]


@dataclass
class FlatTree:
    """One grown tree as parallel arrays; node 0 is the root."""

    kind: np.ndarray
    t1: np.ndarray
    t2: np.ndarray
    tau: np.ndarray
    gain: np.ndarray
    left: np.ndarray
    right: np.ndarray
    label: np.ndarray
    reason: np.ndarray
    counts: np.ndarray

    @property
    def n_nodes(self) -> int:
        return int(self.kind.shape[0])

    def root(self) -> TreeNode:
        """Materialize the recursive node structure (iteratively; trees can
        be deeper than the interpreter's recursion limit)."""
        nodes: list[Optional[TreeNode]] = [None] * self.n_nodes
        # children have higher indices than parents, so a reverse pass
        # resolves them before their parent
        for i in range(self.n_nodes - 1, -1, -1):
            if self.kind[i] == _engine.LEAF:
                nodes[i] = LeafNode(
                    label=int(self.label[i]),
                    class_counts=tuple(int(c) for c in self.counts[i]),
                    reason=STOP_REASONS[int(self.reason[i])],
                    best_gain=float(self.gain[i]),
                )
            else:
                nodes[i] = SplitNode(
                    kind=FeatureKind(int(self.kind[i])),
                    interval=Interval(int(self.t1[i]), int(self.t2[i])),
                    threshold=float(self.tau[i]),
                    gain=float(self.gain[i]),
                    left=nodes[int(self.left[i])],
                    right=nodes[int(self.right[i])],
                )
        root = nodes[0]
        assert root is not None
        return root


def _grow_flat(
    values: np.ndarray,
    labels: np.ndarray,
    num_classes: int,
    config: TreeConfig,
    rng: np.random.Generator,
    use_margin: bool,
    tables: Optional[tuple[np.ndarray, np.ndarray, np.ndarray]] = None,
    log_table: Optional[np.ndarray] = None,
) -> FlatTree:
    if tables is None:
        tables = prefix_sums(values)
    pv, pv2, ptv = tables
    if log_table is None:
        log_table = _log_table(pv.shape[0])
    max_depth = -1 if config.max_depth is None else config.max_depth
    arrays = _engine.grow_tree_arrays(
        pv,
        pv2,
        ptv,
        np.asarray(labels, dtype=np.int64) - 1,
        int(num_classes),
        config.kappa,
        config.min_node_size,
        max_depth,
        bool(use_margin),
        rng,
        log_table,
    )
    return FlatTree(**arrays)


def build_tree(
    data: Dataset,
    config: TreeConfig = TreeConfig(),
    rng: Optional[np.random.Generator] = None,
    *,
    use_margin: bool = True,
) -> TreeNode:
    """Grow one tree on a dataset and return its root node.

    ``rng`` drives interval sampling and kind tie-breaks; when omitted, the
    stream a single-tree forest with master seed 0 would use is taken, so
    ``build_tree(data)`` equals the one tree of ``fit`` at that seed.
    """
    if rng is None:
        rng = tree_rng(0, 0)
    flat = _grow_flat(
        data.values, data.labels, data.num_classes, config, rng, use_margin
    )
    return flat.root()


def predict_tree(node: TreeNode, series) -> int:
    """Walk a tree for one series and return the leaf's majority class.

    Raises LengthMismatch when a split interval runs past the end of the
    series; a series longer than the training length walks fine because only
    sampled intervals are ever read.
    """
    values = as_series_values(series)
    current = node
    while isinstance(current, SplitNode):
        v = compute_feature(current.kind, values, current.interval)
        current = current.left if v <= current.threshold else current.right
    if not isinstance(current, LeafNode):
        raise TypeError(f"not a tree node: {current!r}")
    return int(current.label)
