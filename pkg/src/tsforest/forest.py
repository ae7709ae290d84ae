"""Forests of time-series trees.

Every tree trains on the full dataset (no bootstrap); diversity comes
entirely from per-node random interval sampling. Tree i draws its own
generator from (master_seed, i), so the forest is a pure function of the
master seed and the data: growing trees in parallel threads or serially
yields byte-identical models.

Prediction is a majority vote over trees, ties resolved toward the lowest
class label.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import _engine
from .base import Dataset, as_series_values
from .errors import LengthMismatch, ParseError
from .features import prefix_sums
from .sampling import tree_rng
from .splitting import _log_table
from .tree import FlatTree, TreeConfig, TreeNode

__all__ = [
    "ForestConfig",
    "Forest",
    "VoteResult",
    "fit",
    "predict",
    "predict_dataset",
    "evaluate",
    "tree_votes",
    "save_model",
    "load_model",
]

CRITERIA = ("entrance", "entropy")
MODEL_MAGIC = "tsforest-model"
MODEL_VERSION = 1


@dataclass(frozen=True)
class ForestConfig:
    """Forest-level knobs plus the per-tree configuration.

    criterion
        "entrance" scores candidate splits by entropy gain with the
        threshold-to-data margin as tie-break; "entropy" uses gain alone,
        resolving ties by enumeration order.
    """

    n_trees: int = 500
    tree: TreeConfig = field(default_factory=TreeConfig)
    master_seed: int = 0
    criterion: str = "entrance"

    def __post_init__(self) -> None:
        if int(self.n_trees) < 1:
            raise ValueError(f"n_trees must be >= 1, got {self.n_trees}")
        if self.criterion not in CRITERIA:
            raise ValueError(
                f"criterion must be one of {CRITERIA}, got {self.criterion!r}"
            )
        if int(self.master_seed) < 0:
            raise ValueError(f"master_seed must be >= 0, got {self.master_seed}")
        object.__setattr__(self, "n_trees", int(self.n_trees))
        object.__setattr__(self, "master_seed", int(self.master_seed))

    @property
    def use_margin(self) -> bool:
        return self.criterion == "entrance"


@dataclass
class Forest:
    """A trained forest: flat trees plus everything needed to apply them."""

    trees: list[FlatTree]
    num_classes: int
    series_length: int
    config: ForestConfig
    class_labels: tuple[int, ...]
    format_version: int = MODEL_VERSION

    @property
    def n_trees(self) -> int:
        return len(self.trees)

    def root_nodes(self) -> list[TreeNode]:
        return [t.root() for t in self.trees]

    def to_original_label(self, cls: int) -> int:
        return self.class_labels[cls - 1]


@dataclass(frozen=True)
class VoteResult:
    """Vote tally for one series; predicted is the winning class in 1..C."""

    predicted: int
    votes: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.votes)


def _grow_one(args) -> FlatTree:
    pv, pv2, ptv, labels0, num_classes, config, index, log_table = args
    rng = tree_rng(config.master_seed, index)
    max_depth = -1 if config.tree.max_depth is None else config.tree.max_depth
    arrays = _engine.grow_tree_arrays(
        pv,
        pv2,
        ptv,
        labels0,
        num_classes,
        config.tree.kappa,
        config.tree.min_node_size,
        max_depth,
        config.use_margin,
        rng,
        log_table,
    )
    return FlatTree(**arrays)


def fit(data: Dataset, config: ForestConfig = ForestConfig(), n_jobs: Optional[int] = None) -> Forest:
    """Train a forest.

    n_jobs
        worker threads growing trees concurrently; None or 0 picks the CPU
        count. The grown forest does not depend on it in any way, because
        every tree owns a generator derived from (master_seed, tree index).
    """
    pv, pv2, ptv = prefix_sums(data.values)
    labels0 = (data.labels - 1).astype(np.int64)
    log_table = _log_table(data.n_instances)
    jobs = [
        (pv, pv2, ptv, labels0, data.num_classes, config, i, log_table)
        for i in range(config.n_trees)
    ]
    if n_jobs is None or int(n_jobs) == 0:
        n_jobs = os.cpu_count() or 1
    n_jobs = max(1, min(int(n_jobs), config.n_trees))
    if n_jobs == 1:
        trees = [_grow_one(j) for j in jobs]
    else:
        # tree growth releases the GIL inside the compiled kernel
        with ThreadPoolExecutor(max_workers=n_jobs) as pool:
            trees = list(pool.map(_grow_one, jobs))
    return Forest(
        trees=trees,
        num_classes=data.num_classes,
        series_length=data.series_length,
        config=config,
        class_labels=data.class_labels,
    )


def _tree_predictions(forest: Forest, values: np.ndarray) -> np.ndarray:
    """(n_trees, n_instances) matrix of per-tree predicted classes."""
    x = np.ascontiguousarray(values, dtype=np.float64)
    if x.ndim == 1:
        x = x.reshape(1, -1)
    if x.shape[1] != forest.series_length:
        raise LengthMismatch(
            f"series length {x.shape[1]} does not match model length "
            f"{forest.series_length}"
        )
    pv, pv2, ptv = prefix_sums(x)
    out = np.empty((forest.n_trees, x.shape[0]), dtype=np.int32)
    buf = np.empty(x.shape[0], dtype=np.int32)
    for i, tree in enumerate(forest.trees):
        _engine._predict(
            tree.kind,
            tree.t1,
            tree.t2,
            tree.tau,
            tree.left,
            tree.right,
            tree.label,
            pv,
            pv2,
            ptv,
            buf,
        )
        out[i] = buf
    return out


def tree_votes(forest: Forest, data: Dataset) -> np.ndarray:
    """Per-tree predictions for every instance, shape (n_trees, N).

    Row prefixes of this matrix reproduce what a smaller forest of the same
    master seed would predict, which is how error-versus-size curves are
    derived from a single training run.
    """
    return _tree_predictions(forest, data.values)


def _tally(per_tree: np.ndarray, num_classes: int) -> np.ndarray:
    n = per_tree.shape[1]
    votes = np.zeros((n, num_classes), dtype=np.int64)
    for row in per_tree:
        votes[np.arange(n), row - 1] += 1
    return votes


def majority_vote(votes: np.ndarray) -> np.ndarray:
    """Winning class per row of a (N, C) tally; lowest class wins ties."""
    return np.argmax(votes, axis=1).astype(np.int64) + 1


def predict(forest: Forest, series) -> VoteResult:
    """Vote tally and winning class for a single series."""
    values = as_series_values(series)
    per_tree = _tree_predictions(forest, values.reshape(1, -1))
    votes = _tally(per_tree, forest.num_classes)[0]
    predicted = int(np.argmax(votes)) + 1
    return VoteResult(predicted=predicted, votes=tuple(int(v) for v in votes))


def predict_dataset(forest: Forest, values: np.ndarray) -> np.ndarray:
    """Predicted class (1..C) for every row of a series matrix."""
    per_tree = _tree_predictions(forest, values)
    return majority_vote(_tally(per_tree, forest.num_classes))


def evaluate(forest: Forest, test: Dataset) -> float:
    """Misclassification rate of the forest on a labeled dataset.

    Predictions and test labels are compared in the original label space, so
    a test split that happens to lack some training class still scores
    correctly.
    """
    predicted = predict_dataset(forest, test.values)
    table = np.asarray(forest.class_labels, dtype=np.int64)
    predicted_original = table[predicted - 1]
    return float(np.mean(predicted_original != test.original_labels()))


def _write_node(lines: list[str], tree: FlatTree, node: int) -> None:
    stack = [node]
    while stack:
        i = stack.pop()
        if tree.kind[i] == _engine.LEAF:
            counts = " ".join(str(int(c)) for c in tree.counts[i])
            lines.append(f"leaf {int(tree.label[i])} {counts}")
        else:
            lines.append(
                f"split {int(tree.kind[i])} {int(tree.t1[i])} {int(tree.t2[i])} "
                f"{float(tree.tau[i])!r} {float(tree.gain[i])!r}"
            )
            stack.append(int(tree.right[i]))
            stack.append(int(tree.left[i]))


def save_model(forest: Forest, path) -> None:
    """Write a forest as a self-describing versioned text file.

    Floats are written with repr so they round-trip exactly; saving a loaded
    model reproduces the file byte for byte.
    """
    cfg = forest.config
    lines = [
        f"{MODEL_MAGIC} {forest.format_version}",
        f"trees {forest.n_trees}",
        f"classes {forest.num_classes}",
        f"length {forest.series_length}",
        f"labels {' '.join(str(l) for l in forest.class_labels)}",
        f"criterion {cfg.criterion}",
        f"kappa {cfg.tree.kappa}",
        f"max-depth {'none' if cfg.tree.max_depth is None else cfg.tree.max_depth}",
        f"min-node-size {cfg.tree.min_node_size}",
        f"seed {cfg.master_seed}",
    ]
    for t, tree in enumerate(forest.trees):
        lines.append(f"tree {t} nodes {tree.n_nodes}")
        _write_node(lines, tree, 0)
    lines.append("end")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


class _ModelReader:
    def __init__(self, path):
        self.path = str(path)
        with open(path, "r", encoding="utf-8") as fh:
            self.lines = fh.read().splitlines()
        self.pos = 0

    def next_line(self) -> str:
        if self.pos >= len(self.lines):
            raise ParseError(f"{self.path}: unexpected end of file")
        line = self.lines[self.pos]
        self.pos += 1
        return line

    def expect(self, key: str) -> list[str]:
        line = self.next_line()
        parts = line.split()
        if not parts or parts[0] != key:
            raise ParseError(
                f"{self.path}:{self.pos}: expected '{key} ...', got {line!r}"
            )
        return parts[1:]


def _parse_int(reader: _ModelReader, token: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"{reader.path}:{reader.pos}: bad integer {token!r}") from None


def _parse_float(reader: _ModelReader, token: str) -> float:
    try:
        return float(token)
    except ValueError:
        raise ParseError(f"{reader.path}:{reader.pos}: bad float {token!r}") from None


def _read_tree(reader: _ModelReader, n_nodes: int, num_classes: int) -> FlatTree:
    kind = np.zeros(n_nodes, np.int8)
    t1 = np.zeros(n_nodes, np.int32)
    t2 = np.zeros(n_nodes, np.int32)
    tau = np.zeros(n_nodes, np.float64)
    gain = np.zeros(n_nodes, np.float64)
    left = np.full(n_nodes, -1, np.int32)
    right = np.full(n_nodes, -1, np.int32)
    label = np.zeros(n_nodes, np.int32)
    reason = np.zeros(n_nodes, np.int8)
    counts = np.zeros((n_nodes, num_classes), np.int64)

    # preorder: a split's left subtree is the next node, its right subtree
    # starts right after the left one ends
    pending: list[tuple[int, int]] = []  # (parent slot, side 0/1)
    for slot in range(n_nodes):
        if pending:
            parent, side = pending.pop()
            if side == 0:
                left[parent] = slot
            else:
                right[parent] = slot
        elif slot != 0:
            raise ParseError(f"{reader.path}:{reader.pos}: extra node {slot}")
        parts = reader.next_line().split()
        if not parts:
            raise ParseError(f"{reader.path}:{reader.pos}: blank node line")
        if parts[0] == "split":
            if len(parts) != 6:
                raise ParseError(
                    f"{reader.path}:{reader.pos}: split needs 5 fields, got {len(parts) - 1}"
                )
            kind[slot] = _parse_int(reader, parts[1])
            if not 1 <= kind[slot] <= 3:
                raise ParseError(f"{reader.path}:{reader.pos}: bad kind {parts[1]}")
            t1[slot] = _parse_int(reader, parts[2])
            t2[slot] = _parse_int(reader, parts[3])
            tau[slot] = _parse_float(reader, parts[4])
            gain[slot] = _parse_float(reader, parts[5])
            reason[slot] = _engine.REASON_SPLIT
            pending.append((slot, 1))
            pending.append((slot, 0))
        elif parts[0] == "leaf":
            if len(parts) != 2 + num_classes:
                raise ParseError(
                    f"{reader.path}:{reader.pos}: leaf needs label plus "
                    f"{num_classes} counts"
                )
            kind[slot] = _engine.LEAF
            label[slot] = _parse_int(reader, parts[1])
            for c in range(num_classes):
                counts[slot, c] = _parse_int(reader, parts[2 + c])
            # stop reasons are not serialized; mark deserialized leaves pure
            # only when they really are
            nz = int(np.count_nonzero(counts[slot]))
            reason[slot] = (
                _engine.REASON_PURE if nz <= 1 else _engine.REASON_NO_GAIN
            )
        else:
            raise ParseError(
                f"{reader.path}:{reader.pos}: expected split/leaf, got {parts[0]!r}"
            )
        if kind[slot] == _engine.LEAF and not pending and slot != n_nodes - 1:
            raise ParseError(
                f"{reader.path}:{reader.pos}: tree closed after node {slot}, "
                f"but {n_nodes} nodes declared"
            )
    if pending:
        raise ParseError(f"{reader.path}:{reader.pos}: tree truncated")
    # majority labels for split nodes, derived from leaf counts upward, are
    # not stored either; they are never read for prediction
    return FlatTree(kind, t1, t2, tau, gain, left, right, label, reason, counts)


def load_model(path) -> Forest:
    """Read a model file written by :func:`save_model`."""
    reader = _ModelReader(path)
    head = reader.next_line().split()
    if len(head) != 2 or head[0] != MODEL_MAGIC:
        raise ParseError(f"{reader.path}: not a model file")
    version = _parse_int(reader, head[1])
    if version != MODEL_VERSION:
        raise ParseError(
            f"{reader.path}: unsupported model version {version} "
            f"(this build reads {MODEL_VERSION})"
        )
    n_trees = _parse_int(reader, reader.expect("trees")[0])
    num_classes = _parse_int(reader, reader.expect("classes")[0])
    length = _parse_int(reader, reader.expect("length")[0])
    label_tokens = reader.expect("labels")
    if len(label_tokens) != num_classes:
        raise ParseError(
            f"{reader.path}: {len(label_tokens)} labels for {num_classes} classes"
        )
    class_labels = tuple(_parse_int(reader, tok) for tok in label_tokens)
    criterion = reader.expect("criterion")[0]
    kappa = _parse_int(reader, reader.expect("kappa")[0])
    depth_tok = reader.expect("max-depth")[0]
    max_depth = None if depth_tok == "none" else _parse_int(reader, depth_tok)
    min_node = _parse_int(reader, reader.expect("min-node-size")[0])
    seed = _parse_int(reader, reader.expect("seed")[0])
    config = ForestConfig(
        n_trees=n_trees,
        tree=TreeConfig(kappa=kappa, max_depth=max_depth, min_node_size=min_node),
        master_seed=seed,
        criterion=criterion,
    )
    trees = []
    for t in range(n_trees):
        header = reader.expect("tree")
        if len(header) != 3 or _parse_int(reader, header[0]) != t or header[1] != "nodes":
            raise ParseError(f"{reader.path}:{reader.pos}: bad tree header")
        n_nodes = _parse_int(reader, header[2])
        if n_nodes < 1:
            raise ParseError(f"{reader.path}:{reader.pos}: empty tree {t}")
        trees.append(_read_tree(reader, n_nodes, num_classes))
    tail = reader.next_line()
    if tail != "end":
        raise ParseError(f"{reader.path}:{reader.pos}: expected 'end', got {tail!r}")
    return Forest(
        trees=trees,
        num_classes=num_classes,
        series_length=length,
        config=config,
        class_labels=class_labels,
        format_version=version,
    )
