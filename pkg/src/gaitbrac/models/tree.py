"""CART grown from scratch, with deterministic tie-breaking.

Classification splits maximize information gain (entropy, base 2);
regression splits maximize weighted-MSE reduction. Candidate thresholds are
midpoints of consecutive sorted distinct values. Ties break toward the
lower feature index, then the lower threshold, so identical inputs always
grow identical trees. Both criteria accept sample weights (needed by the
boosting wrappers).

Features are argsorted once per training matrix (PresortedMatrix); each
node's split search is one compiled pass over that order (numba), so
boosting loops that grow hundreds of trees on one matrix never re-sort.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from ..errors import DegenerateWeights, EmptyData, NonBinaryLabels


@dataclass(frozen=True)
class Leaf:
    value: float


@dataclass(frozen=True)
class Split:
    feature: int
    threshold: float
    left: "TreeNode"
    right: "TreeNode"


TreeNode = Leaf | Split


def binary_entropy(p: float) -> float:
    """Entropy in bits of a Bernoulli(p) label distribution."""
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return float(-(p * np.log2(p) + (1.0 - p) * np.log2(1.0 - p)))


def label_entropy(y: np.ndarray, sample_weight: np.ndarray | None = None) -> float:
    """Weighted entropy (bits) of binary labels."""
    y = np.asarray(y, dtype=np.float64)
    w = np.ones_like(y) if sample_weight is None else np.asarray(sample_weight)
    total = w.sum()
    if total <= 0:
        raise DegenerateWeights("all sample weights are zero")
    return binary_entropy(float((w * y).sum() / total))


class PresortedMatrix:
    """A training matrix with every feature column argsorted once."""

    def __init__(self, X: np.ndarray):
        X = np.asarray(X, dtype=np.float64)
        if X.ndim != 2 or X.shape[0] == 0:
            raise EmptyData(f"need a non-empty 2-D matrix, got shape {X.shape}")
        self.X = X
        self.n, self.n_features = X.shape
        xt = np.ascontiguousarray(X.T)
        self.order = np.argsort(xt, axis=1, kind="stable")  # (F, n) row indices
        self.sorted_vals = np.take_along_axis(xt, self.order, axis=1)


@njit(cache=True, inline="always")
def _h(p):
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return -(p * np.log2(p) + (1.0 - p) * np.log2(1.0 - p))


@njit(cache=True)
def _scan_splits(order, vals, member, y, w, classify):
    """Best cut over all features among the member rows.

    For each feature, walks its presorted row order once, skipping rows not
    in the node, and evaluates every boundary between distinct consecutive
    values. Scanning features in index order and thresholds ascending with a
    strictly-greater comparison realizes the tie rules. Returns
    (feature, threshold, gain); feature is -1 when no cut strictly improves.
    """
    n_feat, n = order.shape
    W = 0.0
    Wy = 0.0
    Wy2 = 0.0
    for r in range(n):
        if member[r]:
            wr = w[r]
            W += wr
            Wy += wr * y[r]
            Wy2 += wr * y[r] * y[r]
    if classify:
        parent = _h(Wy / W)
    else:
        parent = Wy2 - Wy * Wy / W
    best_gain = 0.0
    best_feat = -1
    best_thr = 0.0
    for j in range(n_feat):
        cw = 0.0
        cwy = 0.0
        cwy2 = 0.0
        started = False
        prev = 0.0
        for i in range(n):
            row = order[j, i]
            if not member[row]:
                continue
            v = vals[j, i]
            if started and v != prev:
                rw = W - cw
                if classify:
                    hl = _h(cwy / cw) if cw > 0.0 else 0.0
                    hr = _h((Wy - cwy) / rw) if rw > 0.0 else 0.0
                    gain = parent - (cw * hl + rw * hr) / W
                else:
                    sse_l = cwy2 - cwy * cwy / cw if cw > 0.0 else 0.0
                    d = Wy - cwy
                    sse_r = (Wy2 - cwy2) - d * d / rw if rw > 0.0 else 0.0
                    gain = (parent - (sse_l + sse_r)) / W
                if gain > best_gain:
                    best_gain = gain
                    best_feat = j
                    best_thr = (prev + v) / 2.0
            wr = w[row]
            cw += wr
            cwy += wr * y[row]
            cwy2 += wr * y[row] * y[row]
            prev = v
            started = True
    return best_feat, best_thr, best_gain


def _grow(pm, member, y, w, classify, depth, max_depth, min_samples_split):
    node_y = y[member]
    node_w = w[member]
    total = node_w.sum()
    if total <= 0:
        raise DegenerateWeights("all sample weights are zero")
    mean = float((node_w * node_y).sum() / total)
    if (
        node_y.shape[0] < min_samples_split
        or (max_depth is not None and depth >= max_depth)
        or np.all(node_y == node_y[0])
    ):
        return Leaf(mean)
    j, threshold, _ = _scan_splits(pm.order, pm.sorted_vals, member, y, w, classify)
    if j < 0:
        return Leaf(mean)
    side = pm.X[:, j] <= threshold
    return Split(
        int(j),
        float(threshold),
        _grow(pm, member & side, y, w, classify, depth + 1, max_depth, min_samples_split),
        _grow(pm, member & ~side, y, w, classify, depth + 1, max_depth, min_samples_split),
    )


def train_cart_presorted(
    pm: PresortedMatrix,
    y: np.ndarray,
    task: str = "classify",
    max_depth: int | None = None,
    min_samples_split: int = 2,
    sample_weight: np.ndarray | None = None,
) -> TreeNode:
    """Grow one tree on an already presorted matrix (boosting fast path)."""
    y = np.ascontiguousarray(y, dtype=np.float64)
    if y.shape != (pm.n,):
        raise EmptyData(f"{y.shape[0]} targets for {pm.n} rows")
    if task == "classify" and not np.all(np.isin(y, (0.0, 1.0))):
        raise NonBinaryLabels("classification targets must be in {0, 1}")
    w = (
        np.ones(pm.n)
        if sample_weight is None
        else np.ascontiguousarray(sample_weight, dtype=np.float64)
    )
    member = np.ones(pm.n, dtype=np.bool_)
    return _grow(pm, member, y, w, task == "classify", 0, max_depth, min_samples_split)


def train_cart(
    X: np.ndarray,
    y: np.ndarray,
    task: str = "classify",
    max_depth: int | None = None,
    min_samples_split: int = 2,
    sample_weight: np.ndarray | None = None,
) -> TreeNode:
    """Grow one tree. Classification leaves hold the positive-class fraction."""
    return train_cart_presorted(
        PresortedMatrix(X), y, task, max_depth, min_samples_split, sample_weight
    )


def predict_tree(node: TreeNode, X: np.ndarray) -> np.ndarray:
    """Evaluate one tree over a (n, F) matrix."""
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    out = np.empty(X.shape[0])
    stack = [(node, np.arange(X.shape[0]))]
    while stack:
        cur, idx = stack.pop()
        if isinstance(cur, Leaf):
            out[idx] = cur.value
            continue
        go_left = X[idx, cur.feature] <= cur.threshold
        stack.append((cur.left, idx[go_left]))
        stack.append((cur.right, idx[~go_left]))
    return out


def tree_depth(node: TreeNode) -> int:
    if isinstance(node, Leaf):
        return 0
    return 1 + max(tree_depth(node.left), tree_depth(node.right))
