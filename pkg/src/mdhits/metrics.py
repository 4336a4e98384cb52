"""Ranked lists and rank-comparison measures."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import stats

from .errors import MDHitsError, ShapeError
from .tensor import SparseTensor

__all__ = [
    "RankedList",
    "ranked",
    "top_k",
    "intersection_similarity",
    "intersection_agreement",
    "kendall_tau",
    "aggregate_degree",
]


@dataclass(frozen=True)
class RankedList:
    """Component ids in descending score order, ties by ascending id."""

    ids: np.ndarray
    scores: np.ndarray

    def __len__(self):
        return len(self.ids)

    def prefix(self, k: int) -> "RankedList":
        return RankedList(self.ids[:k], self.scores[:k])


def ranked(scores) -> RankedList:
    """Full ranking of ``scores`` (0-based ids)."""
    scores = np.asarray(scores, dtype=np.float64).reshape(-1)
    ids = np.arange(scores.size)
    order = np.lexsort((ids, -scores))
    return RankedList(ids[order], scores[order])


def top_k(scores, k: int) -> RankedList:
    """The ``k`` highest-scored ids; ties go to the smaller id."""
    scores = np.asarray(scores).reshape(-1)
    if not 1 <= k <= scores.size:
        raise ShapeError(f"K must lie in [1, {scores.size}], got {k}")
    return ranked(scores).prefix(k)


def _ids(lst):
    if isinstance(lst, RankedList):
        return list(lst.ids)
    return list(lst)


def intersection_similarity(list1, list2, k: int) -> float:
    """Top-``k`` intersection similarity of two ranked lists.

    Averages, over depths ``i = 1..k``, the size of the symmetric
    difference of the two length-``i`` prefixes divided by ``2 i``.
    0 means identical top-``k`` orderings, 1 means disjoint prefixes at
    every depth.
    """
    a, b = _ids(list1), _ids(list2)
    if not 1 <= k <= min(len(a), len(b)):
        raise ShapeError(f"K must lie in [1, {min(len(a), len(b))}], got {k}")
    seen_a, seen_b = set(), set()
    sym = 0  # running |prefix_a Δ prefix_b|
    total = 0.0
    for i in range(k):
        x, y = a[i], b[i]
        if x == y:
            seen_a.add(x)
            seen_b.add(y)
        else:
            sym += -1 if x in seen_b else 1
            seen_a.add(x)
            sym += -1 if y in seen_a else 1
            seen_b.add(y)
        total += sym / (2.0 * (i + 1))
    return total / k


def intersection_agreement(list1, list2, k: int) -> float:
    """``1 - intersection_similarity``: 1 for identical top-``k`` lists."""
    return 1.0 - intersection_similarity(list1, list2, k)


def kendall_tau(scores1, scores2) -> float:
    """Tie-corrected Kendall tau-b between two score vectors.

    Returns NaN when either vector is constant (tau-b is undefined).
    """
    x = np.asarray(scores1, dtype=np.float64).reshape(-1)
    y = np.asarray(scores2, dtype=np.float64).reshape(-1)
    if x.size != y.size:
        raise ShapeError(f"length mismatch: {x.size} vs {y.size}")
    if x.size < 2:
        raise MDHitsError("Kendall tau needs at least two components")
    if np.all(x == x[0]) or np.all(y == y[0]):
        return float("nan")
    return float(stats.kendalltau(x, y, variant="b").statistic)


def aggregate_degree(tensor: SparseTensor):
    """Weighted out- and in-degree of every node, summed over layers and time."""
    if not tensor.is_temporal_multilayer and tensor.order != 2:
        raise ShapeError(f"expected a temporal multilayer tensor, got shape {tensor.shape}")
    return tensor.marginals[0].copy(), tensor.marginals[1].copy()
