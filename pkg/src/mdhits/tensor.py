"""Sparse nonnegative adjacency tensors in coordinate format.

A temporal multilayer network is stored as an order-``m`` tensor whose
modes are, for the canonical ``m = 5`` profile, (hub node, authority node,
broadcast layer, receive layer, time).  Monolayer graphs use ``m = 2``.

Modes are numbered from 0 throughout the Python API.  Indices are 0-based
internally; conversion from 1-based files happens in :mod:`mdhits.dataio`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import ShapeError, WeightError

__all__ = [
    "SparseTensor",
    "SupportSet",
    "ModeSupport",
    "from_edge_list",
    "mode_support",
    "contract",
    "contract_all",
]


def _check_shape(shape) -> tuple[int, ...]:
    shape = tuple(int(n) for n in shape)
    if len(shape) < 2:
        raise ShapeError(f"tensor order must be at least 2, got {len(shape)}")
    if any(n < 1 for n in shape):
        raise ShapeError(f"every mode size must be >= 1, got {shape}")
    return shape


@dataclass(frozen=True)
class ModeSupport:
    """Partition of the indices of one mode into active and inactive."""

    mode: int
    active: np.ndarray
    inactive: np.ndarray


@dataclass(frozen=True)
class SupportSet:
    """Active-index masks for every mode of a tensor.

    ``masks[s][i]`` is True iff index ``i`` of mode ``s`` has a nonzero
    marginal, i.e. it does not belong to the inactive set of that mode.
    """

    masks: tuple

    @property
    def order(self) -> int:
        return len(self.masks)

    def inactive(self, mode: int) -> np.ndarray:
        return np.flatnonzero(~self.masks[mode])

    def active(self, mode: int) -> np.ndarray:
        return np.flatnonzero(self.masks[mode])

    def conforms(self, x: Sequence[np.ndarray]) -> bool:
        """True iff every slice of ``x`` is positive exactly on the active set."""
        if len(x) != self.order:
            return False
        for mask, xs in zip(self.masks, x):
            xs = np.asarray(xs)
            if xs.shape != mask.shape:
                return False
            if np.any(xs[~mask] != 0) or np.any(~(xs[mask] > 0)):
                return False
        return True


class SparseTensor:
    """Immutable nonnegative sparse tensor in canonical coordinate form.

    Entries are sorted lexicographically by index tuple, duplicates are
    merged by summation and zero weights are never stored.  Use
    :func:`from_edge_list` or :meth:`from_arrays` to build one.

    Attributes
    ----------
    shape : tuple of int
        Mode sizes.
    indices : ndarray of int64, shape (nnz, m)
        0-based index tuples.
    weights : ndarray of float64, shape (nnz,)
        Strictly positive entry weights.
    """

    def __init__(self, shape, indices, weights, *, _canonical=False):
        shape = _check_shape(shape)
        indices = np.asarray(indices, dtype=np.int64).reshape(-1, len(shape))
        weights = np.asarray(weights, dtype=np.float64).reshape(-1)
        if indices.shape[0] != weights.shape[0]:
            raise ShapeError(
                f"{indices.shape[0]} index tuples but {weights.shape[0]} weights"
            )
        if not _canonical:
            indices, weights = _canonicalize(indices, weights)
        indices.setflags(write=False)
        weights.setflags(write=False)
        self.shape = shape
        self.indices = indices
        self.weights = weights

    @classmethod
    def from_arrays(cls, indices, weights, shape) -> "SparseTensor":
        """Validate and canonicalize 0-based index/weight arrays."""
        shape = _check_shape(shape)
        indices = np.asarray(indices, dtype=np.int64).reshape(-1, len(shape))
        weights = np.asarray(weights, dtype=np.float64).reshape(-1)
        if indices.shape[0] != weights.shape[0]:
            raise ShapeError(
                f"{indices.shape[0]} index tuples but {weights.shape[0]} weights"
            )
        bad = ~(np.isfinite(weights) & (weights > 0))
        if bad.any():
            pos = int(np.argmax(bad))
            raise WeightError(
                f"record {pos}: weight must be positive and finite, got {weights[pos]!r}"
            )
        if indices.size:
            oob = (indices < 0) | (indices >= np.asarray(shape))
            if oob.any():
                pos, mode = (int(v) for v in np.argwhere(oob)[0])
                raise ShapeError(
                    f"record {pos}: index {int(indices[pos, mode])} out of bounds "
                    f"for mode {mode} of size {shape[mode]}"
                )
        return cls(shape, indices, weights)

    @property
    def order(self) -> int:
        return len(self.shape)

    @property
    def nnz(self) -> int:
        return int(self.weights.shape[0])

    @property
    def is_zero(self) -> bool:
        return self.nnz == 0

    @property
    def is_temporal_multilayer(self) -> bool:
        s = self.shape
        return len(s) == 5 and s[0] == s[1] and s[2] == s[3]

    @cached_property
    def marginals(self) -> tuple:
        """Unfolding sums: for each mode, the total weight per index."""
        out = []
        for s, n in enumerate(self.shape):
            m = np.bincount(self.indices[:, s], weights=self.weights, minlength=n)
            m.setflags(write=False)
            out.append(m)
        return tuple(out)

    @cached_property
    def mode_index(self) -> tuple:
        """Per-mode grouping of entry positions.

        For mode ``s`` this is ``(order, starts)``: entry positions sorted
        stably by their mode-``s`` index, and CSR-style group offsets so
        that ``order[starts[i]:starts[i + 1]]`` are the entries with
        ``i_s == i`` in canonical order.
        """
        out = []
        for s, n in enumerate(self.shape):
            col = self.indices[:, s]
            order = np.argsort(col, kind="stable")
            starts = np.zeros(n + 1, dtype=np.int64)
            np.cumsum(np.bincount(col, minlength=n), out=starts[1:])
            out.append((order, starts))
        return tuple(out)

    def support(self) -> SupportSet:
        return SupportSet(tuple(m > 0 for m in self.marginals))

    def edge_records(self) -> list:
        """Entries as ``[(index_tuple, weight), ...]`` (0-based)."""
        return [
            (tuple(int(i) for i in idx), float(w))
            for idx, w in zip(self.indices, self.weights)
        ]

    def __eq__(self, other):
        if not isinstance(other, SparseTensor):
            return NotImplemented
        return (
            self.shape == other.shape
            and np.array_equal(self.indices, other.indices)
            and np.array_equal(self.weights, other.weights)
        )

    def __hash__(self):
        return hash((self.shape, self.indices.tobytes(), self.weights.tobytes()))

    def __repr__(self):
        return f"SparseTensor(shape={self.shape}, nnz={self.nnz})"


def _canonicalize(indices: np.ndarray, weights: np.ndarray):
    if indices.shape[0] == 0:
        return indices.copy(), weights.copy()
    # lexsort treats the last key as primary
    order = np.lexsort(indices.T[::-1])
    indices = indices[order]
    weights = weights[order]
    new_group = np.ones(indices.shape[0], dtype=bool)
    new_group[1:] = np.any(indices[1:] != indices[:-1], axis=1)
    if new_group.all():
        return np.ascontiguousarray(indices), weights
    starts = np.flatnonzero(new_group)
    return np.ascontiguousarray(indices[starts]), np.add.reduceat(weights, starts)


def from_edge_list(records: Iterable, shape) -> SparseTensor:
    """Build a canonical tensor from ``(index_tuple, weight)`` records.

    Indices are 0-based.  Duplicate tuples are summed.  An empty record
    list gives the zero tensor (``is_zero`` is True).

    Raises
    ------
    ShapeError
        If a record has the wrong arity or an index is out of bounds.
    WeightError
        If a weight is nonpositive, infinite or NaN.
    """
    shape = _check_shape(shape)
    m = len(shape)
    idx_rows, ws = [], []
    for pos, rec in enumerate(records):
        try:
            idx, w = rec
        except (TypeError, ValueError):
            raise ShapeError(f"record {pos}: expected (index_tuple, weight)") from None
        idx = tuple(idx)
        if len(idx) != m:
            raise ShapeError(f"record {pos}: expected {m} indices, got {len(idx)}")
        idx_rows.append(idx)
        ws.append(w)
    indices = np.array(idx_rows, dtype=np.int64).reshape(-1, m)
    weights = np.array(ws, dtype=np.float64)
    return SparseTensor.from_arrays(indices, weights, shape)


def mode_support(tensor: SparseTensor, mode: int) -> ModeSupport:
    """Active and inactive indices of one mode."""
    mode = _check_mode(tensor, mode)
    mask = tensor.marginals[mode] > 0
    return ModeSupport(mode, np.flatnonzero(mask), np.flatnonzero(~mask))


def _check_mode(tensor: SparseTensor, mode) -> int:
    mode = int(mode)
    if not 0 <= mode < tensor.order:
        raise ShapeError(f"mode {mode} out of range for order-{tensor.order} tensor")
    return mode


def _gather_vectors(tensor: SparseTensor, mode: int, vectors) -> list:
    m = tensor.order
    vectors = list(vectors)
    if len(vectors) == m - 1:
        vectors.insert(mode, None)
    elif len(vectors) != m:
        raise ShapeError(
            f"expected {m - 1} (or {m}) vectors for mode {mode}, got {len(vectors)}"
        )
    out = []
    for t, v in enumerate(vectors):
        if t == mode:
            out.append(None)
            continue
        v = np.asarray(v, dtype=np.float64)
        if v.shape != (tensor.shape[t],):
            raise ShapeError(
                f"vector for mode {t} has shape {v.shape}, expected ({tensor.shape[t]},)"
            )
        out.append(v)
    return out


def contract(tensor: SparseTensor, mode: int, vectors, *, compensated=False) -> np.ndarray:
    """Contract ``tensor`` with one vector on every mode except ``mode``.

    ``out[i] = sum over entries with i_mode == i of w * prod_{t != mode} x_t[i_t]``.

    Parameters
    ----------
    tensor : SparseTensor
    mode : int
        Free mode (0-based).
    vectors : sequence of ndarray
        Either the ``m - 1`` vectors for the other modes, in mode order, or
        a full length-``m`` tuple whose entry at ``mode`` is ignored.
    compensated : bool
        Use exactly rounded per-index sums (slow; for accuracy checks).
    """
    mode = _check_mode(tensor, mode)
    xs = _gather_vectors(tensor, mode, vectors)
    prod = tensor.weights.copy()
    for t, x in enumerate(xs):
        if t != mode:
            prod *= x[tensor.indices[:, t]]
    n = tensor.shape[mode]
    if compensated:
        order, starts = tensor.mode_index[mode]
        grouped = prod[order]
        return np.array(
            [math.fsum(grouped[starts[i]:starts[i + 1]]) for i in range(n)]
        )
    return np.bincount(tensor.indices[:, mode], weights=prod, minlength=n)


def contract_all(tensor: SparseTensor, x, *, executor=None) -> list:
    """All ``m`` one-mode contractions of ``tensor`` against the tuple ``x``.

    Equivalent to ``[contract(tensor, s, x) for s in range(m)]`` but shares
    the gathered factors through prefix/suffix products, so one call costs
    O(m * nnz).  If ``executor`` (a ``concurrent.futures.Executor``) is
    given, the per-mode reductions are submitted to it; the result does not
    depend on the executor.
    """
    m = tensor.order
    if len(x) != m:
        raise ShapeError(f"expected {m} vectors, got {len(x)}")
    gathered = []
    for t in range(m):
        v = np.asarray(x[t], dtype=np.float64)
        if v.shape != (tensor.shape[t],):
            raise ShapeError(
                f"vector for mode {t} has shape {v.shape}, expected ({tensor.shape[t]},)"
            )
        gathered.append(v[tensor.indices[:, t]])
    # prefix[t] = w * g_0 * ... * g_{t-1}; suffix[t] = g_{t+1} * ... * g_{m-1}
    prefix = [tensor.weights]
    for t in range(m - 1):
        prefix.append(prefix[-1] * gathered[t])
    suffix = [None] * m
    suffix[m - 1] = None
    for t in range(m - 2, -1, -1):
        nxt = gathered[t + 1]
        suffix[t] = nxt if suffix[t + 1] is None else nxt * suffix[t + 1]

    def one(s):
        prod = prefix[s] if suffix[s] is None else prefix[s] * suffix[s]
        return np.bincount(tensor.indices[:, s], weights=prod, minlength=tensor.shape[s])

    if executor is None:
        return [one(s) for s in range(m)]
    return list(executor.map(one, range(m)))
