"""Globally convergent power iteration for MD-HITS centrality.

Each step evaluates all slices of ``F_alpha`` at the current tuple and
rescales every slice to unit max-norm.  For ``rho(M_alpha) < 1`` this map
is a strict contraction in a weighted Hilbert metric, so the iteration
converges to the unique fixed point from any positive start, with the
relative step bounded by ``2 rho**k ||log(c1 / c0)||_beta``.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from contextlib import nullcontext
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .errors import (
    InfeasibleAlphaError,
    MDHitsError,
    NonconformingError,
    ShapeError,
    ZeroTensorError,
)
from .mapcore import SLICE_NAMES, apply_map, beta_norm, normalize, singular_value
from .spectral import ExponentConfig, make_config
from .tensor import SparseTensor

log = logging.getLogger(__name__)

__all__ = [
    "SolverConfig",
    "TraceRow",
    "Solution",
    "solve",
    "residual",
    "monolayer_hits",
    "classical_hits",
    "MonolayerResult",
    "ClassicalHitsResult",
]


@dataclass(frozen=True)
class SolverConfig:
    """Iteration controls.

    ``init`` is ``"ones"``, ``"random"`` (uniform on (0, 1], drawn from
    ``seed``) or an explicit sequence of positive vectors, one per mode.
    ``threads`` > 1 evaluates the slices of each step on a thread pool.
    """

    tol: float = 1e-6
    max_iter: int = 1000
    init: object = "ones"
    seed: int | None = None
    record_trace: bool = True
    threads: int = 1

    def __post_init__(self):
        if not self.tol > 0:
            raise MDHitsError(f"tolerance must be positive, got {self.tol}")
        if self.max_iter < 1:
            raise MDHitsError(f"max_iter must be >= 1, got {self.max_iter}")
        if self.threads < 1:
            raise MDHitsError(f"threads must be >= 1, got {self.threads}")


class TraceRow(NamedTuple):
    k: int
    step: float
    bound: float


@dataclass
class Solution:
    """Converged (or best-effort) centrality tuple and its diagnostics.

    ``lambda_`` holds the eigenvalues of the max-normalized tuple ``c``.
    ``sigma`` is the singular value of the tensor; ``scaled_lambda`` are
    the eigenvalues after rescaling ``c`` to unit ``l^p`` slices, for which
    ``scaled_lambda[s] ** (1 / alpha[s]) == sigma``.
    """

    c: list
    lambda_: np.ndarray
    sigma: float
    scaled_lambda: np.ndarray
    iterations: int
    converged: bool
    config: ExponentConfig
    residual: float
    trace: list = field(default_factory=list)

    @property
    def hub(self):
        return self.c[0]

    @property
    def authority(self):
        return self.c[1]

    @property
    def broadcast(self):
        return self.c[2]

    @property
    def receive(self):
        return self.c[3]

    @property
    def time(self):
        return self.c[4]

    def named(self) -> dict:
        """Slices keyed by role name (hub, authority, ...)."""
        return dict(zip(SLICE_NAMES, self.c))


def _initial_tuple(tensor: SparseTensor, cfg: SolverConfig) -> list:
    if isinstance(cfg.init, str):
        if cfg.init == "ones":
            return [np.ones(n) for n in tensor.shape]
        if cfg.init == "random":
            rng = np.random.default_rng(cfg.seed)
            return [1.0 - rng.random(n) for n in tensor.shape]
        raise MDHitsError(f"unknown init {cfg.init!r}; use 'ones', 'random' or vectors")
    x0 = [np.asarray(v, dtype=np.float64) for v in cfg.init]
    if len(x0) != tensor.order:
        raise ShapeError(f"initial tuple has {len(x0)} slices, tensor order is {tensor.order}")
    for s, v in enumerate(x0):
        if v.shape != (tensor.shape[s],):
            raise ShapeError(f"initial slice {s} has shape {v.shape}")
        if not np.all(v > 0) or not np.all(np.isfinite(v)):
            raise MDHitsError(f"initial slice {s} must be strictly positive")
    return x0


def _log_ratio_norm(new, old, beta) -> float:
    # ||log(new / old)||_beta with log(0) := 0
    total = 0.0
    for b, a, o in zip(beta, new, old):
        pos = a > 0
        if pos.any():
            total += b * np.abs(np.log(a[pos] / o[pos])).max()
    return float(total)


def _coerce_config(tensor, config) -> ExponentConfig:
    if not isinstance(config, ExponentConfig):
        config = make_config(config)
    if config.order != tensor.order:
        raise ShapeError(f"{config.order} exponents for an order-{tensor.order} tensor")
    return config


def solve(tensor: SparseTensor, config, solver_config: SolverConfig | None = None) -> Solution:
    """Compute the MD-HITS centrality tuple of ``tensor``.

    Parameters
    ----------
    tensor : SparseTensor
        Nonzero adjacency tensor of any order >= 2.
    config : ExponentConfig or array_like
        Exponents ``alpha``; must satisfy ``rho(M_alpha) < 1``.
    solver_config : SolverConfig, optional

    Raises
    ------
    ZeroTensorError
        If ``tensor`` has no entries.
    InfeasibleAlphaError
        If ``rho(M_alpha) >= 1``.
    """
    cfg = solver_config or SolverConfig()
    config = _coerce_config(tensor, config)
    if tensor.is_zero:
        raise ZeroTensorError("the zero tensor has no MD-HITS centrality")
    if not config.feasible:
        raise InfeasibleAlphaError(
            f"rho(M_alpha) = {config.rho:.17g} >= 1; uniqueness is not guaranteed",
            rho=config.rho,
        )
    beta, rho = config.beta, config.rho
    c = _initial_tuple(tensor, cfg)
    trace = []
    log_ratio = None
    converged = False
    pool = ThreadPoolExecutor(cfg.threads) if cfg.threads > 1 else nullcontext()
    with pool as executor:
        for k in range(cfg.max_iter):
            raw = apply_map(tensor, config, c, executor=executor)
            new = normalize(raw)
            if log_ratio is None:
                log_ratio = _log_ratio_norm(new, c, beta)
            diff = [a - b for a, b in zip(new, c)]
            step = beta_norm(diff, beta) / beta_norm(new, beta)
            if cfg.record_trace:
                trace.append(TraceRow(k, step, 2.0 * rho**k * log_ratio))
            c = new
            if step < cfg.tol:
                converged = True
                break
    iterations = k + 1
    if not converged:
        log.warning("no convergence after %d iterations (last step %.3e)", iterations, step)
    lam_fix, res = residual(tensor, config, c)
    sigma, scaled = singular_value(tensor, config.alpha, c)
    return Solution(
        c=c,
        lambda_=lam_fix,
        sigma=sigma,
        scaled_lambda=scaled,
        iterations=iterations,
        converged=converged,
        config=config,
        residual=res,
        trace=trace,
    )


def residual(tensor: SparseTensor, config, c: Sequence[np.ndarray]):
    """Eigenvalues of ``c`` and the beta-norm of ``F_alpha(c) - lambda ⊗ c``.

    ``c`` must be max-normalized and vanish exactly on the inactive indices.
    """
    config = _coerce_config(tensor, config)
    support = tensor.support()
    if not support.conforms(c):
        raise NonconformingError("tuple zero pattern does not match the tensor support")
    fc = apply_map(tensor, config, c)
    lam = np.array([v.max(initial=0.0) for v in fc])
    diff = [np.where(mask, v - l * np.asarray(x), 0.0)
            for mask, v, l, x in zip(support.masks, fc, lam, c)]
    return lam, beta_norm(diff, config.beta)


class MonolayerResult(NamedTuple):
    hub: np.ndarray
    authority: np.ndarray
    lambda_hub: float
    lambda_authority: float


def _as_matrix_tensor(adjacency) -> SparseTensor:
    if isinstance(adjacency, SparseTensor):
        if adjacency.order != 2:
            raise ShapeError(f"expected an order-2 adjacency, got order {adjacency.order}")
        return adjacency
    a = np.asarray(adjacency, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {a.shape}")
    idx = np.argwhere(a != 0)
    return SparseTensor.from_arrays(idx, a[a != 0], a.shape)


def monolayer_hits(adjacency, alpha1=1 / 3, alpha2=1 / 3, solver_config=None) -> MonolayerResult:
    """Nonlinear HITS: ``(A a)**alpha1 = l1 h`` and ``(A^T h)**alpha2 = l2 a``.

    ``adjacency`` is an order-2 :class:`SparseTensor` or a dense square
    matrix.  Requires ``alpha1 * alpha2 < 1``; for the linear case use
    :func:`classical_hits`.
    """
    tensor = _as_matrix_tensor(adjacency)
    if alpha1 * alpha2 >= 1.0:
        raise InfeasibleAlphaError(
            "alpha1 * alpha2 >= 1 gives linear HITS without a uniqueness guarantee; "
            "use classical_hits instead",
            rho=float(np.sqrt(alpha1 * alpha2)),
        )
    sol = solve(tensor, make_config([alpha1, alpha2]), solver_config)
    return MonolayerResult(sol.c[0], sol.c[1], float(sol.lambda_[0]), float(sol.lambda_[1]))


class ClassicalHitsResult(NamedTuple):
    hub: np.ndarray
    authority: np.ndarray
    eigenvalue: float
    iterations: int
    converged: bool


def classical_hits(adjacency, solver_config=None, hub_start=None) -> ClassicalHitsResult:
    """Linear HITS by alternating power iteration with max-norm scaling.

    Alternates ``a <- A^T h``, ``h <- A a``.  On graphs that are not
    connected enough the limit depends on ``hub_start`` (default all
    ones, or random when the solver config asks for it).  ``eigenvalue``
    approximates the dominant eigenvalue of ``A A^T``.
    """
    cfg = solver_config or SolverConfig()
    tensor = _as_matrix_tensor(adjacency)
    if tensor.is_zero:
        raise ZeroTensorError("classical HITS needs a nonzero adjacency")
    n = tensor.shape[0]
    src, dst = tensor.indices[:, 0], tensor.indices[:, 1]
    w = tensor.weights
    if hub_start is not None:
        h = np.asarray(hub_start, dtype=np.float64).copy()
    elif cfg.init == "random":
        h = 1.0 - np.random.default_rng(cfg.seed).random(n)
    else:
        h = np.ones(n)
    a = np.zeros(tensor.shape[1])
    eig = 0.0
    converged = False
    for k in range(cfg.max_iter):
        a_raw = np.bincount(dst, weights=w * h[src], minlength=tensor.shape[1])
        la = a_raw.max()
        if not la > 0:
            raise MDHitsError("hub start vector annihilated by A^T")
        a_new = a_raw / la
        h_raw = np.bincount(src, weights=w * a_new[dst], minlength=n)
        lh = h_raw.max()
        h_new = h_raw / lh
        step = max(np.abs(h_new - h).max(), np.abs(a_new - a).max())
        h, a, eig = h_new, a_new, la * lh
        if step < cfg.tol:
            converged = True
            break
    if not converged:
        log.warning("classical HITS did not converge in %d iterations", k + 1)
    return ClassicalHitsResult(h, a, float(eig), k + 1, converged)
