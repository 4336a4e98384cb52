"""The multi-homogeneous map and the geometry it contracts.

A centrality tuple is a plain list of 1-d numpy arrays, one per tensor
mode.  For the canonical order-5 tensor the slices are, in order, hub,
authority, broadcast, receive and time scores.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import InactiveModeError, NonconformingError, ShapeError
from .tensor import SparseTensor, SupportSet, contract_all

__all__ = [
    "SLICE_NAMES",
    "apply_map",
    "normalize",
    "beta_norm",
    "hilbert_distance",
    "full_contraction",
    "singular_value",
]

SLICE_NAMES = ("hub", "authority", "broadcast", "receive", "time")


def _alpha_of(config_or_alpha) -> np.ndarray:
    alpha = getattr(config_or_alpha, "alpha", config_or_alpha)
    return np.asarray(alpha, dtype=np.float64)


def apply_map(tensor: SparseTensor, alpha, x: Sequence[np.ndarray], *, executor=None) -> list:
    """Evaluate ``F_alpha(x)``: slice ``s`` is ``contract(tensor, s, x) ** alpha[s]``.

    ``alpha`` may be an array or an :class:`~mdhits.spectral.ExponentConfig`.
    The result is not normalized.  Exact zeros stay exact zeros.
    """
    alpha = _alpha_of(alpha)
    if alpha.size != tensor.order:
        raise ShapeError(f"{alpha.size} exponents for an order-{tensor.order} tensor")
    raw = contract_all(tensor, x, executor=executor)
    return [np.power(r, a) for r, a in zip(raw, alpha)]


def normalize(y: Sequence[np.ndarray]) -> list:
    """Scale each slice to unit max-norm.

    Raises
    ------
    InactiveModeError
        If a slice has no positive entry.
    """
    out = []
    for s, v in enumerate(y):
        v = np.asarray(v, dtype=np.float64)
        top = v.max(initial=0.0)
        if not top > 0:
            raise InactiveModeError(s)
        out.append(v / top)
    return out


def beta_norm(x: Sequence[np.ndarray], beta) -> float:
    """``sum_s beta_s * max_i |x_s[i]|``."""
    return float(
        sum(b * np.abs(np.asarray(v)).max(initial=0.0) for b, v in zip(beta, x))
    )


def hilbert_distance(x, y, beta, support: SupportSet) -> float:
    """Weighted projective (Hilbert-type) distance between two tuples.

    Per slice, the log of ``max(x/y) * max(y/x)`` over active indices,
    weighted by ``beta``.  Both tuples must vanish exactly on the inactive
    indices of ``support`` and be positive elsewhere.
    """
    if not (support.conforms(x) and support.conforms(y)):
        raise NonconformingError("hilbert distance needs tuples conforming to the support")
    total = 0.0
    for s, (b, xs, ys) in enumerate(zip(beta, x, y)):
        mask = support.masks[s]
        if not mask.any():
            continue
        lx, ly = np.log(np.asarray(xs)[mask]), np.log(np.asarray(ys)[mask])
        d = lx - ly
        total += b * (d.max() - d.min())
    return float(total)


def full_contraction(tensor: SparseTensor, x: Sequence[np.ndarray]) -> float:
    """``sum_entries w * prod_t x_t[i_t]`` (the multilinear form at ``x``)."""
    prod = tensor.weights.copy()
    for t in range(tensor.order):
        prod *= np.asarray(x[t])[tensor.indices[:, t]]
    return float(prod.sum())


def singular_value(tensor: SparseTensor, alpha, c: Sequence[np.ndarray]):
    """Singular value of ``tensor`` attached to the eigenvector ``c``.

    The eigen-equations hold up to a per-slice rescaling of ``c``.  With
    slices rescaled to unit ``l^{p_s}`` norm, ``p_s = (1 + alpha_s) / alpha_s``,
    every rescaled eigenvalue ``mu_s`` satisfies ``mu_s ** (1 / alpha_s) == sigma``
    where ``sigma = T(c) / prod_s ||c_s||_{p_s}`` and ``T`` is the full
    contraction.

    Returns
    -------
    sigma : float
    scaled_lambda : ndarray
        The eigenvalues ``mu`` of the ``l^p``-normalized tuple.
    """
    alpha = _alpha_of(alpha)
    p = (1.0 + alpha) / alpha
    nu = np.array([np.sum(np.asarray(v) ** ps) ** (1.0 / ps) for v, ps in zip(c, p)])
    sigma = full_contraction(tensor, c) / np.prod(nu)
    # mu_s = lambda_s * nu_s * prod_{t != s} nu_t ** -alpha_s, with
    # lambda_s * c_s = f_s(c) ** alpha_s evaluated at the max-normalized c
    raw = apply_map(tensor, alpha, c)
    lam = np.array([r.max(initial=0.0) for r in raw])
    others = np.prod(nu) / nu
    mu = lam * nu * others ** (-alpha)
    return float(sigma), mu
