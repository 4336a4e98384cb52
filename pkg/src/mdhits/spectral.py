"""The exponent matrix M_alpha and its Perron pair.

``M_alpha`` has zero diagonal and ``alpha_t`` in every off-diagonal entry
of column ``t``, i.e. ``M_alpha = 1 alpha^T - diag(alpha)``.  Because it is
a rank-one update of a diagonal matrix, its Perron root is the unique
positive solution of the scalar equation

    g(rho) = sum_s alpha_s / (rho + alpha_s) - 1 = 0

and the Perron vector is ``beta_s ∝ 1 / (rho + alpha_s)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import MDHitsError

__all__ = [
    "ExponentConfig",
    "Feasibility",
    "FeasibilityReport",
    "build_weight_matrix",
    "perron",
    "check_feasible",
    "make_config",
]

BOUNDARY_TOL = 1e-12


def _as_alpha(alpha) -> np.ndarray:
    alpha = np.asarray(alpha, dtype=np.float64).reshape(-1)
    if alpha.size < 2:
        raise MDHitsError(f"need at least two exponents, got {alpha.size}")
    if not np.all(np.isfinite(alpha)) or np.any(alpha <= 0):
        raise MDHitsError(f"exponents must be positive and finite, got {alpha.tolist()}")
    return alpha


def build_weight_matrix(alpha) -> np.ndarray:
    """Dense ``M_alpha``: zero diagonal, ``alpha_t`` in column ``t`` elsewhere."""
    alpha = _as_alpha(alpha)
    return np.ones((alpha.size, 1)) * alpha[None, :] - np.diag(alpha)


def _secular(rho, alpha):
    d = rho + alpha
    return np.sum(alpha / d) - 1.0, -np.sum(alpha / d**2)


def perron(alpha, *, tol=1e-14, max_iter=200):
    """Perron root and normalized Perron vector of ``M_alpha``.

    Solves the secular equation with Newton steps safeguarded by a
    bisection bracket ``(0, sum(alpha)]``.

    Returns
    -------
    rho : float
    beta : ndarray
        Positive, sums to 1.
    """
    alpha = _as_alpha(alpha)
    lo, hi = 0.0, float(alpha.sum())
    # Newton from the right end converges monotonically for this convex g
    rho = hi
    for _ in range(max_iter):
        g, dg = _secular(rho, alpha)
        if abs(g) <= tol:
            break
        if g > 0:
            lo = rho
        else:
            hi = rho
        step = rho - g / dg
        rho = step if lo < step < hi else 0.5 * (lo + hi)
        if hi - lo <= 4 * np.finfo(float).eps * hi:
            break
    beta = 1.0 / (rho + alpha)
    beta /= beta.sum()
    return float(rho), beta


class Feasibility(enum.Enum):
    FEASIBLE = "feasible"
    BOUNDARY = "boundary"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class FeasibilityReport:
    verdict: Feasibility
    rho: float
    gershgorin_ok: bool
    """Whether ``sum(alpha) - min(alpha) <= 1`` (sufficient, not necessary)."""


def check_feasible(alpha) -> FeasibilityReport:
    """Classify ``alpha`` by the spectral radius of ``M_alpha``.

    The verdict is decided by the computed ``rho``; the Gershgorin row-sum
    condition is reported alongside as a cheap sufficient hint.
    """
    alpha = _as_alpha(alpha)
    rho, _ = perron(alpha)
    if abs(rho - 1.0) <= BOUNDARY_TOL:
        verdict = Feasibility.BOUNDARY
    elif rho < 1.0:
        verdict = Feasibility.FEASIBLE
    else:
        verdict = Feasibility.INFEASIBLE
    gershgorin_ok = bool(alpha.sum() - alpha.min() <= 1.0)
    return FeasibilityReport(verdict, rho, gershgorin_ok)


@dataclass(frozen=True)
class ExponentConfig:
    """Exponents together with the Perron pair of their weight matrix."""

    alpha: np.ndarray
    rho: float
    beta: np.ndarray

    @property
    def order(self) -> int:
        return int(self.alpha.size)

    @property
    def feasible(self) -> bool:
        return self.rho < 1.0 and abs(self.rho - 1.0) > BOUNDARY_TOL


def make_config(alpha) -> ExponentConfig:
    """Validate ``alpha`` (each in (0, 1]) and attach ``rho`` and ``beta``."""
    alpha = _as_alpha(alpha)
    if np.any(alpha > 1):
        raise MDHitsError(f"exponents must lie in (0, 1], got {alpha.tolist()}")
    rho, beta = perron(alpha)
    alpha = alpha.copy()
    alpha.setflags(write=False)
    beta.setflags(write=False)
    return ExponentConfig(alpha, rho, beta)
