"""Independent reference computations used only by the tests.

None of these share code paths with the package: they use dense arrays,
explicit loops and textbook iterations.
"""

import itertools
import math

import numpy as np


def to_dense(tensor):
    dense = np.zeros(tensor.shape)
    for idx, w in zip(tensor.indices, tensor.weights):
        dense[tuple(idx)] += w
    return dense


def dense_contract(dense, mode, vectors):
    """Nested-loop contraction over every index tuple of a dense array."""
    out = np.zeros(dense.shape[mode])
    for idx in itertools.product(*(range(n) for n in dense.shape)):
        v = dense[idx]
        if v == 0.0:
            continue
        term = v
        for t, i in enumerate(idx):
            if t != mode:
                term *= vectors[t][i]
        out[idx[mode]] += term
    return out


def power_method_perron(matrix, tol=1e-15, max_iter=100000):
    """Dominant eigenpair of a nonnegative irreducible matrix.

    Iterates on ``M + I`` so that periodic matrices (e.g. 2x2 with zero
    diagonal) still converge.
    """
    n = matrix.shape[0]
    shifted = matrix + np.eye(n)
    v = np.ones(n) / n
    lam = 0.0
    for _ in range(max_iter):
        w = shifted @ v
        lam_new = w.sum() / v.sum()
        w /= w.sum()
        if np.abs(w - v).max() < tol and abs(lam_new - lam) < tol:
            v = w
            lam = lam_new
            break
        v, lam = w, lam_new
    return lam - 1.0, v


def kendall_pairs(x, y):
    """Tau-b by enumerating all pairs."""
    n = len(x)
    conc = disc = tx = ty = 0
    for i in range(n):
        for j in range(i + 1, n):
            dx = np.sign(x[i] - x[j])
            dy = np.sign(y[i] - y[j])
            if dx == 0 and dy == 0:
                continue
            if dx == 0:
                tx += 1
            elif dy == 0:
                ty += 1
            elif dx == dy:
                conc += 1
            else:
                disc += 1
    return (conc - disc) / math.sqrt((conc + disc + tx) * (conc + disc + ty))


def bisect(f, lo, hi, tol=1e-15):
    flo = f(lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
        if hi - lo < tol:
            break
    return 0.5 * (lo + hi)


def isim_bruteforce(l1, l2, k):
    total = 0.0
    for i in range(1, k + 1):
        total += len(set(l1[:i]) ^ set(l2[:i])) / (2 * i)
    return total / k
