"""NumPy fallback for the compiled kernels.

Same call signatures and semantics as the Cython module `_kernels`; which one
a process uses is decided once at import in `kernels.py`.
"""

from __future__ import annotations

import numpy as np


def grid_logabs_sum(cre, cim, iexp, jexp, n):
    """Sum of log|P| over the n x n midpoint torus grid, and the minimum |P|.

    P(x, y) = sum of (cre + i*cim) * x^iexp * y^jexp, sampled at
    x = exp(2*pi*i*(a+1/2)/n), y = exp(2*pi*i*(b+1/2)/n).
    """
    cre = np.asarray(cre, dtype=np.float64)
    cim = np.asarray(cim, dtype=np.float64)
    iexp = np.asarray(iexp, dtype=np.int64)
    jexp = np.asarray(jexp, dtype=np.int64)
    theta = (np.arange(n) + 0.5) / n
    x = np.exp(2j * np.pi * theta)
    y = x  # same grid for both angles
    vals = np.zeros((n, n), dtype=np.complex128)
    for cr, ci, i, j in zip(cre, cim, iexp, jexp):
        vals += (cr + 1j * ci) * np.outer(x ** int(i), y ** int(j))
    mag = np.abs(vals)
    min_abs = float(mag.min())
    if min_abs <= 0.0:
        return -np.inf, min_abs
    return float(np.log(mag).sum()), min_abs


def count_affine(p):
    """Number of affine solutions of y^2 + y = x^3 - x over Z/pZ."""
    y = np.arange(p, dtype=np.int64)
    counts = np.bincount((y * y + y) % p, minlength=p)
    x = np.arange(p, dtype=np.int64)
    rhs = (x * x % p) * x % p
    rhs = (rhs - x) % p
    return int(counts[rhs].sum())
