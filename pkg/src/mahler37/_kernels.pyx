# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: torus grid sampling and point counting.

The pure fallback with identical semantics lives in `_kernels_py.py`;
`kernels.py` picks whichever is importable.
"""

from libc.math cimport cos, log, sin, sqrt
from libc.stdlib cimport free, malloc

cdef double TWO_PI = 6.283185307179586476925286766559


def grid_logabs_sum(double[::1] cre, double[::1] cim, long[::1] iexp, long[::1] jexp, Py_ssize_t n):
    """Sum of log|P| over the n x n midpoint torus grid, and the minimum |P|."""
    cdef Py_ssize_t nterms = cre.shape[0]
    cdef Py_ssize_t t, a, b
    cdef double theta, ang, pr, pi, m2, min2, total
    # Precompute per-term circle powers along one axis (the grid is shared
    # between the two angles): pow_re[t*n + a] = Re(x_a^{e_t}).
    cdef double *xr = <double *> malloc(2 * nterms * n * sizeof(double))
    cdef double *yr = <double *> malloc(2 * nterms * n * sizeof(double))
    if xr == NULL or yr == NULL:
        if xr != NULL: free(xr)
        if yr != NULL: free(yr)
        raise MemoryError()
    try:
        for t in range(nterms):
            for a in range(n):
                theta = (a + 0.5) / n
                ang = TWO_PI * theta * iexp[t]
                xr[2 * (t * n + a)] = cos(ang)
                xr[2 * (t * n + a) + 1] = sin(ang)
                ang = TWO_PI * theta * jexp[t]
                yr[2 * (t * n + a)] = cos(ang)
                yr[2 * (t * n + a) + 1] = sin(ang)
        total = 0.0
        min2 = -1.0
        for a in range(n):
            for b in range(n):
                pr = 0.0
                pi = 0.0
                for t in range(nterms):
                    # (cre + i*cim) * x^i * y^j accumulated in components
                    pr += (cre[t] * (xr[2 * (t * n + a)] * yr[2 * (t * n + b)]
                                     - xr[2 * (t * n + a) + 1] * yr[2 * (t * n + b) + 1])
                           - cim[t] * (xr[2 * (t * n + a)] * yr[2 * (t * n + b) + 1]
                                       + xr[2 * (t * n + a) + 1] * yr[2 * (t * n + b)]))
                    pi += (cim[t] * (xr[2 * (t * n + a)] * yr[2 * (t * n + b)]
                                     - xr[2 * (t * n + a) + 1] * yr[2 * (t * n + b) + 1])
                           + cre[t] * (xr[2 * (t * n + a)] * yr[2 * (t * n + b) + 1]
                                       + xr[2 * (t * n + a) + 1] * yr[2 * (t * n + b)]))
                m2 = pr * pr + pi * pi
                if min2 < 0.0 or m2 < min2:
                    min2 = m2
                if m2 > 0.0:
                    total += 0.5 * log(m2)
                else:
                    return float("-inf"), 0.0
        return total, sqrt(min2)
    finally:
        free(xr)
        free(yr)


def count_affine(long p):
    """Number of affine solutions of y^2 + y = x^3 - x over Z/pZ."""
    cdef long *counts = <long *> malloc(p * sizeof(long))
    if counts == NULL:
        raise MemoryError()
    cdef long x, y, v, total
    try:
        for v in range(p):
            counts[v] = 0
        for y in range(p):
            counts[(y * y + y) % p] += 1
        total = 0
        for x in range(p):
            v = (((x * x) % p) * x - x) % p
            if v < 0:
                v += p
            total += counts[v]
        return total
    finally:
        free(counts)
