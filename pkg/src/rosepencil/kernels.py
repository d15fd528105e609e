"""Numerically hot kernels with optional numba acceleration.

Two kernels are hot enough to justify jitting: the Aberth-Ehrlich root
iteration used for pencil eigenvalues, and cyclic Jacobi sweeps for the
symmetric eigenvalues needed by the Cauchy-Maslov index grid.

Both are written as plain python/numpy loop nests and wrapped with
``numba.njit`` when available.  Setting the environment variable
``ROSEPENCIL_NO_NUMBA=1`` (before import) selects the un-jitted path;
``benchmarks/bench_kernels.py`` compares the two.
"""

import math
import os

import numpy as np

NUMBA_DISABLED = os.environ.get("ROSEPENCIL_NO_NUMBA", "0") == "1"


def _aberth_roots(coeffs, tol, max_iter):
    # coeffs: complex128, ascending powers, coeffs[-1] != 0
    deg = coeffs.shape[0] - 1
    x = np.empty(deg, dtype=np.complex128)
    if deg == 0:
        return x
    lead = coeffs[deg]
    max_ratio = 0.0
    for k in range(deg):
        r = abs(coeffs[k]) / abs(lead)
        if r > max_ratio:
            max_ratio = r
    radius = 1.0 + max_ratio
    for k in range(deg):
        ang = 2.0 * math.pi * k / deg + 0.4  # offset breaks symmetry traps
        x[k] = radius * (math.cos(ang) + 1j * math.sin(ang))

    for _ in range(max_iter):
        converged = True
        for k in range(deg):
            xk = x[k]
            pv = coeffs[deg] + 0j
            dpv = 0j
            for j in range(deg - 1, -1, -1):
                dpv = dpv * xk + pv
                pv = pv * xk + coeffs[j]
            s = 0j
            for j in range(deg):
                if j != k:
                    s += 1.0 / (xk - x[j])
            denom = dpv - pv * s
            if denom == 0:
                continue
            delta = pv / denom
            if abs(delta) > tol * (1.0 + abs(xk)):
                converged = False
            x[k] = xk - delta
        if converged:
            break
    return x


def _jacobi_eigvals(A, tol, max_sweeps):
    # A: real symmetric, destroyed; returns eigenvalues (unsorted)
    n = A.shape[0]
    for _ in range(max_sweeps):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += A[p, q] * A[p, q]
        if off <= tol * tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) <= tol / (n * n + 1.0):
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp = A[k, p]
                    akq = A[k, q]
                    A[k, p] = c * akp - s * akq
                    A[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = A[p, k]
                    aqk = A[q, k]
                    A[p, k] = c * apk - s * aqk
                    A[q, k] = s * apk + c * aqk
    return np.diag(A).copy()


aberth_roots_py = _aberth_roots
jacobi_eigvals_py = _jacobi_eigvals

try:
    from numba import njit

    aberth_roots_jit = njit(cache=True)(_aberth_roots)
    jacobi_eigvals_jit = njit(cache=True)(_jacobi_eigvals)
    HAS_NUMBA = True
except ImportError:  # pragma: no cover
    aberth_roots_jit = None
    jacobi_eigvals_jit = None
    HAS_NUMBA = False

if NUMBA_DISABLED or not HAS_NUMBA:
    aberth_roots = aberth_roots_py
    jacobi_eigvals = jacobi_eigvals_py
else:
    aberth_roots = aberth_roots_jit
    jacobi_eigvals = jacobi_eigvals_jit
