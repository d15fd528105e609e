"""Timing comparison of the jitted and pure-python kernel paths.

Run directly:  python benchmarks/bench_kernels.py
The pure path is also what ROSEPENCIL_NO_NUMBA=1 selects at import time.
"""

import time

import numpy as np

from rosepencil.kernels import (HAS_NUMBA, aberth_roots_jit, aberth_roots_py,
                                jacobi_eigvals_jit, jacobi_eigvals_py)


def _time(fn, *args, repeat=5):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_aberth(deg=60, seed=2):
    rng = np.random.default_rng(seed)
    coeffs = rng.normal(size=deg + 1) + 1j * rng.normal(size=deg + 1)
    coeffs[-1] += 2.0
    tp, rp = _time(aberth_roots_py, coeffs.copy(), 1e-13, 200)
    print(f"aberth deg={deg}:  python {tp * 1e3:8.2f} ms", end="")
    if HAS_NUMBA:
        aberth_roots_jit(coeffs.copy(), 1e-13, 200)  # compile
        tj, rj = _time(aberth_roots_jit, coeffs.copy(), 1e-13, 200)
        agree = np.max(np.abs(np.sort_complex(rp) - np.sort_complex(rj)))
        print(f"   numba {tj * 1e3:8.2f} ms   speedup {tp / tj:6.1f}x"
              f"   max root diff {agree:.1e}")
    else:
        print("   (numba unavailable)")


def bench_jacobi(n=60, seed=3):
    rng = np.random.default_rng(seed)
    A = rng.normal(size=(n, n))
    A = A + A.T
    tp, rp = _time(lambda: jacobi_eigvals_py(A.copy(), 1e-12, 100))
    print(f"jacobi n={n}:     python {tp * 1e3:8.2f} ms", end="")
    if HAS_NUMBA:
        jacobi_eigvals_jit(A.copy(), 1e-12, 100)  # compile
        tj, rj = _time(lambda: jacobi_eigvals_jit(A.copy(), 1e-12, 100))
        agree = np.max(np.abs(np.sort(rp) - np.sort(rj)))
        print(f"   numba {tj * 1e3:8.2f} ms   speedup {tp / tj:6.1f}x"
              f"   max eig diff {agree:.1e}")
    else:
        print("   (numba unavailable)")


if __name__ == "__main__":
    bench_aberth()
    bench_jacobi()
