"""Benchmark the jitted kernels against their pure-numpy fallbacks.

Run:  python benchmarks/bench_kernels.py
The jitted path needs numba; with COHERENCE_KIT_NO_NUMBA=1 both columns run
the fallback, which is useful as a sanity check of the harness itself.
"""

import time

import numpy as np

from coherence_kit._accel import NUMBA_ENABLED
from coherence_kit.kernels import (
    _derivative_grid_jit,
    _derivative_grid_np,
    _injectivity_scan_jit,
    _injectivity_scan_np,
)


def timeit(fn, *args, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def bench_injectivity():
    print("exponent-injectivity scan (full sweep up to max_dim)")
    print(f"{'max_dim':>8} {'jit (ms)':>10} {'numpy (ms)':>11} {'speedup':>8}")
    _injectivity_scan_jit(4)  # compile outside the timing loop
    for max_dim in (50, 200, 500, 1000):
        def sweep(scan):
            for d in range(2, max_dim + 1):
                assert scan(d)[0] == -1
        t_jit = timeit(lambda: sweep(_injectivity_scan_jit), repeat=3)
        t_np = timeit(lambda: sweep(_injectivity_scan_np), repeat=3)
        print(f"{max_dim:>8} {t_jit * 1e3:>10.2f} {t_np * 1e3:>11.2f} {t_np / t_jit:>7.1f}x")


def bench_derivative_grid():
    print("\nderivative surface over an n x n phase grid")
    print(f"{'d':>4} {'n':>5} {'jit (ms)':>10} {'numpy (ms)':>11} {'speedup':>8}")
    rng = np.random.default_rng(0)
    for d, n in ((4, 256), (8, 256), (8, 512)):
        g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        delta = (g + g.conj().T) / 2
        delta -= np.trace(delta).real / d * np.eye(d)
        sym, anti = np.ascontiguousarray(delta.real), np.ascontiguousarray(delta.imag)
        phases = rng.uniform(0, 2 * np.pi, d)
        grid = np.arange(n) * 2 * np.pi / n
        args = (sym, anti, phases, 0, 1, grid, 0.5)
        _derivative_grid_jit(*args)  # compile outside the timing loop
        t_jit = timeit(_derivative_grid_jit, *args)
        t_np = timeit(_derivative_grid_np, *args)
        check = np.max(np.abs(_derivative_grid_jit(*args) - _derivative_grid_np(*args)))
        assert check < 1e-12, f"paths disagree by {check}"
        print(f"{d:>4} {n:>5} {t_jit * 1e3:>10.2f} {t_np * 1e3:>11.2f} {t_np / t_jit:>7.1f}x")


if __name__ == "__main__":
    print(f"numba active: {NUMBA_ENABLED}\n")
    bench_injectivity()
    bench_derivative_grid()
