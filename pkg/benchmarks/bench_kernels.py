"""Benchmark: compiled grid kernels vs the numpy fallback.

Two workloads modeled on production shapes:
  * factorized: the radial-coupled sum of a chi-regularized 2-variable
    pairing (angular sums factor out);
  * coupled: a fully angular-coupled weight, forcing the complete
    4-dimensional tensor loop.

Run:  python3 benchmarks/bench_kernels.py
"""

import time

import numpy as np

from pmcurrents.oracle import _kernels_fallback as fallback

try:
    from pmcurrents.oracle import _gridkernels as compiled
except ImportError:
    compiled = None


def workload_factorized(nr=240, nth=24, T=12, seed=3):
    rng = np.random.default_rng(seed)
    r1 = np.linspace(1e-3, 1.6, nr)
    r2 = np.linspace(1e-3, 1.4, nr)
    wr1 = rng.random(nr)
    wr2 = rng.random(nr)
    th = 2 * np.pi * np.arange(nth) / nth
    fac = rng.random((nr, nr))
    coeffs = (rng.random(T) - 0.5 + 1j * rng.random(T)).astype(complex)
    P1 = rng.integers(-2, 8, T).astype(float)
    P2 = rng.integers(-2, 8, T).astype(float)
    Q1 = np.zeros(T)  # resonant modes so the value is O(1)
    Q2 = np.zeros(T)
    return (r1, wr1, th, 2 * np.pi / nth, r2, wr2, th, 2 * np.pi / nth,
            fac, None, coeffs, P1, Q1, P2, Q2)


def workload_coupled(nr=48, nth=20, T=8, seed=5):
    rng = np.random.default_rng(seed)
    args = list(workload_factorized(nr, nth, T, seed))
    args[9] = rng.random((nr, nth, nr, nth))
    return tuple(args)


def run(fn, args, repeat):
    best = None
    value = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        value = fn(*args)
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return value, best


def main():
    print(f"{'workload':<12} {'impl':<9} {'best time':>12}   value")
    for name, args, repeat in (
        ("factorized", workload_factorized(), 5),
        ("coupled", workload_coupled(), 3),
    ):
        ref = None
        for impl_name, mod in (("numpy", fallback), ("compiled", compiled)):
            if mod is None:
                print(f"{name:<12} {impl_name:<9} {'(not built)':>12}")
                continue
            value, dt = run(mod.block_sum_2, args, repeat)
            print(f"{name:<12} {impl_name:<9} {dt * 1e3:>10.2f}ms   {value:.6e}")
            if ref is None:
                ref = value
            else:
                rel = abs(value - ref) / max(abs(ref), 1e-300)
                print(f"{'':<12} agreement vs numpy: {rel:.2e}")


if __name__ == "__main__":
    main()
