#!/usr/bin/env python3
"""Benchmark the compiled kernel extension against the pure-NumPy fallback.

Times the hot kernels on representative workloads: Bessel evaluation at
angular-spectrum-integral scale, the principal-square-root split, and a
full 400x400 field frame.

Run:  python benchmarks/bench_kernels.py
"""

import time

import numpy as np

import causalbeams._kernels_py as pure

try:
    import causalbeams._kernels as compiled
except ImportError:
    compiled = None


def timeit(fn, *args, repeats=5):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def row(name, workload, args):
    t_pure = timeit(getattr(pure, name), *args)
    if compiled is None:
        print(f"{name:18s} {workload:28s} pure {t_pure * 1e3:8.2f} ms   "
              "compiled unavailable")
        return
    t_comp = timeit(getattr(compiled, name), *args)
    speedup = t_pure / t_comp
    print(f"{name:18s} {workload:28s} pure {t_pure * 1e3:8.2f} ms   "
          f"compiled {t_comp * 1e3:8.2f} ms   x{speedup:5.2f}")


def main():
    rng = np.random.default_rng(0)
    x_small = rng.uniform(0.0, 8.0, 2_000_000)
    x_wide = rng.uniform(0.0, 500.0, 2_000_000)
    s = rng.uniform(-4.0, 4.0, 2_000_000)
    v = rng.uniform(-4.0, 4.0, 2_000_000)
    n = 400
    ax = np.linspace(-4.0, 4.0, n)
    rho, xi = np.meshgrid(np.abs(ax), ax, indexing="ij")

    if compiled is None:
        print("compiled extension not built; showing pure timings only\n")
    print(f"{'kernel':18s} {'workload':28s} timings (best of 5)")
    row("j0", "2e6 pts, |x| <= 8", (x_small,))
    row("j0", "2e6 pts, |x| <= 500", (x_wide,))
    row("j1", "2e6 pts, |x| <= 500", (x_wide,))
    row("pq_split", "2e6 complex square roots", (s, v))
    row("impulse_beam_abs", "400x400 frame", (rho, xi, 1.0, 1.01, 2.0))

    # agreement between backends
    if compiled is not None:
        print("\nbackend agreement:")
        print("  j0 max |diff|:",
              np.abs(pure.j0(x_wide) - compiled.j0(x_wide)).max())
        p1, q1 = pure.pq_split(s, v)
        p2, q2 = compiled.pq_split(s, v)
        print("  pq max |diff|:",
              max(np.abs(p1 - p2).max(), np.abs(q1 - q2).max()))


if __name__ == "__main__":
    main()
