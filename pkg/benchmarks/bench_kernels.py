"""Compiled vs pure-python kernel timings.

Run twice to compare backends:
    python3 benchmarks/bench_kernels.py
    CNMARKERS_PURE_PYTHON=1 python3 benchmarks/bench_kernels.py
"""
import time

import numpy as np

from cnmarkers import BACKEND
from cnmarkers import _accel


def bench(label, fn, repeats=5):
    fn()  # warm-up
    best = min(timeit(fn) for _ in range(repeats))
    print(f"{label:<34} {best * 1e3:9.3f} ms")
    return best


def timeit(fn):
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


def main():
    rng = np.random.default_rng(0)
    print(f"backend: {BACKEND}")
    for n in (30, 5000):
        x = rng.standard_normal(n)
        y = 0.5 * np.roll(x, 1) + 0.5 * rng.standard_normal(n)
        xc, yc = x - x.mean(), y - y.mean()
        bench(f"gc_fit            T={n}", lambda: _accel.gc_fit(xc, yc))
    for n in (400, 8000):
        x = rng.standard_normal(n)
        y = 0.5 * np.roll(x, 1) + 0.5 * rng.standard_normal(n)
        bench(f"te_binned         T={n} bins=8", lambda: _accel.te_binned(x, y, 8))
    data = rng.standard_normal((121, 400))
    bench("gc_matrix         121x400", lambda: _accel.gc_matrix(data), repeats=3)


if __name__ == "__main__":
    main()
