"""Benchmark: compiled kernels vs the numpy fallback.

Times the pointwise kernels on a range of sizes and a full split-step loop
on a production-size 1-d grid.  Run:

    python benchmarks/bench_kernels.py
"""

import time

import numpy as np

from nlslab import _kernels_np

try:
    from nlslab import _kernels as compiled
except ImportError:
    compiled = None


def _time(fn, *args, repeat=200):
    best = np.inf
    for _ in range(5):
        start = time.perf_counter()
        for _ in range(repeat):
            fn(*args)
        best = min(best, (time.perf_counter() - start) / repeat)
    return best


def bench_pointwise():
    rng = np.random.default_rng(0)
    print(f"{'kernel':<18} {'size':>9} {'numpy':>12} {'cython':>12} {'speedup':>9}")
    for size in (1 << 10, 1 << 14, 1 << 18, 1 << 20):
        u = rng.standard_normal(size) + 1j * rng.standard_normal(size)
        out = np.empty_like(u)
        repeat = max(4, (1 << 22) // size)
        for name, pm1 in (("nonlinear_phase p=3", 2.0), ("nonlinear_phase p=2.5", 1.5)):
            t_np = _time(_kernels_np.nonlinear_phase, u, 0.1, pm1, out, repeat=repeat)
            if compiled is not None:
                t_cy = _time(compiled.nonlinear_phase, u, 0.1, pm1, out, repeat=repeat)
                print(f"{name:<18} {size:>9} {t_np * 1e6:>10.1f}us {t_cy * 1e6:>10.1f}us {t_np / t_cy:>8.2f}x")
            else:
                print(f"{name:<18} {size:>9} {t_np * 1e6:>10.1f}us {'n/a':>12} {'':>9}")


def bench_split_step():
    from nlslab.functionals import EquationParams
    from nlslab.grid import BoxGrid, SpectralField
    from nlslab.integrator import SolverConfig, evolve

    grid = BoxGrid(1, 50.0, 512)
    x = grid.axis_coordinates()
    field = SpectralField(grid, np.exp(-((x - 25.0) ** 2) / 8.0).astype(complex))
    params = EquationParams(1, 3.0, "defocusing")
    config = SolverConfig(dt=1e-4, t_end=1.0, sample_every=10000, localization_min=0.1)

    import nlslab.backend as backend

    start = time.perf_counter()
    evolve(field, params, config)
    elapsed = time.perf_counter() - start
    steps = int(config.t_end / config.dt)
    print(f"\nsplit-step loop ({backend.BACKEND} backend): "
          f"{steps} steps of M=512 in {elapsed:.2f}s ({elapsed / steps * 1e6:.1f}us/step)")


if __name__ == "__main__":
    if compiled is None:
        print("compiled extension not available; timing the numpy fallback only\n")
    bench_pointwise()
    bench_split_step()
    print("\nre-run with NLSLAB_BACKEND=numpy to time the full loop on the fallback")
