"""Compare the compiled grid-evaluation kernel against the pure-NumPy
fallback on representative workloads, and check that the two backends
agree.

Run:  python3 bench/benchmark_kernels.py
"""

import time

import numpy as np

from polytorus._kernels import fallback

try:
    from polytorus._kernels import _core as compiled
except ImportError:
    compiled = None


def _workloads():
    rng = np.random.Generator(np.random.Philox(42))
    for d, n, nterms in [(1, 4096, 8), (2, 256, 12), (3, 96, 20), (4, 32, 20)]:
        alphas = rng.integers(-3, 4, size=(nterms, d))
        coeffs = rng.standard_normal(nterms) + 1j * rng.standard_normal(nterms)
        yield f"grid d={d} N={n} T={nterms}", "grid_evaluate", (alphas, coeffs, n, d)


def _time(fn, args, repeats=3):
    best = float("inf")
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    if compiled is None:
        print("compiled kernels unavailable; nothing to compare")
        return
    print(f"{'workload':32s} {'numpy':>10s} {'cython':>10s} {'speedup':>8s} {'max diff':>10s}")
    for label, name, args in _workloads():
        t_np, r_np = _time(getattr(fallback, name), args)
        t_cy, r_cy = _time(getattr(compiled, name), args)
        diff = float(np.max(np.abs(np.asarray(r_np) - np.asarray(r_cy))))
        print(f"{label:32s} {t_np*1e3:9.2f}ms {t_cy*1e3:9.2f}ms {t_np/t_cy:7.2f}x {diff:10.2e}")
        assert diff < 1e-10, f"backend mismatch on {label}"


if __name__ == "__main__":
    main()
