"""Compare the numba and numpy backends of the relator sampler.

    python3 benchmarks/bench_kernels.py [--samples N] [--repeat R]

Reports the best wall time per backend for the root finder and the relator
residuals, after one warm-up call (which includes numba compilation).
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from azlinks import _kernels
from azlinks.linkgroup import CASES, draw_traces, z_coefficients


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    backends = ["numpy"] + (["numba"] if _kernels.HAVE_NUMBA else [])
    rng = np.random.default_rng(0)
    print(f"{'case':6} {'stage':9} " + " ".join(f"{b:>10}" for b in backends) + "   speedup")
    for tag, case in CASES.items():
        x, y = draw_traces(rng, args.samples), draw_traces(rng, args.samples)
        coeffs = z_coefficients(case.canonical_poly, x, y)
        letters = case.word.codes()
        d = coeffs.shape[1] - 1
        roots, _ = _kernels.poly_roots(coeffs, backend="numpy")
        xs, ys, zs = np.repeat(x, d), np.repeat(y, d), roots.reshape(-1)
        stages = {
            "roots": lambda b: _kernels.poly_roots(coeffs, backend=b),
            "relator": lambda b: _kernels.relator_residuals(letters, xs, ys, zs, backend=b),
        }
        for stage, fn in stages.items():
            row = {}
            for b in backends:
                fn(b)  # warm-up
                row[b] = best_of(lambda: fn(b), args.repeat)
            speed = f"{row['numpy'] / row['numba']:8.1f}x" if "numba" in row else ""
            cells = " ".join(f"{row[b] * 1e3:8.2f}ms" for b in backends)
            print(f"{tag:6} {stage:9} {cells}   {speed}")
        r_np = _kernels.poly_roots(coeffs, backend="numpy")[0]
        if "numba" in backends:
            r_nb = _kernels.poly_roots(coeffs, backend="numba")[0]
            gap = max(
                np.abs(np.sort_complex(a) - np.sort_complex(b)).max() for a, b in zip(r_np, r_nb)
            )
            print(f"{tag:6} max root disagreement between backends: {gap:.1e}")


if __name__ == "__main__":
    main()
