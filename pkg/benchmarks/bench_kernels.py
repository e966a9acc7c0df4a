"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Reports the best wall time of each kernel per backend and the speedup.
"""
import argparse
import time

import numpy as np

from mas_uniformity._backend import available_backends


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases(rng):
    for k in (10**6, 10**7):
        sizes = rng.integers(1, 1000, size=k).astype(np.float64)
        total = float(sizes.sum())
        yield f"mas K={k:.0e}", lambda m, s=sizes, t=total: m.mas(s, t)
    x = rng.normal(size=(2000, 10))
    codes = rng.integers(0, 5, size=2000).astype(np.intp)
    yield "silhouette N=2000 D=10", lambda m: m.silhouette_samples(x, codes, 5)
    sizes = rng.integers(1, 20, size=50).astype(np.float64)
    yield "single_move K=50", lambda m: m.single_move_deltas(sizes)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = available_backends()
    names = sorted(backends)
    print(f"{'kernel':<24}" + "".join(f"{n:>12}" for n in names) + f"{'speedup':>10}")
    for label, run in cases(np.random.default_rng(0)):
        t = {n: best_of(lambda: run(backends[n]), args.repeat) for n in names}
        speed = f"{t['pure'] / t['compiled']:>9.1f}x" if len(t) == 2 else f"{'-':>10}"
        print(f"{label:<24}" + "".join(f"{t[n]:>11.4f}s" for n in names) + speed)


if __name__ == "__main__":
    main()
