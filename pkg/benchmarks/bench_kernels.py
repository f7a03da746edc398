"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import time

from ccdim import _kernels_py as py
from ccdim.generators import grid, random_median

try:
    from ccdim import _kernels as ext
except ImportError:
    ext = None


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def cases():
    for name, X in [("grid(5,5,5)", grid(5, 5, 5)), ("grid(3,3,3,3,3)", grid(3, 3, 3, 3, 3)),
                    ("random_median 3^6 k12", random_median((3,) * 6, 12, 2))]:
        full = (1 << X.hyperplane_count) - 1
        yield name, "majority_witness", lambda m, X=X: m.majority_witness(X.masks)
        yield name, "pairwise_hamming", lambda m, X=X: m.pairwise_hamming(X.masks, 1)
        yield name, "max_clique", lambda m, X=X, full=full: m.max_clique(X.cross, full)
    seeds = [0] + [((1 << (i % 7)) - 1) | (((1 << (i * 3 % 7)) - 1) << 6) for i in range(14)]
    yield "closure of 15 grid points", "majority_closure", lambda m: m.majority_closure(seeds)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if ext is None:
        print("compiled kernels not built; only the fallback is available")
    print(f"{'instance':28} {'kernel':18} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for name, kernel, fn in cases():
        t_py = best_of(lambda: fn(py), args.repeat)
        if ext is None:
            print(f"{name:28} {kernel:18} {t_py:10.5f}")
            continue
        t_ext = best_of(lambda: fn(ext), args.repeat)
        print(f"{name:28} {kernel:18} {t_py:10.5f} {t_ext:10.5f} {t_py / t_ext:7.1f}x")


if __name__ == "__main__":
    main()
