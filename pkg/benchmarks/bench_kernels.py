"""Time the rank kernels: numba JIT, numpy fallback and exact Bareiss.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Random matrices exercise the elimination in isolation (Bareiss gets small
integers, so its column is only indicative); the Hilbert window of
the 31-point scheme is the workload the oracle actually runs.
"""

import argparse
import statistics
import time

import numpy as np

from bihilbert import _accel, kernels
from bihilbert.configfile import load_script
from bihilbert.kernels import _prefix_ranks_modp_numba, _prefix_ranks_modp_numpy, prefix_ranks_bareiss
from bihilbert.oracle import DEFAULT_PRIME, RATIONAL, Field, hilbert_matrix

P = DEFAULT_PRIME


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times), statistics.median(times)


def random_matrix(rng, m, n, small):
    if small:
        return rng.integers(-5, 6, size=(m, n))
    return rng.integers(0, P, size=(m, n), dtype=np.uint64)


def run_oracle(cfg, fld, use_numba):
    saved = kernels.USE_NUMBA
    kernels.USE_NUMBA = use_numba
    try:
        return hilbert_matrix(cfg, fld)
    finally:
        kernels.USE_NUMBA = saved


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    rng = np.random.default_rng(0)

    print(f"numba available: {_accel.NUMBA_AVAILABLE}")
    # compile outside the timed region
    _prefix_ranks_modp_numba(random_matrix(rng, 4, 4, False), P)

    print(f"\n{'shape':>10} {'numba ms':>10} {'numpy ms':>10} {'bareiss ms':>11} {'numpy/numba':>12}")
    for m, n in [(10, 16), (31, 45), (31, 90), (60, 120), (120, 240)]:
        big = random_matrix(rng, m, n, False)
        small = random_matrix(rng, m, n, True)
        t_jit, _ = best_of(lambda: _prefix_ranks_modp_numba(big, P), args.repeat)
        t_np, _ = best_of(lambda: _prefix_ranks_modp_numpy(big, P), args.repeat)
        rows = small.tolist()
        t_exact, _ = best_of(lambda: prefix_ranks_bareiss(rows), max(1, args.repeat // 2))
        print(f"{m:>4}x{n:<5} {t_jit * 1e3:>10.2f} {t_np * 1e3:>10.2f} {t_exact * 1e3:>11.2f} "
              f"{t_np / t_jit:>12.1f}")

    print("\n31-point scheme, full Hilbert window")
    cfg = load_script("@scheme31").base_config(1)
    for label, fld, flag in [
        ("prime, numba", Field(P), True),
        ("prime, numpy", Field(P), False),
        ("rational", RATIONAL, True),
    ]:
        t, med = best_of(lambda: run_oracle(cfg, fld, flag), args.repeat)
        print(f"  {label:<14} best {t * 1e3:8.2f} ms   median {med * 1e3:8.2f} ms")


if __name__ == "__main__":
    main()
