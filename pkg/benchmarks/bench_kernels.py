"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]

The first compiled call includes JIT (or cache load) time, so it is done
once as a warm-up before timing.
"""

import argparse
import random
import time
from math import gcd

from rodvol import _kernels
from rodvol.contfrac import Rational, SearchExhausted, minimal_cf


def cf_workload(seed=1, count=100):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        q = rng.randint(50, 2000)
        p = rng.randint(-3 * q, 3 * q)
        if gcd(p, q) == 1:
            out.append(Rational(p, q))
    return out


def run_cf(xs, use_numba):
    found = 0
    for x in xs:
        try:
            minimal_cf(x, 12, max_length=12, max_nodes=200_000, use_numba=use_numba)
            found += 1
        except SearchExhausted:
            pass
    return found


def sum_workload(seed=2, rods=400):
    rng = random.Random(seed)
    p = [rng.randint(-10**4, 10**4) for _ in range(rods)]
    q = [rng.randint(-10**4, 10**4) for _ in range(rods)]
    return p, q


def run_sums(pq, use_numba):
    p, q = pq
    return _kernels.pair_determinant_sum(p, q, use_numba) + _kernels.gcd_excess_sum(p, q, use_numba)


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t0)
    return min(times), result


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if _kernels._search_fixed_length_jit is None:
        print("numba is not installed; only the fallback path is available")
        return

    cases = [
        ("minimal_cf x100 (|c| <= 12)", cf_workload(), run_cf),
        ("intersection sums (400 rods)", sum_workload(), run_sums),
    ]
    print(f"{'kernel':32} {'numba (s)':>11} {'fallback (s)':>13} {'speedup':>8}")
    for name, data, fn in cases:
        fn(data[:5] if isinstance(data, list) else data, True)  # warm-up / compile
        t_fast, r_fast = best_of(lambda: fn(data, True), args.repeat)
        t_slow, r_slow = best_of(lambda: fn(data, False), args.repeat)
        assert r_fast == r_slow, (name, r_fast, r_slow)
        print(f"{name:32} {t_fast:11.4f} {t_slow:13.4f} {t_slow / t_fast:7.1f}x")


if __name__ == "__main__":
    main()
