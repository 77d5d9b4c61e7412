"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import random
import time

from pluennecke import _pure
from pluennecke._backend import compiled_kernels
from pluennecke.matching import verify_plunnecke_conditions
from pluennecke.regular import build_rk

def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)

def subset_case(n, width, seed=1):
    rng = random.Random(seed)
    return [rng.getrandbits(width) | 1 << rng.randrange(width) for _ in range(n)], width

def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--subset-size", type=int, default=18)
    args = ap.parse_args()

    ext = compiled_kernels()
    if ext is None:
        print("compiled kernels are not built; only the fallback can be timed")

    masks, width = subset_case(args.subset_size, 64)
    rows = []
    t_pure = best_of(lambda: _pure.min_ratio_subset(masks, width), args.repeat)
    t_ext = best_of(lambda: ext.min_ratio_subset(masks, width), args.repeat) if ext else None
    if ext:
        assert ext.min_ratio_subset(masks, width) == _pure.min_ratio_subset(masks, width)
    rows.append((f"subset search, n={args.subset_size}", t_pure, t_ext))

    g = build_rk(2, 3)
    rng = random.Random(2)
    n = 4000
    adj = [rng.sample(range(n), 3) for _ in range(n)]
    t_pure = best_of(lambda: _pure.max_matching(adj, n), args.repeat)
    t_ext = best_of(lambda: ext.max_matching(adj, n), args.repeat) if ext else None
    if ext:
        assert sum(m >= 0 for m in ext.max_matching(adj, n)) == sum(m >= 0 for m in _pure.max_matching(adj, n))
    rows.append((f"Hopcroft-Karp, random {n}x{n} deg 3", t_pure, t_ext))

    from pluennecke import matching

    saved = matching._backend.max_matching
    matching._backend.max_matching = _pure.max_matching
    t_pure = best_of(lambda: verify_plunnecke_conditions(g), 1)
    matching._backend.max_matching = saved
    t_ext = best_of(lambda: verify_plunnecke_conditions(g), 1) if ext else None
    rows.append(("verify R_2 level 3 (3584 edges)", t_pure, t_ext))

    print(f"{'case':36s} {'python s':>10s} {'compiled s':>11s} {'speedup':>8s}")
    for name, tp, te in rows:
        if te is None:
            print(f"{name:36s} {tp:10.4f} {'-':>11s} {'-':>8s}")
        else:
            print(f"{name:36s} {tp:10.4f} {te:11.4f} {tp / te:7.1f}x")

if __name__ == "__main__":
    main()
