"""Time the numba kernels against their numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 5]

The numba functions are warmed up once before timing so compilation is not counted.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from mixmult import _kernels as K


def _best(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def workloads(rng):
    gens = rng.integers(0, 6, size=(40, 4)).astype(np.int64)
    monos = rng.integers(0, 12, size=(20000, 4)).astype(np.int64)
    # minimal_mask wants distinct rows sorted by total degree
    pts = np.unique(rng.integers(0, 14, size=(3000, 3)), axis=0).astype(np.int64)
    pts = pts[np.argsort(pts.sum(axis=1), kind="stable")]
    mat = rng.integers(0, 32003, size=(120, 160)).astype(np.int64)
    return [
        ("divisible_mask 40x20000", K._divisible_mask_np, K._divisible_mask_nb, (gens, monos)),
        (f"minimal_mask {len(pts)}", K._minimal_mask_np, K._minimal_mask_nb, (pts,)),
        ("echelon_mod_p 120x160", lambda m, p: K._echelon_mod_p_np(m.copy(), p),
         lambda m, p: K._echelon_mod_p_nb(m.copy(), p), (mat, 32003)),
    ]


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if not K.HAVE_NUMBA:
        print("numba unavailable (or MIXMULT_DISABLE_NUMBA set); timing numpy only")
    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':<26}{'numpy [s]':>12}{'numba [s]':>12}{'speedup':>10}")
    for name, f_np, f_nb, fargs in workloads(rng):
        t_np = _best(f_np, fargs, args.repeat)
        if K.HAVE_NUMBA:
            a, b = f_np(*fargs), f_nb(*fargs)
            same = all(np.array_equal(x, y) for x, y in zip(a, b)) if isinstance(a, tuple) else np.array_equal(a, b)
            assert same, name
            t_nb = _best(f_nb, fargs, args.repeat)
            print(f"{name:<26}{t_np:>12.5f}{t_nb:>12.5f}{t_np / t_nb:>9.1f}x")
        else:
            print(f"{name:<26}{t_np:>12.5f}{'-':>12}{'-':>10}")


if __name__ == "__main__":
    main()
