"""Benchmark: compiled series kernel vs the pure-Python fallback.

Times the raw coefficient transforms and an end-to-end batch of MZV
evaluations for each available kernel.  Run with:

    python benchmarks/bench_series.py [--digits 50] [--repeat 3]
"""

from __future__ import annotations

import argparse
import random
import time

from blockzeta import series
from blockzeta.bigreal import bits_for_digits
from blockzeta.words import ZetaComposition


def bench_kernel(mod, digits: int, repeat: int) -> dict:
    bits = bits_for_digits(digits)
    F, M = bits + 16, bits + 8
    word = (1, 0, 1, 1, 0, 1, 0, 0, 1, 0, 0, 1)
    best_transform = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for _ in range(60):
            C = mod.g_init(M, F)
            for bit in word:
                C = mod.g_append(C, bit, M, F)
            mod.g_value(C, M, F)
        best_transform = min(best_transform, time.perf_counter() - t0)
    return {"transform_batch": best_transform}


def bench_end_to_end(kernel_name: str, digits: int) -> float:
    """Evaluate a batch of weight <= 10 MZVs from scratch."""
    import importlib

    from blockzeta import numerics
    from blockzeta import series as series_mod

    mod = series_mod.available_kernels()[kernel_name]
    series_mod.g_init = mod.g_init
    series_mod.g_append = mod.g_append
    series_mod.g_value = mod.g_value
    numerics.reset_caches()
    rng = random.Random(7)
    comps = []
    for _ in range(40):
        weight = rng.randint(4, 10)
        args = []
        while weight > 0:
            a = rng.randint(1, min(4, weight))
            args.append(a)
            weight -= a
        if args[-1] < 2:
            args[-1] += 1
        comps.append(ZetaComposition(tuple(args)))
    t0 = time.perf_counter()
    for comp in comps:
        numerics.eval_mzv(comp, digits)
    return time.perf_counter() - t0


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--digits", type=int, default=50)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    kernels = series.available_kernels()
    print(f"available kernels: {', '.join(kernels)}  (active: {series.KERNEL})")
    print(f"precision target: {args.digits} digits\n")
    results = {}
    for name, mod in kernels.items():
        r = bench_kernel(mod, args.digits, args.repeat)
        r["mzv_batch"] = bench_end_to_end(name, args.digits)
        results[name] = r
        print(
            f"{name:>8}: series transforms {r['transform_batch']*1000:8.1f} ms"
            f"   40-MZV batch {r['mzv_batch']*1000:8.1f} ms"
        )
    if len(results) == 2:
        py, cy = results["python"], results["cython"]
        print(
            f"\nspeedup: transforms x{py['transform_batch']/cy['transform_batch']:.2f}, "
            f"mzv batch x{py['mzv_batch']/cy['mzv_batch']:.2f}"
        )


if __name__ == "__main__":
    main()
