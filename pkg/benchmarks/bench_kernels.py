"""Compare the compiled and numpy permutation-sum kernels.

Run ``python3 benchmarks/bench_kernels.py``. Reports per-call wall time for
the raw kernel and for a full projector application at level 4 and 5, and
checks that both backends produce identical bits.
"""
import argparse
import os
import time

import numpy as np

from tqf import kernels
from tqf.corpus import s_p
from tqf.projectors import _build_table, _isotypic_weights, power_state
from tqf.symmetric import Partition, lex_permutations
from tqf.tensor import Bipartition


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def projector_case(level):
    x = power_state(s_p(0.3), level)
    lam = Partition((level - 1, 1))
    side = Bipartition.parse("AB", 4).side
    w = _isotypic_weights(lam)
    perms = [p for p, c in zip(lex_permutations(level), w) if c != 0]
    coeffs = np.array([c for c in w if c != 0])
    table = _build_table(x.base_shape, level, side, tuple(perms))
    return x.data, table, coeffs


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--threads", type=int, default=int(os.environ.get("TQF_THREADS", "1")))
    args = ap.parse_args()

    backends = kernels.available_backends()
    print(f"backends: {', '.join(backends)}; default {kernels.BACKEND}; threads {args.threads}")
    print(f"{'case':<28}{'backend':<10}{'seconds':>12}{'speedup':>10}")
    for level in (4, 5):
        x, table, coeffs = projector_case(level)
        label = f"isotypic n={level} ({table.shape[0]}x{table.shape[1]})"
        results, base = {}, None
        for name, fn in backends.items():
            extra = (args.threads,) if name == "cython" else ()

            def run():
                out = np.zeros_like(x)
                results[name] = fn(out, x, table, coeffs, *extra)

            sec = best_of(run, args.repeat)
            base = sec if name == "python" else base
            speed = f"{base / sec:.1f}x" if base else "-"
            print(f"{label:<28}{name:<10}{sec:>12.4f}{speed:>10}")
        if len(results) == 2:
            same = np.array_equal(results["python"], results["cython"])
            print(f"{'':<28}bit-identical: {same}")


if __name__ == "__main__":
    main()
