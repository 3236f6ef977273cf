#!/usr/bin/env python3
"""Benchmark the compiled kernel against the pure-Python twin.

Kernel-level timings run both backends in-process on identical inputs; the
end-to-end row re-runs a representative workload (strong222 admittance plus
the second-order rank table) in a subprocess per backend, since the backend
is chosen at import time.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import os
import random
import subprocess
import sys
import time
from fractions import Fraction

from lieremark import _kernels_py as pure

try:
    from lieremark import _kernels_cy as compiled
except ImportError:
    compiled = None


def rand_poly(rng, nterms, nvars=8, maxdeg=3):
    out = {}
    while len(out) < nterms:
        mono = {}
        for _ in range(rng.randint(1, 4)):
            mono[(2, 2, 1, rng.randint(1, nvars))] = rng.randint(1, maxdeg)
        out[tuple(sorted(mono.items()))] = rng.randint(-20, 20) or 1
    return out


def time_call(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def kernel_rows(repeat):
    rng = random.Random(2019)
    small_a, small_b = rand_poly(rng, 40), rand_poly(rng, 40)
    big_a, big_b = rand_poly(rng, 600), rand_poly(rng, 600)
    env = {(2, 2, 1, i): Fraction(rng.randint(1, 9), rng.randint(1, 4))
           for i in range(1, 9)}
    matrix = [[rng.randint(-40, 40) for _ in range(22)] for _ in range(24)]
    jobs = [
        ("poly_mul 40x40 terms", lambda K: K.poly_mul(small_a, small_b)),
        ("poly_mul 600x600 terms", lambda K: K.poly_mul(big_a, big_b)),
        ("poly_add 600+600 terms", lambda K: K.poly_add(big_a, big_b)),
        ("poly_diff 600 terms", lambda K: K.poly_diff(big_a, (2, 2, 1, 1))),
        ("poly_eval 600 terms", lambda K: K.poly_eval(big_a, env)),
        ("bareiss_rank 24x22", lambda K: K.bareiss_rank(matrix)),
    ]
    rows = []
    for label, job in jobs:
        t_py = time_call(lambda: job(pure), repeat)
        if compiled is not None:
            t_cy = time_call(lambda: job(compiled), repeat)
            rows.append((label, t_py, t_cy))
        else:
            rows.append((label, t_py, None))
    return rows


END_TO_END = r"""
import time
from lieremark import BACKEND
from lieremark.algebras import affine_generators
from lieremark.analysis import is_admitted, rank_on_manifold
from lieremark.catalog import get

t0 = time.perf_counter()
entry = get("strong222")
alg = affine_generators(2, 2)
assert all(is_admitted(entry.system, g) for g in alg.generators)
rep = rank_on_manifold(alg, entry.system, samples=5, seed=0)
assert (rep.generic_rank, rep.on_manifold_rank) == (14, 12)
entry = get("strong322")
rep = rank_on_manifold(affine_generators(3, 2), entry.system, samples=5, seed=0)
assert (rep.generic_rank, rep.on_manifold_rank) == (23, 18)
print(f"{BACKEND} {time.perf_counter() - t0:.3f}")
"""


def end_to_end_row():
    results = {}
    for backend, env_extra in (("cython", {}), ("python", {"LIEREMARK_PURE_PYTHON": "1"})):
        if backend == "cython" and compiled is None:
            continue
        env = dict(os.environ, **env_extra)
        out = subprocess.run([sys.executable, "-c", END_TO_END], env=env,
                             capture_output=True, text=True, check=True)
        name, seconds = out.stdout.split()
        results[name] = float(seconds)
    return results


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    if compiled is None:
        print("compiled kernel not built; timing the pure backend only\n")

    print(f"{'kernel benchmark':<28} {'python':>10} {'cython':>10} {'speedup':>8}")
    for label, t_py, t_cy in kernel_rows(args.repeat):
        if t_cy is None:
            print(f"{label:<28} {t_py * 1e3:>8.2f}ms {'-':>10} {'-':>8}")
        else:
            print(f"{label:<28} {t_py * 1e3:>8.2f}ms {t_cy * 1e3:>8.2f}ms "
                  f"{t_py / t_cy:>7.2f}x")

    print()
    e2e = end_to_end_row()
    label = "end-to-end rank+admittance"
    t_py = e2e.get("python")
    t_cy = e2e.get("cython")
    if t_py and t_cy:
        print(f"{label:<28} {t_py:>9.2f}s {t_cy:>9.2f}s {t_py / t_cy:>7.2f}x")
    elif t_py:
        print(f"{label:<28} {t_py:>9.2f}s")


if __name__ == "__main__":
    main()
