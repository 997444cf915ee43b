"""Time the compiled kernels against the pure-Python fallback.

Usage: python benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import time

import numpy as np

from sievelab import kernels
from sievelab.finite_groups import MatrixGroupSpec, enumerate_group
from sievelab.group_walk import WalkConfig, _choices, _gen_arrays
from sievelab.polys import find_irreducible


def cases():
    gens = np.array([[[1, 1], [0, 1]], [[1, 0], [1, 1]]], dtype=np.int64)
    mats = enumerate_group(MatrixGroupSpec("CSp", 2, 11))
    ch = _choices(WalkConfig(3, 60, 300, seed=0))[0]
    gi, gj, gs = _gen_arrays(3)
    mod = find_irreducible(101, 2)
    return {
        "group_closure SL(2,13)": lambda k: k.group_closure(gens, 13, 3000),
        "charpoly_mod_p CSp(2,11)": lambda k: k.charpoly_mod_p(mats, 11),
        "walk_charpolys SL(3) 300x60": lambda k: k.walk_charpolys(ch, gi, gj, gs, 3),
        "fiber_counts q=101 r=2": lambda k: k.fiber_counts([1, 0, 1], 101, 2, mod, list(range(3, 40))),
        "ec_point_order l=10007": lambda k: k.ec_point_order((0, 0, -1, -1, 0), 0, 0, 10007, 10300),
    }


def best_time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    names = [n for n in ("python", "cython") if n in kernels.BACKENDS]
    print("%-30s" % "kernel" + "".join("%12s" % n for n in names) + "%10s" % "speedup")
    for label, fn in cases().items():
        times = [best_time(lambda: fn(kernels.get_backend(n)), args.repeat) for n in names]
        speed = times[0] / times[-1] if len(times) > 1 else 1.0
        print("%-30s" % label + "".join("%11.4fs" % t for t in times) + "%9.1fx" % speed)


if __name__ == "__main__":
    main()
