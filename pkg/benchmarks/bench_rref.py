#!/usr/bin/env python3
"""Compare the two rational backends on the hot kernel (row reduction).

The package selects gmpy2.mpq (a compiled C extension) at import when it is
available and falls back to fractions.Fraction; this script measures both on
the same matrices so the tradeoff stays visible.

    python3 benchmarks/bench_rref.py [--sizes 20,40,80] [--repeats 3]
"""

import argparse
import random
import sys
import time
from fractions import Fraction

sys.path.insert(0, "src")

from dgconf import linalg  # noqa: E402


def random_matrix(rng, size, make):
    entries = [[make(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(size)]
               for _ in range(size)]
    return linalg.Matrix(size, size, entries)


def time_backend(name, make, sizes, repeats, seed=12345):
    rows = []
    for size in sizes:
        rng = random.Random(seed)
        matrices = [random_matrix(rng, size, make) for _ in range(repeats)]
        start = time.perf_counter()
        for m in matrices:
            linalg.reduce(m)
        elapsed = (time.perf_counter() - start) / repeats
        rows.append((size, elapsed))
    return name, rows


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="20,40,80")
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    backends = [("fraction", lambda p, q: Fraction(p, q))]
    try:
        from gmpy2 import mpq
        backends.append(("gmpy2", lambda p, q: mpq(p, q)))
    except ImportError:
        print("gmpy2 not available; timing the pure-Python backend only")

    results = [time_backend(name, make, sizes, args.repeats)
               for name, make in backends]

    header = "size".rjust(6) + "".join(name.rjust(14) for name, _ in results)
    print(header)
    for i, size in enumerate(sizes):
        line = str(size).rjust(6)
        for _, rows in results:
            line += f"{rows[i][1] * 1000:11.2f} ms"
        print(line)
    if len(results) == 2:
        speedups = [results[0][1][i][1] / results[1][1][i][1]
                    for i in range(len(sizes))]
        print("gmpy2 speedup: " + ", ".join(f"{s:.1f}x" for s in speedups))


if __name__ == "__main__":
    main()
