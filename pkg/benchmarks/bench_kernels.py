"""Compare the numba and pure-numpy kernel paths on the exhaustive scans.

Run with:  python3 benchmarks/bench_kernels.py [--degree-cap N]

The numba path needs an import without STABPARTS_NO_NUMBA set; the numpy
path is always available.  Results are wall-clock medians over repeats.
"""

import argparse
import statistics
import time

import numpy as np

from stabparts import named_group
from stabparts.kernels import (
    HAVE_NUMBA,
    mark_orbit_unions_numpy,
    stabilizer_counts_numpy,
)

CASES = [
    ("AGL(1,5)", 5),
    ("J", 8),
    ("AGammaL(1,9)", 9),
    ("Product(D6,D6)", 9),
    ("Product(AGL(1,5),AGL(1,5))", 10),
    ("Product(D6,J)", 11),
]


def _time(fn, repeats=3):
    samples = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - start)
    return statistics.median(samples)


def bench_stabilizer_counts(cap):
    if HAVE_NUMBA:
        from stabparts.kernels import stabilizer_counts_numba
    print(f"{'group':<30}{'n':>4}{'|G|':>8}{'numpy (s)':>12}{'numba (s)':>12}{'speedup':>9}")
    for name, degree in CASES:
        if degree > cap:
            continue
        G = named_group(name)
        elems = G.elements
        t_np = _time(lambda: stabilizer_counts_numpy(elems, degree))
        if HAVE_NUMBA:
            stabilizer_counts_numba(elems, degree)  # warm the jit cache
            t_nb = _time(lambda: stabilizer_counts_numba(elems, degree))
            check = np.array_equal(
                stabilizer_counts_numpy(elems, degree),
                stabilizer_counts_numba(elems, degree),
            )
            assert check, name
            print(f"{name:<30}{degree:>4}{G.order:>8}{t_np:>12.4f}{t_nb:>12.4f}"
                  f"{t_np / t_nb:>8.1f}x")
        else:
            print(f"{name:<30}{degree:>4}{G.order:>8}{t_np:>12.4f}{'-':>12}{'-':>9}")


def bench_orbit_unions():
    if HAVE_NUMBA:
        from stabparts.kernels import mark_orbit_unions_numba
    print()
    print(f"{'orbit masks':<30}{'numpy (s)':>12}{'numba (s)':>12}{'speedup':>9}")
    for r in (10, 16, 20):
        masks = [1 << i for i in range(r)]
        total = 1 << r

        def run_numpy():
            mark_orbit_unions_numpy(np.zeros(total, dtype=bool), masks)

        t_np = _time(run_numpy)
        if HAVE_NUMBA:
            mark_orbit_unions_numba(np.zeros(total, dtype=bool), masks)

            def run_numba():
                mark_orbit_unions_numba(np.zeros(total, dtype=bool), masks)

            t_nb = _time(run_numba)
            print(f"{f'r = {r} (2^{r} unions)':<30}{t_np:>12.4f}{t_nb:>12.4f}"
                  f"{t_np / t_nb:>8.1f}x")
        else:
            print(f"{f'r = {r} (2^{r} unions)':<30}{t_np:>12.4f}{'-':>12}{'-':>9}")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--degree-cap", type=int, default=11,
                        help="skip groups of degree above this")
    args = parser.parse_args()
    if not HAVE_NUMBA:
        print("numba unavailable or disabled; timing the numpy path only\n")
    bench_stabilizer_counts(args.degree_cap)
    bench_orbit_unions()


if __name__ == "__main__":
    main()
