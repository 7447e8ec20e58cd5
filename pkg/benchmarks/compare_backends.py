#!/usr/bin/env python3
"""Time the numba kernels against the pure-numpy fallback.

Both backends build identical neighbor lists; this script reports how much
the JIT path buys for each construction method over a range of network
sizes at fixed density. Run from a checkout:

    python benchmarks/compare_backends.py [--sizes 1000,4000] [--repeats 3]
"""

import argparse
import time

import numpy as np

from adhocsim import _neighbors_np
from adhocsim.geometry import Domain
from adhocsim.topology import build_grid

try:
    from adhocsim import _neighbors_nb
except ImportError:
    _neighbors_nb = None

DENSITY = 4000 / 1e6  # nodes per m^2
RANGE_M = 50.0


def time_build(kernels, method, pos, d, grid, repeats):
    if method == "cell_list":
        args = (pos, d.lx, d.ly, d.periodic, RANGE_M, grid.cells_x, grid.cells_y,
                grid.cell_size_x, grid.cell_size_y, grid.cell_start,
                grid.cell_nodes)
        fn = lambda: kernels.half_pairs_cell(*args)
    else:
        fn = lambda: kernels.half_pairs_brute(pos, d.lx, d.ly, d.periodic, RANGE_M)
    ii, jj, _ = fn()  # warm (JIT compile on the numba side)
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best, ii, jj


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="1000,2000,4000,8000",
                        help="comma-separated node counts")
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    if _neighbors_nb is None:
        print("numba unavailable: nothing to compare against")
        return

    print(f"{'n':>6} {'method':<12} {'numpy [ms]':>11} {'numba [ms]':>11} "
          f"{'speedup':>8}")
    for n in sizes:
        edge = float(np.sqrt(n / DENSITY))
        d = Domain(edge, edge, True)
        pos = np.random.default_rng(n).random((n, 2)) * edge
        grid = build_grid(pos, d, RANGE_M)
        for method in ("cell_list", "brute_force"):
            t_np, i1, j1 = time_build(_neighbors_np, method, pos, d, grid,
                                      args.repeats)
            t_nb, i2, j2 = time_build(_neighbors_nb, method, pos, d, grid,
                                      args.repeats)
            same = set(zip(i1.tolist(), j1.tolist())) == set(
                zip(i2.tolist(), j2.tolist()))
            assert same, "backends disagree"
            print(f"{n:>6} {method:<12} {t_np * 1e3:>11.2f} {t_nb * 1e3:>11.2f} "
                  f"{t_np / t_nb:>7.1f}x")


if __name__ == "__main__":
    main()
