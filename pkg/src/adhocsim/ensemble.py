"""Monte Carlo ensemble runner and the topology-maintenance benchmark.

Runs are embarrassingly parallel: run k is seeded by mixing the master
seed with k (see :func:`run_seed`), owns all of its mutable state, and the
aggregation uses exact integer sums, so results are bit-identical for any
worker count and any completion order.
"""

from __future__ import annotations

import multiprocessing
import time
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .epidemic import TimeSeries, run_single
from .geometry import Domain
from .mobility import init_mobility_state, update_positions
from .radio import transmission_range
from .topology import neighbors_brute_force, neighbors_cell_list

if TYPE_CHECKING:
    from .config import SimConfig

_MASK64 = (1 << 64) - 1


def run_seed(master_seed: int, run_index: int) -> int:
    """Derive the seed of run ``run_index`` from the master seed.

    splitmix64 finalizer applied to master_seed + (run_index + 1) * golden,
    all modulo 2**64:

        z  = master_seed + (k + 1) * 0x9E3779B97F4A7C15
        z ^= z >> 30;  z *= 0xBF58476D1CE4E5B9
        z ^= z >> 27;  z *= 0x94D049BB133111EB
        z ^= z >> 31

    The formula is part of the reproducibility contract: any tool that
    implements it can regenerate the exact per-run streams.
    """
    z = (master_seed + (run_index + 1) * 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


@dataclass(frozen=True)
class EnsembleStats:
    """Aggregate of an ensemble of runs, aligned to the longest run.

    Runs that die out early contribute their absorbing (S, 0, R) values to
    later steps, so the integer accumulators conserve the population at
    every step; the float means add up to n modulo one rounding per
    quotient.
    """

    runs: int
    mean_s: np.ndarray
    mean_i: np.ndarray
    mean_r: np.ndarray
    std_i: np.ndarray
    peak_mean: float
    peak_time_mean: float
    attack_size_mean: float
    truncated_runs: int


@dataclass(frozen=True)
class BenchRecord:
    """Cost of maintaining the topology for one (size, method, period) cell."""

    n_nodes: int
    method: str  # "brute_force" | "cell_list"
    update_period: int
    pair_evals: int
    wall_seconds: float


def _run_indexed(args):
    config, master_seed, k = args
    return k, run_single(config, np.random.default_rng(run_seed(master_seed, k)))


def run_many(config: "SimConfig", n_runs: int, master_seed: int,
             workers: int = 1) -> list[TimeSeries]:
    """Execute n_runs independent runs; result list is ordered by run index."""
    if n_runs < 1:
        raise ValueError("n_runs must be >= 1")
    if workers < 1:
        raise ValueError("workers must be >= 1")
    tasks = [(config, master_seed, k) for k in range(n_runs)]
    if workers == 1 or n_runs == 1:
        return [_run_indexed(t)[1] for t in tasks]
    methods = multiprocessing.get_all_start_methods()
    ctx = multiprocessing.get_context("fork" if "fork" in methods else None)
    out: list = [None] * n_runs
    chunk = max(1, n_runs // (workers * 8))
    with ctx.Pool(processes=workers) as pool:
        for k, series in pool.imap_unordered(_run_indexed, tasks, chunksize=chunk):
            out[k] = series
    return out


def aggregate(series_list: list[TimeSeries]) -> EnsembleStats:
    """Merge per-run series into ensemble statistics via exact integer sums."""
    n_runs = len(series_list)
    if n_runs < 1:
        raise ValueError("need at least one run to aggregate")
    longest = max(len(ts) for ts in series_list)
    sum_s = np.zeros(longest, dtype=np.int64)
    sum_i = np.zeros(longest, dtype=np.int64)
    sum_r = np.zeros(longest, dtype=np.int64)
    sum_i2 = np.zeros(longest, dtype=np.int64)
    peak_sum = 0
    peak_time_sum = 0
    attack_sum = 0
    truncated = 0
    for ts in series_list:
        m = len(ts)
        sum_s[:m] += ts.s
        sum_i[:m] += ts.i
        sum_r[:m] += ts.r
        sum_i2[:m] += ts.i * ts.i
        if m < longest:
            sum_s[m:] += ts.s[-1]
            sum_i[m:] += ts.i[-1]
            sum_r[m:] += ts.r[-1]
            sum_i2[m:] += ts.i[-1] * ts.i[-1]
        peak_sum += int(ts.i.max())
        peak_time_sum += int(np.argmax(ts.i))
        attack_sum += int(ts.r[-1])
        truncated += bool(ts.truncated)
    mean_i = sum_i / n_runs
    var_i = np.maximum(sum_i2 / n_runs - mean_i * mean_i, 0.0)
    return EnsembleStats(
        runs=n_runs,
        mean_s=sum_s / n_runs,
        mean_i=mean_i,
        mean_r=sum_r / n_runs,
        std_i=np.sqrt(var_i),
        peak_mean=peak_sum / n_runs,
        peak_time_mean=peak_time_sum / n_runs,
        attack_size_mean=attack_sum / n_runs,
        truncated_runs=truncated,
    )


def run_ensemble(config: "SimConfig", n_runs: int, master_seed: int,
                 workers: int = 1) -> EnsembleStats:
    """Task-farm n_runs Monte Carlo runs and aggregate them."""
    return aggregate(run_many(config, n_runs, master_seed, workers))


def run_bench(node_counts, update_periods, config: "SimConfig", seed: int,
              steps: int = 100) -> list[BenchRecord]:
    """Measure topology-maintenance cost over network sizes and update periods.

    Node density is held fixed: the domain is rescaled as sqrt(n) around the
    configured size. For each (n, period) the mobility trajectory is
    identical across both construction methods (same derived seed), so only
    the rebuild cost differs. One communication-range rebuild runs per
    position update, i.e. floor(steps / period) rebuilds in a run of
    ``steps`` epidemic timesteps.
    """
    records = []
    r_comm = transmission_range(config.radio)
    combo = 0
    for n in node_counts:
        scale = float(np.sqrt(n / config.n_nodes))
        d = Domain(config.domain.lx * scale, config.domain.ly * scale,
                   config.domain.periodic)
        for period in update_periods:
            combo_seed = run_seed(seed, combo)
            combo += 1
            for method, build in (("brute_force", neighbors_brute_force),
                                  ("cell_list", neighbors_cell_list)):
                rng = np.random.default_rng(combo_seed)
                positions = rng.random((n, 2)) * d.edges
                mob_state = init_mobility_state(config.mobility, n, d, rng)
                evals = 0
                wall = 0.0
                for _ in range(steps // period):
                    positions = update_positions(
                        config.mobility, positions, d, rng, mob_state
                    )
                    t0 = time.perf_counter()
                    lists = build(positions, d, r_comm)
                    wall += time.perf_counter() - t0
                    evals += lists.pair_evals
                records.append(BenchRecord(int(n), method, int(period),
                                           int(evals), wall))
    return records
