"""Batch command-line front-end.

Subcommands:

* ``run``       one simulation -> series.csv (step,S,I,R)
* ``ensemble``  Monte Carlo ensemble -> curves.csv + summary.csv
* ``bench``     topology-maintenance cost sweep -> bench.csv
* ``graph``     one static placement -> positions.csv, comm_edges.csv,
  interference_edges.csv

All outputs are plain CSV with fixed decimal formatting (positions with 6
decimals, probabilities/means with 8), so files round-trip exactly and can
be regenerated byte for byte from the same config and seed.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .config import ConfigError, SimConfig, parse_config
from .ensemble import run_bench, run_ensemble, run_many, run_seed
from .radio import interference_range, transmission_range
from .topology import export_graph, neighbors_cell_list

POSITION_DECIMALS = 6
MEAN_DECIMALS = 8
WALL_DECIMALS = 6


def write_series_csv(path, series) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write("step,S,I,R\n")
        for t in range(len(series)):
            f.write(f"{t},{series.s[t]},{series.i[t]},{series.r[t]}\n")
        f.write(f"# truncated={'true' if series.truncated else 'false'}\n")


def read_series_csv(path):
    """Parse a series.csv back into (steps, S, I, R arrays, truncated flag)."""
    rows = []
    truncated = None
    with open(path, encoding="utf-8") as f:
        header = f.readline().strip()
        if header != "step,S,I,R":
            raise ValueError(f"unexpected header {header!r}")
        for line in f:
            line = line.strip()
            if line.startswith("#"):
                truncated = line.split("=", 1)[1] == "true"
                continue
            rows.append([int(x) for x in line.split(",")])
    arr = np.array(rows, dtype=np.int64)
    return arr[:, 0], arr[:, 1], arr[:, 2], arr[:, 3], truncated


def write_curves_csv(path, stats) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write("step,mean_S,mean_I,mean_R,std_I\n")
        for t in range(stats.mean_s.size):
            f.write(
                f"{t},{stats.mean_s[t]:.{MEAN_DECIMALS}f},"
                f"{stats.mean_i[t]:.{MEAN_DECIMALS}f},"
                f"{stats.mean_r[t]:.{MEAN_DECIMALS}f},"
                f"{stats.std_i[t]:.{MEAN_DECIMALS}f}\n"
            )


def write_summary_csv(path, stats) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write("runs,peak_mean,peak_time_mean,attack_size_mean,truncated_runs\n")
        f.write(
            f"{stats.runs},{stats.peak_mean:.{MEAN_DECIMALS}f},"
            f"{stats.peak_time_mean:.{MEAN_DECIMALS}f},"
            f"{stats.attack_size_mean:.{MEAN_DECIMALS}f},"
            f"{stats.truncated_runs}\n"
        )


def write_bench_csv(path, records) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write("n,method,i_update,pair_evals,wall_seconds\n")
        for r in records:
            f.write(
                f"{r.n_nodes},{r.method},{r.update_period},{r.pair_evals},"
                f"{r.wall_seconds:.{WALL_DECIMALS}f}\n"
            )


def write_positions_csv(path, positions) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write("id,x,y\n")
        for k, (x, y) in enumerate(positions):
            f.write(f"{k},{x:.{POSITION_DECIMALS}f},{y:.{POSITION_DECIMALS}f}\n")


def write_edges_csv(path, edges) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write("i,j\n")
        for i, j in edges:
            f.write(f"{i},{j}\n")


def cmd_run(config: SimConfig, out_dir: Path) -> list[Path]:
    series = run_many(config, 1, config.seed, workers=1)[0]
    path = out_dir / "series.csv"
    write_series_csv(path, series)
    return [path]


def cmd_ensemble(config: SimConfig, out_dir: Path) -> list[Path]:
    stats = run_ensemble(config, config.runs, config.seed, config.workers)
    curves = out_dir / "curves.csv"
    summary = out_dir / "summary.csv"
    write_curves_csv(curves, stats)
    write_summary_csv(summary, stats)
    return [curves, summary]


def cmd_bench(config: SimConfig, out_dir: Path, node_counts, update_periods,
              steps: int) -> list[Path]:
    records = run_bench(node_counts, update_periods, config, config.seed, steps)
    path = out_dir / "bench.csv"
    write_bench_csv(path, records)
    return [path]


def cmd_graph(config: SimConfig, out_dir: Path) -> list[Path]:
    rng = np.random.default_rng(run_seed(config.seed, 0))
    positions = rng.random((config.n_nodes, 2)) * config.domain.edges
    comm = neighbors_cell_list(positions, config.domain,
                               transmission_range(config.radio))
    intf = neighbors_cell_list(positions, config.domain,
                               interference_range(config.radio))
    paths = [out_dir / "positions.csv", out_dir / "comm_edges.csv",
             out_dir / "interference_edges.csv"]
    write_positions_csv(paths[0], positions)
    write_edges_csv(paths[1], export_graph(comm))
    write_edges_csv(paths[2], export_graph(intf))
    return paths


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {e}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adhocsim",
        description="Mobile WiFi ad-hoc network worm-epidemic simulator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", required=True, help="JSON config file")
        p.add_argument("--out", default=".", help="output directory")
        p.add_argument("--seed", type=int, default=None,
                       help="override the config seed")
        p.add_argument("--workers", type=int, default=None,
                       help="override ensemble.workers")

    common(sub.add_parser("run", help="single run -> series.csv"))
    common(sub.add_parser("ensemble",
                          help="Monte Carlo ensemble -> curves.csv, summary.csv"))
    bench = sub.add_parser("bench", help="topology cost sweep -> bench.csv")
    common(bench)
    bench.add_argument("--nodes", type=_int_list, default=[1000, 2000, 4000, 8000],
                       help="comma-separated network sizes")
    bench.add_argument("--periods", type=_int_list, default=[1, 2, 5, 10, 20],
                       help="comma-separated update periods")
    bench.add_argument("--steps", type=int, default=100,
                       help="epidemic timesteps per bench run")
    common(sub.add_parser("graph",
                          help="static placement -> positions + edge lists"))
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = parse_config(args.config, {"seed": args.seed,
                                            "workers": args.workers})
    except ConfigError as e:
        print(f"adhocsim: config error: {e}", file=sys.stderr)
        return 2
    out_dir = Path(args.out)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        if args.command == "run":
            written = cmd_run(config, out_dir)
        elif args.command == "ensemble":
            written = cmd_ensemble(config, out_dir)
        elif args.command == "bench":
            written = cmd_bench(config, out_dir, args.nodes, args.periods,
                                args.steps)
        else:
            written = cmd_graph(config, out_dir)
    except OSError as e:
        print(f"adhocsim: {e}", file=sys.stderr)
        return 1
    for path in written:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
