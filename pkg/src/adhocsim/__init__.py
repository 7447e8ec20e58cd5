"""Discrete-time simulator of mobile WiFi ad-hoc networks.

Builds time-dependent communication/interference graphs from a pathloss
radio model using cell-linked-list neighbor search, and runs Monte Carlo
SIR worm-epidemic experiments over them.
"""

from .backend import active_backend
from .config import ConfigError, SimConfig, config_from_dict, parse_config
from .epidemic import (
    INFECTED,
    REMOVED,
    SUSCEPTIBLE,
    EpidemicParams,
    ReceptionMode,
    TimeSeries,
    run_single,
    seed_infection,
    select_transmitters,
    step,
)
from .ensemble import (
    BenchRecord,
    EnsembleStats,
    aggregate,
    run_bench,
    run_ensemble,
    run_many,
    run_seed,
)
from .geometry import Domain, canonicalize, distance
from .mobility import (
    MobilityModel,
    RandomWalk,
    RandomWaypoint,
    Static,
    init_mobility_state,
    step_random_walk,
    step_random_waypoint,
    update_positions,
)
from .radio import (
    RadioParams,
    interference_range,
    link_ok,
    received_power,
    sinr_ok,
    transmission_range,
)
from .topology import (
    CellGrid,
    NeighborLists,
    build_grid,
    cell_of,
    export_graph,
    neighbors_brute_force,
    neighbors_cell_list,
)

__version__ = "0.1.0"
