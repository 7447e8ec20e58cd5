"""SIR worm propagation over the time-dependent network.

Nodes are susceptible, infected or removed (patched); the only transitions
are S -> I and I -> R. Infected nodes broadcast to their communication
neighbors every step. Reception is governed by the mode:

* ``ideal``     - every broadcast copy reaches every susceptible neighbor;
* ``sinr``      - a copy reaches a neighbor only if the sender's power beats
  the noise floor plus the aggregate power of all other simultaneous
  transmitters inside the receiver's interference range;
* ``mac_sinr``  - as ``sinr``, but a listen-before-talk abstraction first
  thins the transmitters to a maximal independent set of the interference
  graph, greedily in a uniformly random order (a transmitter suppresses
  its interference-range neighbors for the step; suppressed nodes simply
  retry on later steps).

Each step is a synchronous two-phase update: infection first (each received
copy is an independent Bernoulli trial with the per-copy infection
probability), then recovery (each node that was infected at the START of
the step is patched with the per-step recovery probability). Nodes infected
within a step are not eligible for recovery in that same step.

Random draws are consumed in a fixed documented order (transmitter
permutation, then infection trials by ascending receiver id, then recovery
trials by ascending node id), so a run is fully determined by its seed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import TYPE_CHECKING

import numpy as np

from .geometry import distance
from .mobility import Static, init_mobility_state, update_positions
from .radio import RadioParams, interference_range, received_power, transmission_range
from .topology import NeighborLists, neighbors_cell_list
from ._util import gather_rows

if TYPE_CHECKING:
    from .config import SimConfig

SUSCEPTIBLE = 0
INFECTED = 1
REMOVED = 2


class ReceptionMode(str, Enum):
    IDEAL = "ideal"
    SINR = "sinr"
    MAC_SINR = "mac_sinr"


@dataclass(frozen=True)
class EpidemicParams:
    """Worm model probabilities and run limits.

    ``infect_prob`` is the probability that one received worm copy infects
    a susceptible node; ``patch_prob`` is the per-step probability that an
    infected node is patched (removed).
    """

    infect_prob: float
    patch_prob: float
    reception_mode: ReceptionMode = ReceptionMode.IDEAL
    max_steps: int = 10000
    initial_infected: int = 1

    def __post_init__(self):
        if not 0.0 <= self.infect_prob <= 1.0:
            raise ValueError("infect_prob must lie in [0, 1]")
        if not 0.0 <= self.patch_prob <= 1.0:
            raise ValueError("patch_prob must lie in [0, 1]")
        if self.max_steps < 1:
            raise ValueError("max_steps must be >= 1")
        if self.initial_infected < 1:
            raise ValueError("initial_infected must be >= 1")
        object.__setattr__(self, "reception_mode", ReceptionMode(self.reception_mode))


@dataclass
class TimeSeries:
    """Per-step S/I/R population counts for one run.

    Row 0 is the state right after seeding; one row follows per executed
    step. ``truncated`` marks runs stopped at max_steps with infections
    still present. ``trace``, when requested, holds one
    (transmitters, interference_lists) pair per executed step.
    """

    s: np.ndarray
    i: np.ndarray
    r: np.ndarray
    truncated: bool = False
    trace: list | None = field(default=None, repr=False)

    def __len__(self) -> int:
        return self.s.size


def seed_infection(states: np.ndarray, k: int, rng) -> np.ndarray:
    """Infect k distinct uniformly chosen nodes of an all-susceptible population."""
    n = states.size
    if k > n:
        raise ValueError(f"cannot seed {k} infections among {n} nodes")
    if np.any(states != SUSCEPTIBLE):
        raise ValueError("seed_infection expects an all-susceptible population")
    chosen = rng.choice(n, size=k, replace=False)
    states[chosen] = INFECTED
    return states


def select_transmitters(infected: np.ndarray, interference_lists: NeighborLists,
                        mode: ReceptionMode, rng) -> np.ndarray:
    """Nodes that actually transmit this step.

    Ideal and plain-SINR modes let every infected node transmit. The MAC
    mode emulates listen-before-talk: infected nodes are visited in a
    uniformly random order and one defers whenever an interference-range
    neighbor already transmits this step.
    """
    if mode is not ReceptionMode.MAC_SINR:
        return infected
    order = rng.permutation(infected.size)
    blocked = np.zeros(interference_lists.n_nodes, dtype=bool)
    chosen = []
    for k in order:
        node = int(infected[k])
        if blocked[node]:
            continue
        chosen.append(node)
        blocked[interference_lists.neighbors_of(node)] = True
    return np.sort(np.array(chosen, dtype=np.int64))


def step(states, comm_lists, interference_lists, positions, d, radio: RadioParams,
         params: EpidemicParams, rng):
    """One synchronous epidemic step; returns (new_states, transmitters).

    ``interference_lists`` may be None in ideal mode, where it is unused.
    """
    infected = np.flatnonzero(states == INFECTED).astype(np.int64)
    mode = params.reception_mode
    transmitters = select_transmitters(infected, interference_lists, mode, rng)
    sus = np.flatnonzero(states == SUSCEPTIBLE).astype(np.int64)

    new_states = states.copy()
    if transmitters.size and sus.size:
        is_tx = np.zeros(states.size, dtype=bool)
        is_tx[transmitters] = True
        # candidate copies: transmitting communication neighbors of each
        # susceptible node, enumerated by ascending receiver id
        nbrs, counts = gather_rows(comm_lists.indptr, comm_lists.indices, sus)
        recv = np.repeat(sus, counts)
        on_air = is_tx[nbrs]
        if mode is ReceptionMode.IDEAL:
            copies_to = recv[on_air]
        else:
            cand_i = nbrs[on_air]
            cand_j = recv[on_air]
            copies_to = _sinr_received(
                cand_i, cand_j, sus, is_tx, interference_lists, positions, d, radio
            )
        if copies_to.size:
            trials = rng.random(copies_to.size) < params.infect_prob
            new_states[np.unique(copies_to[trials])] = INFECTED

    if infected.size:
        patched = rng.random(infected.size) < params.patch_prob
        new_states[infected[patched]] = REMOVED
    return new_states, transmitters


def _sinr_received(cand_i, cand_j, sus, is_tx, interference_lists, positions, d,
                   radio: RadioParams):
    """Receivers of the candidate copies that survive the SINR test."""
    # aggregate transmitter power inside each susceptible node's
    # interference range
    inbrs, icounts = gather_rows(
        interference_lists.indptr, interference_lists.indices, sus
    )
    at = np.repeat(sus, icounts)
    near = is_tx[inbrs]
    src, at = inbrs[near], at[near]
    total = np.zeros(is_tx.size)
    if src.size:
        p_in = received_power(radio, distance(positions[src], positions[at], d))
        total = np.bincount(at, weights=p_in, minlength=is_tx.size)
    sig = received_power(radio, distance(positions[cand_i], positions[cand_j], d))
    # the sender itself is inside the receiver's interference range
    # (comm range <= interference range), so take it back out
    others = np.maximum(total[cand_j] - sig, 0.0)
    ok = sig / (radio.noise + others) >= radio.sensitivity_threshold
    return cand_j[ok]


def run_single(config: "SimConfig", rng, collect_trace: bool = False) -> TimeSeries:
    """One full Monte Carlo run.

    Places nodes uniformly, seeds the infection, then steps the epidemic;
    every ``i_update`` steps the positions move and both neighbor lists are
    rebuilt. Stops when no infected node remains, or at ``max_steps`` with
    the truncation flag set.
    """
    if isinstance(rng, (int, np.integer)):
        rng = np.random.default_rng(int(rng))
    n = config.n_nodes
    d = config.domain
    radio = config.radio
    ep = config.epidemic
    mob = config.mobility

    positions = rng.random((n, 2)) * d.edges
    mob_state = init_mobility_state(mob, n, d, rng)
    states = np.zeros(n, dtype=np.uint8)
    seed_infection(states, ep.initial_infected, rng)

    r_comm = transmission_range(radio)
    r_intf = interference_range(radio)
    # ideal-mode reception never consults the interference graph, so skip
    # building it; rebuild cost at small i_update is otherwise dominated by
    # the wider interference range
    need_intf = ep.reception_mode is not ReceptionMode.IDEAL
    comm = neighbors_cell_list(positions, d, r_comm)
    intf = neighbors_cell_list(positions, d, r_intf) if need_intf else None

    counts = np.bincount(states, minlength=3)
    s_hist = [int(counts[SUSCEPTIBLE])]
    i_hist = [int(counts[INFECTED])]
    r_hist = [int(counts[REMOVED])]
    trace = [] if collect_trace else None

    static = isinstance(mob.variant, Static)
    since_update = 0
    for _ in range(ep.max_steps):
        if since_update == mob.i_update:
            since_update = 0
            if not static:
                positions = update_positions(mob, positions, d, rng, mob_state)
                comm = neighbors_cell_list(positions, d, r_comm)
                if need_intf:
                    intf = neighbors_cell_list(positions, d, r_intf)
        states, transmitters = step(
            states, comm, intf, positions, d, radio, ep, rng
        )
        since_update += 1
        counts = np.bincount(states, minlength=3)
        s_hist.append(int(counts[SUSCEPTIBLE]))
        i_hist.append(int(counts[INFECTED]))
        r_hist.append(int(counts[REMOVED]))
        if trace is not None:
            trace.append((transmitters, intf))
        if counts[INFECTED] == 0:
            break

    return TimeSeries(
        s=np.array(s_hist, dtype=np.int64),
        i=np.array(i_hist, dtype=np.int64),
        r=np.array(r_hist, dtype=np.int64),
        truncated=i_hist[-1] > 0,
        trace=trace,
    )
