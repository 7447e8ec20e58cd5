"""Node mobility models, applied every ``i_update`` epidemic timesteps.

Three variants: Static (no movement), RandomWalk (fixed-length step in a
uniformly random direction per update) and RandomWaypoint (move toward a
uniformly drawn target at a per-update speed, pause on arrival, repeat).
One "update" is the mobility time unit; speeds and step lengths are
distances covered per update.

Every node consumes random draws in node-id order, so trajectories are
reproducible for a given seed regardless of how the arrays are batched.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .geometry import Domain, canonicalize


@dataclass(frozen=True)
class Static:
    """No movement; the topology of the run is frozen after placement."""


@dataclass(frozen=True)
class RandomWalk:
    """Fixed-length step in a uniformly random direction each update."""

    step_length: float = 10.0

    def __post_init__(self):
        if self.step_length <= 0.0:
            raise ValueError("step_length must be positive")


@dataclass(frozen=True)
class RandomWaypoint:
    """Move toward a uniform random target, pause on arrival, redraw.

    Speeds are drawn uniformly from [speed_min, speed_max] per leg;
    targets are absolute points, so a bounded (non-periodic) domain is
    required.
    """

    speed_min: float = 5.0
    speed_max: float = 15.0
    pause_steps: int = 0

    def __post_init__(self):
        if not 0.0 < self.speed_min <= self.speed_max:
            raise ValueError("need 0 < speed_min <= speed_max")
        if self.pause_steps < 0:
            raise ValueError("pause_steps must be >= 0")


Variant = Union[Static, RandomWalk, RandomWaypoint]


@dataclass(frozen=True)
class MobilityModel:
    """A movement variant plus the update period in epidemic timesteps."""

    variant: Variant
    i_update: int = 1

    def __post_init__(self):
        if self.i_update < 1:
            raise ValueError("i_update must be >= 1")


@dataclass
class WaypointState:
    """Per-node leg state for the random-waypoint variant."""

    target: np.ndarray      # (n, 2) current destination
    speed: np.ndarray       # (n,) distance covered per update
    pause_left: np.ndarray  # (n,) remaining pause updates


def init_mobility_state(model: MobilityModel, n: int, d: Domain, rng):
    """Draw any per-node state the variant needs; None for stateless variants."""
    v = model.variant
    if isinstance(v, RandomWaypoint):
        if d.periodic:
            raise ValueError(
                "random waypoint requires a bounded domain (targets are "
                "absolute points, undefined on a torus)"
            )
        target = rng.random((n, 2)) * d.edges
        speed = v.speed_min + (v.speed_max - v.speed_min) * rng.random(n)
        return WaypointState(target, speed, np.zeros(n, dtype=np.int64))
    return None


def step_random_walk(p, step_length: float, d: Domain, rng) -> np.ndarray:
    """One random-walk update for a single position or an (n, 2) batch.

    The displacement magnitude is exactly step_length before boundary
    handling (wrap when periodic, reflection otherwise).
    """
    p = np.asarray(p, dtype=np.float64)
    single = p.ndim == 1
    pts = p.reshape(-1, 2)
    theta = rng.uniform(0.0, 2.0 * np.pi, pts.shape[0])
    disp = step_length * np.column_stack([np.cos(theta), np.sin(theta)])
    out = canonicalize(pts + disp, d)
    return out[0] if single else out


def step_random_waypoint(positions: np.ndarray, state: WaypointState,
                         v: RandomWaypoint, d: Domain, rng) -> np.ndarray:
    """One waypoint update: redraw finished legs, sit out pauses, advance.

    Nodes that reach their target this update land on it exactly and then
    pause for ``pause_steps`` updates before drawing a new leg. Mutates
    ``positions`` and ``state`` in place and returns ``positions``.
    """
    done_pausing = state.pause_left == 0
    at_target = np.all(positions == state.target, axis=1)
    redraw = np.flatnonzero(done_pausing & at_target)
    if redraw.size:
        state.target[redraw] = rng.random((redraw.size, 2)) * d.edges
        state.speed[redraw] = (
            v.speed_min + (v.speed_max - v.speed_min) * rng.random(redraw.size)
        )
    paused = state.pause_left > 0
    state.pause_left[paused] -= 1
    moving = np.flatnonzero(~paused)
    if moving.size:
        delta = state.target[moving] - positions[moving]
        dist = np.sqrt((delta * delta).sum(axis=1))
        step = state.speed[moving]
        arrived = dist <= step
        hit = moving[arrived]
        positions[hit] = state.target[hit]
        state.pause_left[hit] = v.pause_steps
        adv = moving[~arrived]
        if adv.size:
            scale = (step[~arrived] / dist[~arrived])[:, None]
            positions[adv] += delta[~arrived] * scale
    return positions


def update_positions(model: MobilityModel, positions, d: Domain, rng,
                     state=None) -> np.ndarray:
    """Apply one mobility update to all nodes; Static is the identity."""
    v = model.variant
    if isinstance(v, Static):
        return positions
    if isinstance(v, RandomWalk):
        return step_random_walk(positions, v.step_length, d, rng)
    if isinstance(v, RandomWaypoint):
        if state is None:
            raise ValueError("random waypoint needs the state from init_mobility_state")
        return step_random_waypoint(np.array(positions, dtype=np.float64),
                                    state, v, d, rng)
    raise TypeError(f"unknown mobility variant: {v!r}")
