"""Experiment configuration: a single JSON file drives everything.

Every random decision of a simulation derives from the one ``seed`` key.
Schema (defaults in parentheses; see README for the full reference):

    seed                int, required          master seed
    n_nodes             int, required          network size
    domain.lx/.ly       float, required        area edges in meters
    domain.periodic     bool (true)            toroidal boundaries
    radio.transmission_range   float           direct range override
    radio.transmit_power       float           power budget (needed if no override)
    radio.pathloss_constant    float (1.0)
    radio.pathloss_exponent    float (2.0)
    radio.noise                float (1.0)
    radio.sensitivity_threshold float (1.0)
    radio.interference_multiplier float (2.0)
    mobility.model      "static"|"random_walk"|"random_waypoint" ("random_walk")
    mobility.step_length   float (10.0)        random_walk only
    mobility.speed_min/.speed_max float (5/15) random_waypoint only
    mobility.pause_steps   int (0)             random_waypoint only
    mobility.i_update      int (1)             steps between position updates
    epidemic.lambda     float, required        per-copy infection probability
    epidemic.delta      float, required        per-step patch probability
    epidemic.reception_mode "ideal"|"sinr"|"mac_sinr" ("ideal")
    epidemic.max_steps     int (10000)
    epidemic.initial_infected int (1)
    ensemble.runs          int (500)
    ensemble.workers       int (1)

Unknown keys are rejected; all errors name the offending key path.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass

from .epidemic import EpidemicParams, ReceptionMode
from .geometry import Domain
from .mobility import MobilityModel, RandomWalk, RandomWaypoint, Static
from .radio import RadioParams


class ConfigError(ValueError):
    """Invalid, missing or unknown configuration key."""


@dataclass(frozen=True)
class SimConfig:
    seed: int
    n_nodes: int
    domain: Domain
    radio: RadioParams
    mobility: MobilityModel
    epidemic: EpidemicParams
    runs: int = 500
    workers: int = 1


def _section(data: dict, name: str, allowed: set[str]) -> dict:
    sec = data.get(name, {})
    if not isinstance(sec, dict):
        raise ConfigError(f"{name}: must be an object")
    for key in sec:
        if key not in allowed:
            raise ConfigError(f"{name}.{key}: unknown key")
    return sec


_MISSING = object()


def _get(sec: dict, path: str, key: str, kind, default=_MISSING):
    full = f"{path}.{key}" if path else key
    if key not in sec:
        if default is _MISSING:
            raise ConfigError(f"{full}: missing required key")
        return default
    val = sec[key]
    if kind is float:
        if isinstance(val, bool) or not isinstance(val, (int, float)):
            raise ConfigError(f"{full}: expected a number")
        return float(val)
    if kind is int:
        if isinstance(val, bool) or not isinstance(val, int):
            raise ConfigError(f"{full}: expected an integer")
        return val
    if kind is bool:
        if not isinstance(val, bool):
            raise ConfigError(f"{full}: expected a boolean")
        return val
    if kind is str:
        if not isinstance(val, str):
            raise ConfigError(f"{full}: expected a string")
        return val
    raise AssertionError(kind)


_TOP_KEYS = {"seed", "n_nodes", "domain", "radio", "mobility", "epidemic", "ensemble"}
_DOMAIN_KEYS = {"lx", "ly", "periodic"}
_RADIO_KEYS = {
    "transmit_power", "pathloss_constant", "pathloss_exponent", "noise",
    "sensitivity_threshold", "interference_multiplier", "transmission_range",
}
_MOBILITY_KEYS = {
    "model", "step_length", "speed_min", "speed_max", "pause_steps", "i_update",
}
_EPIDEMIC_KEYS = {
    "lambda", "delta", "reception_mode", "max_steps", "initial_infected",
}
_ENSEMBLE_KEYS = {"runs", "workers"}


def _build_radio(sec: dict) -> RadioParams:
    exponent = _get(sec, "radio", "pathloss_exponent", float, 2.0)
    constant = _get(sec, "radio", "pathloss_constant", float, 1.0)
    noise = _get(sec, "radio", "noise", float, 1.0)
    threshold = _get(sec, "radio", "sensitivity_threshold", float, 1.0)
    multiplier = _get(sec, "radio", "interference_multiplier", float, 2.0)
    override = _get(sec, "radio", "transmission_range", float, None)
    if override is not None:
        if override <= 0.0:
            raise ConfigError("radio.transmission_range: must be positive")
        if "transmit_power" in sec:
            warnings.warn(
                "radio.transmission_range overrides the range implied by "
                "transmit_power",
                stacklevel=4,
            )
            power = _get(sec, "radio", "transmit_power", float)
        else:
            # size the power budget so the override is self-consistent
            power = constant * threshold * noise * override**exponent
    else:
        power = _get(sec, "radio", "transmit_power", float)
    try:
        return RadioParams(
            transmit_power=power,
            pathloss_constant=constant,
            pathloss_exponent=exponent,
            noise=noise,
            sensitivity_threshold=threshold,
            interference_multiplier=multiplier,
            range_override=override,
        )
    except ValueError as e:
        raise ConfigError(f"radio: {e}") from e


def _build_mobility(sec: dict) -> MobilityModel:
    model = _get(sec, "mobility", "model", str, "random_walk")
    i_update = _get(sec, "mobility", "i_update", int, 1)
    walk_only = {"step_length"}
    waypoint_only = {"speed_min", "speed_max", "pause_steps"}
    present = set(sec)
    try:
        if model == "static":
            bad = present & (walk_only | waypoint_only)
            if bad:
                raise ConfigError(
                    f"mobility.{sorted(bad)[0]}: not valid for model=static"
                )
            variant = Static()
        elif model == "random_walk":
            bad = present & waypoint_only
            if bad:
                raise ConfigError(
                    f"mobility.{sorted(bad)[0]}: not valid for model=random_walk"
                )
            variant = RandomWalk(_get(sec, "mobility", "step_length", float, 10.0))
        elif model == "random_waypoint":
            bad = present & walk_only
            if bad:
                raise ConfigError(
                    f"mobility.{sorted(bad)[0]}: not valid for model=random_waypoint"
                )
            variant = RandomWaypoint(
                speed_min=_get(sec, "mobility", "speed_min", float, 5.0),
                speed_max=_get(sec, "mobility", "speed_max", float, 15.0),
                pause_steps=_get(sec, "mobility", "pause_steps", int, 0),
            )
        else:
            raise ConfigError(
                "mobility.model: must be one of static, random_walk, "
                "random_waypoint"
            )
        return MobilityModel(variant=variant, i_update=i_update)
    except ConfigError:
        raise
    except ValueError as e:
        raise ConfigError(f"mobility: {e}") from e


def _build_epidemic(sec: dict) -> EpidemicParams:
    lam = _get(sec, "epidemic", "lambda", float)
    delta = _get(sec, "epidemic", "delta", float)
    if not 0.0 <= lam <= 1.0:
        raise ConfigError("epidemic.lambda must lie in [0,1]")
    if not 0.0 <= delta <= 1.0:
        raise ConfigError("epidemic.delta must lie in [0,1]")
    mode = _get(sec, "epidemic", "reception_mode", str, "ideal")
    try:
        return EpidemicParams(
            infect_prob=lam,
            patch_prob=delta,
            reception_mode=ReceptionMode(mode),
            max_steps=_get(sec, "epidemic", "max_steps", int, 10000),
            initial_infected=_get(sec, "epidemic", "initial_infected", int, 1),
        )
    except ValueError as e:
        raise ConfigError(f"epidemic: {e}") from e


def config_from_dict(data: dict) -> SimConfig:
    """Validate a parsed configuration mapping and build a SimConfig."""
    if not isinstance(data, dict):
        raise ConfigError("configuration root must be an object")
    for key in data:
        if key not in _TOP_KEYS:
            raise ConfigError(f"{key}: unknown key")

    seed = _get(data, "", "seed", int)
    if not 0 <= seed < 2**64:
        raise ConfigError("seed: must fit in 64 bits")
    n_nodes = _get(data, "", "n_nodes", int)
    if n_nodes < 1:
        raise ConfigError("n_nodes: must be >= 1")

    dsec = _section(data, "domain", _DOMAIN_KEYS)
    lx = _get(dsec, "domain", "lx", float)
    ly = _get(dsec, "domain", "ly", float)
    periodic = _get(dsec, "domain", "periodic", bool, True)
    if lx <= 0.0 or ly <= 0.0:
        raise ConfigError("domain.lx/ly: must be positive")
    domain = Domain(lx, ly, periodic)

    radio = _build_radio(_section(data, "radio", _RADIO_KEYS))
    mobility = _build_mobility(_section(data, "mobility", _MOBILITY_KEYS))
    epidemic = _build_epidemic(_section(data, "epidemic", _EPIDEMIC_KEYS))

    esec = _section(data, "ensemble", _ENSEMBLE_KEYS)
    runs = _get(esec, "ensemble", "runs", int, 500)
    workers = _get(esec, "ensemble", "workers", int, 1)
    if runs < 1:
        raise ConfigError("ensemble.runs: must be >= 1")
    if workers < 1:
        raise ConfigError("ensemble.workers: must be >= 1")

    if epidemic.initial_infected > n_nodes:
        raise ConfigError("epidemic.initial_infected: must not exceed n_nodes")
    if isinstance(mobility.variant, RandomWaypoint) and domain.periodic:
        raise ConfigError(
            "mobility.model: random_waypoint requires domain.periodic=false"
        )

    return SimConfig(
        seed=seed,
        n_nodes=n_nodes,
        domain=domain,
        radio=radio,
        mobility=mobility,
        epidemic=epidemic,
        runs=runs,
        workers=workers,
    )


def parse_config(path: str, overrides: dict | None = None) -> SimConfig:
    """Load a JSON configuration file; flag overrides replace file values.

    ``overrides`` maps {"seed": ..., "workers": ...} from the command line.
    """
    try:
        with open(path, encoding="utf-8") as f:
            data = json.load(f)
    except OSError as e:
        raise ConfigError(f"cannot read config file: {e}") from e
    except json.JSONDecodeError as e:
        raise ConfigError(f"config file is not valid JSON: {e}") from e
    if overrides:
        if overrides.get("seed") is not None:
            data["seed"] = overrides["seed"]
        if overrides.get("workers") is not None:
            data.setdefault("ensemble", {})["workers"] = overrides["workers"]
    return config_from_dict(data)
