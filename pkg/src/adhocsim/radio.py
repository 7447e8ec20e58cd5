"""Pathloss radio model: received power, link feasibility, ranges, SINR.

Received power decays as a power law of distance, P / (c * r**alpha).
A link from a transmitter at distance r is feasible when the ratio of
received power to total noise meets the sensitivity threshold (inclusive).
All nodes share one parameter set, so links are symmetric and the
communication topology is an undirected random geometric graph.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class RadioParams:
    """Homogeneous radio parameters for every node in the network.

    ``range_override``, when set, pins the transmission range to an exact
    value instead of deriving it from the power budget; use
    :meth:`from_transmission_range` to build a consistent parameter set
    from a target range.
    """

    transmit_power: float
    pathloss_constant: float = 1.0
    pathloss_exponent: float = 2.0
    noise: float = 1.0
    sensitivity_threshold: float = 1.0
    interference_multiplier: float = 2.0
    range_override: float | None = None

    def __post_init__(self):
        if self.transmit_power <= 0.0:
            raise ValueError("transmit_power must be positive")
        if self.pathloss_constant <= 0.0:
            raise ValueError("pathloss_constant must be positive")
        if self.noise <= 0.0:
            raise ValueError("noise must be positive")
        if self.sensitivity_threshold <= 0.0:
            raise ValueError("sensitivity_threshold must be positive")
        if not 2.0 <= self.pathloss_exponent <= 5.0:
            warnings.warn(
                f"pathloss_exponent={self.pathloss_exponent} lies outside the "
                "empirically typical band [2, 5]",
                stacklevel=3,
            )
        if self.interference_multiplier < 1.0:
            raise ValueError("interference_multiplier must be >= 1")
        if self.range_override is not None and self.range_override <= 0.0:
            raise ValueError("range_override must be positive")

    @classmethod
    def from_transmission_range(
        cls,
        range_m: float,
        pathloss_exponent: float = 2.0,
        interference_multiplier: float = 2.0,
    ) -> "RadioParams":
        """Unit-normalized parameters whose transmission range is exactly range_m.

        Pathloss constant, noise and threshold are set to 1 and the transmit
        power is sized so the power budget is consistent with the range.
        """
        range_m = float(range_m)
        if range_m <= 0.0:
            raise ValueError("transmission range must be positive")
        return cls(
            transmit_power=range_m**pathloss_exponent,
            pathloss_constant=1.0,
            pathloss_exponent=pathloss_exponent,
            noise=1.0,
            sensitivity_threshold=1.0,
            interference_multiplier=interference_multiplier,
            range_override=range_m,
        )


def received_power(params: RadioParams, r) -> np.ndarray | float:
    """Power received at distance r (scalar or array), in watts.

    Raises ValueError for r <= 0: the pathloss law is singular at zero
    distance, so co-located transmitter/receiver pairs must be filtered
    by the caller.
    """
    r = np.asarray(r, dtype=np.float64)
    if np.any(r <= 0.0):
        raise ValueError("distance must be positive (co-located pair?)")
    out = params.transmit_power / (params.pathloss_constant * r**params.pathloss_exponent)
    return float(out) if out.ndim == 0 else out


def link_ok(params: RadioParams, r, total_noise: float | None = None):
    """True when the received power over total noise meets the threshold.

    The comparison is inclusive. ``total_noise`` defaults to the baseline
    noise floor; pass an aggregate value to account for interference.
    """
    if total_noise is None:
        total_noise = params.noise
    if np.any(np.asarray(total_noise) <= 0.0):
        raise ValueError("total_noise must be positive")
    ratio = received_power(params, r) / total_noise
    ok = ratio >= params.sensitivity_threshold
    return bool(ok) if np.ndim(ok) == 0 else ok


def transmission_range(params: RadioParams) -> float:
    """Maximum distance at which a link is feasible against the noise floor."""
    if params.range_override is not None:
        return params.range_override
    return float(
        (
            params.transmit_power
            / (params.pathloss_constant * params.sensitivity_threshold * params.noise)
        )
        ** (1.0 / params.pathloss_exponent)
    )


def interference_range(params: RadioParams) -> float:
    """Distance within which a transmitter contributes non-negligible noise."""
    return params.interference_multiplier * transmission_range(params)


def sinr_ok(params: RadioParams, r_signal: float, interferer_distances) -> bool:
    """Reception test with aggregate interference.

    The signal from distance ``r_signal`` is received when its power over
    the noise floor plus the summed power of all interferers meets the
    sensitivity threshold. An empty interferer list reduces exactly to
    :func:`link_ok` against the noise floor.
    """
    sig = received_power(params, r_signal)
    d = np.asarray(interferer_distances, dtype=np.float64)
    interference = float(np.sum(received_power(params, d))) if d.size else 0.0
    return bool(sig / (params.noise + interference) >= params.sensitivity_threshold)
