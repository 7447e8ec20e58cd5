"""2-D rectangular simulation domain with Euclidean or toroidal metric.

Positions are float64 arrays in meters, shape (2,) for a single node or
(n, 2) for a population. A canonical position satisfies 0 <= x < lx and
0 <= y < ly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Domain:
    """Rectangular area of lx-by-ly meters, optionally with periodic boundaries."""

    lx: float
    ly: float
    periodic: bool = True

    def __post_init__(self):
        if not (self.lx > 0.0 and self.ly > 0.0):
            raise ValueError("domain edge lengths must be positive")

    @property
    def edges(self) -> np.ndarray:
        return np.array([self.lx, self.ly])


def canonicalize(p, domain: Domain) -> np.ndarray:
    """Map positions into the domain.

    Periodic domains wrap coordinates modulo the edge lengths; bounded
    domains reflect the excess at the walls (so mobility steps bounce
    instead of piling up on the boundary). Raises ValueError for
    non-finite coordinates.
    """
    p = np.asarray(p, dtype=np.float64)
    if not np.all(np.isfinite(p)):
        raise ValueError("position coordinates must be finite")
    edges = domain.edges
    if domain.periodic:
        out = np.mod(p, edges)
        # float rounding of mod can land exactly on the edge for tiny
        # negative inputs; fold it back to honor the half-open interval
        out = np.where(out >= edges, out - edges, out)
    else:
        folded = np.mod(p, 2.0 * edges)
        out = np.where(folded >= edges, 2.0 * edges - folded, folded)
        out = np.where(out >= edges, np.nextafter(edges, 0.0), out)
    return out


def distance(a, b, domain: Domain) -> np.ndarray | float:
    """Distance between canonical positions, elementwise over leading axes.

    Euclidean for bounded domains; minimum-image convention per axis for
    periodic domains. Symmetric and non-negative.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    d = np.abs(a - b)
    if domain.periodic:
        d = np.minimum(d, domain.edges - d)
    return np.sqrt((d * d).sum(axis=-1))
