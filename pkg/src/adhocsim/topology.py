"""Network topology from node positions: cell-linked-list neighbor search.

The communication and interference graphs are random geometric graphs: an
edge exists between two nodes whenever their distance is at most the
relevant radio range (inclusive). Neighbor lists are rebuilt from scratch
after every position update.

Construction methods:

* :func:`neighbors_cell_list` hashes nodes into a grid of cells whose edge
  is at least the search range, then scans only each node's own cell and
  the eight surrounding cells. With N nodes and an average of N_c nodes
  per cell this costs O(N * N_c) distance evaluations.
* :func:`neighbors_brute_force` compares all N(N-1)/2 pairs. It serves as
  the correctness oracle for the cell list and as the benchmark baseline.

Both record ``pair_evals``, the number of distance evaluations performed,
which is the machine-independent cost measure used by the benchmarks.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from . import backend
from . import _neighbors_np
from .geometry import Domain

if backend.NUMBA_ENABLED:
    from . import _neighbors_nb as _kernels
else:
    _kernels = _neighbors_np


@dataclass(frozen=True, eq=False)
class CellGrid:
    """Spatial hash of node ids into grid cells (CSR occupancy layout).

    Cell edges are the domain edge divided by the number of cells, so the
    cells tile the domain exactly and are never smaller than the search
    range the grid was built for.
    """

    cells_x: int
    cells_y: int
    cell_size_x: float
    cell_size_y: float
    cell_start: np.ndarray = field(repr=False)  # (cells_x*cells_y + 1,) offsets
    cell_nodes: np.ndarray = field(repr=False)  # node ids grouped by cell


class NeighborLists:
    """Per-node sorted neighbor ids in CSR layout.

    Symmetric by construction (homogeneous transmit power), no self
    entries. ``pair_evals`` counts the distance evaluations spent building
    the lists.
    """

    __slots__ = ("n_nodes", "indptr", "indices", "pair_evals")

    def __init__(self, n_nodes: int, indptr: np.ndarray, indices: np.ndarray,
                 pair_evals: int):
        self.n_nodes = n_nodes
        self.indptr = indptr
        self.indices = indices
        self.pair_evals = pair_evals

    def neighbors_of(self, i: int) -> np.ndarray:
        return self.indices[self.indptr[i]:self.indptr[i + 1]]

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def n_edges(self) -> int:
        return int(self.indices.size) // 2

    def same_sets(self, other: "NeighborLists") -> bool:
        """True when both hold identical per-node neighbor sets."""
        return (
            self.n_nodes == other.n_nodes
            and np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.indices, other.indices)
        )

    def __repr__(self):
        return (f"NeighborLists(n_nodes={self.n_nodes}, "
                f"edges={self.n_edges()}, pair_evals={self.pair_evals})")


def cell_of(p, grid: CellGrid) -> tuple[int, int]:
    """Grid cell (ix, iy) containing a canonical position."""
    p = np.asarray(p, dtype=np.float64)
    ix = min(int(p[0] / grid.cell_size_x), grid.cells_x - 1)
    iy = min(int(p[1] / grid.cell_size_y), grid.cells_y - 1)
    return ix, iy


def build_grid(positions, d: Domain, range_: float) -> CellGrid:
    """Hash canonical positions into a grid serving the given search range.

    The number of cells per axis is floor(edge / range): cells tile the
    domain exactly and their size is >= range, which keeps the 3x3 stencil
    sufficient. Raises when the range exceeds a domain edge; warns when
    fewer than three cells fit per axis, where the cell list cannot beat
    brute force.
    """
    positions = np.asarray(positions, dtype=np.float64).reshape(-1, 2)
    if range_ <= 0.0:
        raise ValueError("search range must be positive")
    cells_x = int(d.lx / range_)
    cells_y = int(d.ly / range_)
    if cells_x < 1 or cells_y < 1:
        raise ValueError(
            f"range {range_} exceeds domain ({d.lx} x {d.ly})"
        )
    # float rounding of the quotient must never leave a cell edge below the
    # range, or the 3x3 stencil could miss a boundary pair
    while cells_x > 1 and d.lx / cells_x < range_:
        cells_x -= 1
    while cells_y > 1 and d.ly / cells_y < range_:
        cells_y -= 1
    if range_ > min(d.lx, d.ly) / 3.0:
        warnings.warn(
            "search range exceeds a third of the domain edge; the cell list "
            "degenerates toward an all-pairs scan",
            stacklevel=2,
        )
    csx = d.lx / cells_x
    csy = d.ly / cells_y
    n = positions.shape[0]
    ix = np.minimum((positions[:, 0] / csx).astype(np.int64), cells_x - 1)
    iy = np.minimum((positions[:, 1] / csy).astype(np.int64), cells_y - 1)
    cid = iy * cells_x + ix
    counts = np.bincount(cid, minlength=cells_x * cells_y)
    cell_start = np.zeros(cells_x * cells_y + 1, dtype=np.int64)
    np.cumsum(counts, out=cell_start[1:])
    # stable sort groups ids by cell while keeping them ascending per cell
    cell_nodes = np.argsort(cid, kind="stable").astype(np.int64)
    return CellGrid(cells_x, cells_y, csx, csy, cell_start, cell_nodes)


def _as_lists(n: int, ii: np.ndarray, jj: np.ndarray, evals: int) -> NeighborLists:
    indptr, indices = _kernels.csr_from_half_pairs(n, ii, jj)
    return NeighborLists(n, indptr, indices, evals)


def neighbors_cell_list(positions, d: Domain, range_: float) -> NeighborLists:
    """Neighbor lists via the cell-linked-list scan (O(N * N_c))."""
    positions = np.ascontiguousarray(positions, dtype=np.float64).reshape(-1, 2)
    grid = build_grid(positions, d, range_)
    ii, jj, evals = _kernels.half_pairs_cell(
        positions, d.lx, d.ly, d.periodic, float(range_),
        grid.cells_x, grid.cells_y, grid.cell_size_x, grid.cell_size_y,
        grid.cell_start, grid.cell_nodes,
    )
    return _as_lists(positions.shape[0], ii, jj, evals)


def neighbors_brute_force(positions, d: Domain, range_: float) -> NeighborLists:
    """Neighbor lists via the all-pairs scan (O(N^2) oracle and baseline)."""
    positions = np.ascontiguousarray(positions, dtype=np.float64).reshape(-1, 2)
    if range_ <= 0.0:
        raise ValueError("search range must be positive")
    ii, jj, evals = _kernels.half_pairs_brute(
        positions, d.lx, d.ly, d.periodic, float(range_)
    )
    return _as_lists(positions.shape[0], ii, jj, evals)


def export_graph(lists: NeighborLists) -> np.ndarray:
    """Undirected edge list (i < j), sorted lexicographically, shape (m, 2)."""
    ii = np.repeat(np.arange(lists.n_nodes, dtype=np.int64), lists.degrees())
    jj = lists.indices
    keep = jj > ii
    return np.column_stack([ii[keep], jj[keep]])
