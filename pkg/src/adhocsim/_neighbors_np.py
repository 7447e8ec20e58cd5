"""Pure-numpy neighbor-search kernels (fallback backend).

These mirror the numba kernels in ``_neighbors_nb``: identical candidate
enumeration (same stencil, same i<j filter, same minimum-image arithmetic),
so pair sets and pair-evaluation counts match bit for bit.
"""

import numpy as np

from ._util import grouped_arange


def _axis_stencil(ci: np.ndarray, ncells: int, periodic: bool):
    """Per-node cell indices covered along one axis, plus a validity mask.

    With three or more cells the stencil is the cell itself and both
    neighbors (wrapped when periodic, clipped at the walls otherwise).
    With one or two cells every cell is already in view.
    """
    n = ci.shape[0]
    if ncells >= 3:
        vals = ci[:, None] + np.array([-1, 0, 1], dtype=np.int64)
        if periodic:
            vals %= ncells
            mask = np.ones_like(vals, dtype=bool)
        else:
            mask = (vals >= 0) & (vals < ncells)
            vals = np.clip(vals, 0, ncells - 1)
        return vals, mask
    vals = np.broadcast_to(np.arange(ncells, dtype=np.int64), (n, ncells))
    return vals, np.ones_like(vals, dtype=bool)


def half_pairs_cell(pos, lx, ly, periodic, range_, cells_x, cells_y, csx, csy,
                    cell_start, cell_nodes):
    """Pairs (i < j) within range, scanning only each node's 3x3 cell stencil.

    Returns (i, j, pair_evals) where pair_evals counts the distance
    evaluations actually performed.
    """
    n = pos.shape[0]
    if n == 0:
        return np.empty(0, np.int64), np.empty(0, np.int64), 0
    cix = np.minimum((pos[:, 0] / csx).astype(np.int64), cells_x - 1)
    ciy = np.minimum((pos[:, 1] / csy).astype(np.int64), cells_y - 1)

    xv, xm = _axis_stencil(cix, cells_x, periodic)
    yv, ym = _axis_stencil(ciy, cells_y, periodic)
    # every (node, x-cell, y-cell) combination in the stencil
    cand_cell = yv[:, :, None] * cells_x + xv[:, None, :]
    cand_mask = ym[:, :, None] & xm[:, None, :]
    node_rep = np.broadcast_to(
        np.arange(n, dtype=np.int64)[:, None, None], cand_cell.shape
    )
    cells = cand_cell[cand_mask]
    nodes = node_rep[cand_mask]

    occ = cell_start[cells + 1] - cell_start[cells]
    flat = np.repeat(cell_start[cells], occ) + grouped_arange(occ)
    jj = cell_nodes[flat]
    ii = np.repeat(nodes, occ)
    keep = jj > ii
    ii = ii[keep]
    jj = jj[keep]
    evals = int(ii.size)

    d = np.abs(pos[ii] - pos[jj])
    if periodic:
        d = np.minimum(d, np.array([lx, ly]) - d)
    within = np.sqrt(d[:, 0] * d[:, 0] + d[:, 1] * d[:, 1]) <= range_
    return ii[within], jj[within], evals


def half_pairs_brute(pos, lx, ly, periodic, range_):
    """All pairs (i < j) within range by exhaustive comparison, blockwise."""
    n = pos.shape[0]
    evals = n * (n - 1) // 2
    if n < 2:
        return np.empty(0, np.int64), np.empty(0, np.int64), evals
    edges = np.array([lx, ly])
    block = max(1, 4_000_000 // n)
    parts_i, parts_j = [], []
    for a in range(0, n, block):
        b = min(a + block, n)
        d = np.abs(pos[a:b, None, :] - pos[None, :, :])
        if periodic:
            d = np.minimum(d, edges - d)
        dist = np.sqrt(d[:, :, 0] * d[:, :, 0] + d[:, :, 1] * d[:, :, 1])
        upper = np.arange(n)[None, :] > np.arange(a, b)[:, None]
        iw, jw = np.nonzero((dist <= range_) & upper)
        parts_i.append(iw.astype(np.int64) + a)
        parts_j.append(jw.astype(np.int64))
    return np.concatenate(parts_i), np.concatenate(parts_j), evals


def csr_from_half_pairs(n: int, ii: np.ndarray, jj: np.ndarray):
    """Symmetric CSR adjacency (sorted rows) from undirected half pairs."""
    a = np.concatenate([ii, jj])
    b = np.concatenate([jj, ii])
    order = np.argsort(a * np.int64(n) + b)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(a, minlength=n), out=indptr[1:])
    return indptr, b[order]
