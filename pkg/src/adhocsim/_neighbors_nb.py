"""Numba-compiled neighbor-search kernels (default backend).

Same candidate enumeration and arithmetic as ``_neighbors_np``; fastmath is
left off so distances round identically in both backends.
"""

import math

import numpy as np
from numba import njit


@njit(cache=True, inline="always")
def _axis_stencil(ci, ncells, periodic, buf):
    # fills buf with the distinct stencil cells along one axis, returns count
    if ncells >= 3:
        if periodic:
            buf[0] = (ci + ncells - 1) % ncells
            buf[1] = ci
            buf[2] = (ci + 1) % ncells
            return 3
        k = 0
        for d in (-1, 0, 1):
            v = ci + d
            if 0 <= v < ncells:
                buf[k] = v
                k += 1
        return k
    for v in range(ncells):
        buf[v] = v
    return ncells


@njit(cache=True)
def _half_pairs_cell(pos, lx, ly, periodic, range_, cells_x, cells_y, csx, csy,
                     cell_start, cell_nodes):
    n = pos.shape[0]
    cap = 16 + 8 * n
    out_i = np.empty(cap, np.int64)
    out_j = np.empty(cap, np.int64)
    m = 0
    evals = 0
    xs = np.empty(3, np.int64)
    ys = np.empty(3, np.int64)
    for i in range(n):
        xi = pos[i, 0]
        yi = pos[i, 1]
        cix = min(np.int64(xi / csx), cells_x - 1)
        ciy = min(np.int64(yi / csy), cells_y - 1)
        kx = _axis_stencil(cix, cells_x, periodic, xs)
        ky = _axis_stencil(ciy, cells_y, periodic, ys)
        for b in range(ky):
            row = ys[b] * cells_x
            for a in range(kx):
                c = row + xs[a]
                for t in range(cell_start[c], cell_start[c + 1]):
                    j = cell_nodes[t]
                    if j <= i:
                        continue
                    dx = abs(xi - pos[j, 0])
                    dy = abs(yi - pos[j, 1])
                    if periodic:
                        if lx - dx < dx:
                            dx = lx - dx
                        if ly - dy < dy:
                            dy = ly - dy
                    evals += 1
                    if math.sqrt(dx * dx + dy * dy) <= range_:
                        if m == cap:
                            cap *= 2
                            grown_i = np.empty(cap, np.int64)
                            grown_j = np.empty(cap, np.int64)
                            grown_i[:m] = out_i[:m]
                            grown_j[:m] = out_j[:m]
                            out_i = grown_i
                            out_j = grown_j
                        out_i[m] = i
                        out_j[m] = j
                        m += 1
    return out_i[:m], out_j[:m], evals


@njit(cache=True)
def _half_pairs_brute(pos, lx, ly, periodic, range_):
    n = pos.shape[0]
    cap = 16 + 8 * n
    out_i = np.empty(cap, np.int64)
    out_j = np.empty(cap, np.int64)
    m = 0
    for i in range(n):
        xi = pos[i, 0]
        yi = pos[i, 1]
        for j in range(i + 1, n):
            dx = abs(xi - pos[j, 0])
            dy = abs(yi - pos[j, 1])
            if periodic:
                if lx - dx < dx:
                    dx = lx - dx
                if ly - dy < dy:
                    dy = ly - dy
            if math.sqrt(dx * dx + dy * dy) <= range_:
                if m == cap:
                    cap *= 2
                    grown_i = np.empty(cap, np.int64)
                    grown_j = np.empty(cap, np.int64)
                    grown_i[:m] = out_i[:m]
                    grown_j[:m] = out_j[:m]
                    out_i = grown_i
                    out_j = grown_j
                out_i[m] = i
                out_j[m] = j
                m += 1
    return out_i[:m], out_j[:m], n * (n - 1) // 2


@njit(cache=True)
def _csr_from_half_pairs(n, ii, jj):
    counts = np.zeros(n, np.int64)
    for k in range(ii.size):
        counts[ii[k]] += 1
        counts[jj[k]] += 1
    indptr = np.zeros(n + 1, np.int64)
    for v in range(n):
        indptr[v + 1] = indptr[v] + counts[v]
    indices = np.empty(indptr[n], np.int64)
    cursor = indptr[:-1].copy()
    for k in range(ii.size):
        indices[cursor[ii[k]]] = jj[k]
        cursor[ii[k]] += 1
        indices[cursor[jj[k]]] = ii[k]
        cursor[jj[k]] += 1
    for v in range(n):
        indices[indptr[v]:indptr[v + 1]].sort()
    return indptr, indices


def half_pairs_cell(pos, lx, ly, periodic, range_, cells_x, cells_y, csx, csy,
                    cell_start, cell_nodes):
    ii, jj, evals = _half_pairs_cell(
        pos, lx, ly, periodic, range_, cells_x, cells_y, csx, csy,
        cell_start, cell_nodes,
    )
    return ii, jj, int(evals)


def half_pairs_brute(pos, lx, ly, periodic, range_):
    ii, jj, evals = _half_pairs_brute(pos, lx, ly, periodic, range_)
    return ii, jj, int(evals)


def csr_from_half_pairs(n, ii, jj):
    return _csr_from_half_pairs(n, ii, jj)
