"""Small array helpers shared by the topology and epidemic modules."""

import numpy as np


def grouped_arange(counts: np.ndarray) -> np.ndarray:
    """Concatenation of arange(c) for each c in counts, without a Python loop."""
    counts = np.asarray(counts, dtype=np.int64)
    total = int(counts.sum())
    if total == 0:
        return np.empty(0, dtype=np.int64)
    ends = np.cumsum(counts)
    return np.arange(total, dtype=np.int64) - np.repeat(ends - counts, counts)


def gather_rows(indptr: np.ndarray, indices: np.ndarray, rows: np.ndarray):
    """Concatenate CSR rows.

    Returns (values, counts): the row contents back to back, and the length
    of each requested row.
    """
    rows = np.asarray(rows, dtype=np.int64)
    counts = indptr[rows + 1] - indptr[rows]
    flat = np.repeat(indptr[rows], counts) + grouped_arange(counts)
    return indices[flat], counts
