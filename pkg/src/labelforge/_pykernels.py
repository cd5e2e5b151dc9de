"""Numpy implementations of the kernels in ``_ckernels.pyx``.

These also accept object-dtype cost matrices holding Python ints, which the
tree builder uses once int64 could overflow.
"""

import numpy as np


def pair_argmin(cost, comp):
    n = cost.shape[0]
    mask = comp[:, None] != comp[None, :]
    mask &= np.triu(np.ones((n, n), dtype=bool), 1)
    us, vs = np.nonzero(mask)
    if us.size == 0:
        return -1, -1
    # nonzero is row-major, and argmin returns the first minimum.
    i = int(np.argmin(cost[us, vs]))
    return int(us[i]), int(vs[i])


def add_crossing_weight(cost, s, w):
    sb = np.asarray(s, dtype=bool)
    ones = np.flatnonzero(sb)
    zeros = np.flatnonzero(~sb)
    if ones.size == 0 or zeros.size == 0:
        return
    cost[np.ix_(ones, zeros)] += w
    cost[np.ix_(zeros, ones)] += w


def row_alternations(mat):
    mat = np.asarray(mat, dtype=bool)
    if mat.shape[1] < 2:
        return np.zeros(mat.shape[0], dtype=np.int64)
    return np.count_nonzero(mat[:, 1:] != mat[:, :-1], axis=1).astype(np.int64)
