"""Pure-numpy twin of the compiled jet product in ``_jetcore.pyx``."""

import numpy as np

# Points per gather chunk; keeps the (T, chunk) temporary small.
_CHUNK = 2048


def jet_mul(a, b, I, J, K, out):
    starts = np.flatnonzero(np.r_[True, K[1:] != K[:-1]])
    targets = K[starts]
    n = a.shape[1]
    for lo in range(0, n, _CHUNK):
        hi = min(lo + _CHUNK, n)
        prod = a[I, lo:hi] * b[J, lo:hi]
        out[:, lo:hi] = 0
        out[targets, lo:hi] = np.add.reduceat(prod, starts, axis=0)
