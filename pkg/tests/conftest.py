import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def halfplane_points(rng, n, tmax=3.0, rmin=0.05, rmax=4.0):
    return rng.uniform(-tmax, tmax, n) + 1j * rng.uniform(rmin, rmax, n)


def disc_points(rng, n, rmin=0.05, rmax=0.95, min_imag=1e-3):
    out = []
    while len(out) < n:
        rad = np.sqrt(rng.uniform(rmin ** 2, rmax ** 2))
        w = rad * np.exp(1j * rng.uniform(-np.pi, np.pi))
        if abs(w.imag) > min_imag:
            out.append(w)
    return np.array(out)
