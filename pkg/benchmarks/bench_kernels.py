"""Compare the compiled and numpy jet-product kernels.

    python3 benchmarks/bench_kernels.py [--points N] [--repeat R]

Times the raw kernel on order-4 jets in 2 and 4 variables, then an
end-to-end order-4 c2 density evaluation with each backend.
"""

import argparse
import time

import numpy as np

from harmonic_ansatz import _kernels
from harmonic_ansatz.jets import jet_space


def best_of(fn, repeat):
    best = np.inf
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def bench_kernel(dim, order, npts, repeat, dtype):
    sp = jet_space(dim, order)
    rng = np.random.default_rng(0)
    a = rng.normal(size=(sp.size, npts)).astype(dtype)
    b = rng.normal(size=(sp.size, npts)).astype(dtype)
    if dtype == complex:
        a = a + 1j * rng.normal(size=a.shape)
        b = b + 1j * rng.normal(size=b.shape)
    out = {}
    ref = None
    for name, mul in _kernels.backends().items():
        o = np.empty_like(a)
        out[name] = best_of(lambda: mul(a, b, sp.I, sp.J, sp.K, o), repeat)
        if ref is None:
            ref = o.copy()
        else:
            assert np.allclose(o, ref, rtol=1e-12, atol=1e-12), f"{name} disagrees"
    return out


def bench_density(npts, repeat):
    from harmonic_ansatz import instanton, potentials
    rho = potentials.ThooftPotential([[0, 0, 0, 0], [3, 0, 0, 0]], [1, 1])
    x = np.random.default_rng(1).normal(size=(4, npts)) * 1.5
    out = {}
    saved = _kernels.jet_mul
    try:
        for name, mul in _kernels.backends().items():
            _kernels.jet_mul = mul
            out[name] = best_of(lambda: instanton.c2_density(rho, x), repeat)
    finally:
        _kernels.jet_mul = saved
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=20000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    print(f"active backend: {_kernels.BACKEND}; available: {', '.join(_kernels.backends())}")
    print(f"{'case':<28}" + "".join(f"{n:>12}" for n in _kernels.backends()) + f"{'speedup':>10}")
    cases = [("jet_mul 2D o4 real", lambda: bench_kernel(2, 4, args.points, args.repeat, float)),
             ("jet_mul 2D o4 complex", lambda: bench_kernel(2, 4, args.points, args.repeat, complex)),
             ("jet_mul 4D o4 real", lambda: bench_kernel(4, 4, args.points, args.repeat, float)),
             ("c2 density 4D", lambda: bench_density(args.points // 10, args.repeat))]
    for label, fn in cases:
        t = fn()
        sp = t["numpy"] / t["cython"] if "cython" in t else float("nan")
        print(f"{label:<28}" + "".join(f"{v * 1e3:>10.2f}ms" for v in t.values()) + f"{sp:>9.1f}x")


if __name__ == "__main__":
    main()
