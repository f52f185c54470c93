"""Acceptance suite: one printed PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v`` (lines are printed even
when output capture is on).
"""

import time

import numpy as np
import pytest

from harmonic_ansatz import gauge_holonomy as G
from harmonic_ansatz import instanton as I
from harmonic_ansatz import potentials as P
from harmonic_ansatz import quaternion as qt
from harmonic_ansatz import reduction as R
from harmonic_ansatz import vortex as V
from harmonic_ansatz.potentials import DISC, HALFPLANE

from conftest import disc_points, halfplane_points


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {n:>2}: {detail}")
        assert ok, detail
    return emit


def ball_points(rng, n, radius=5.0):
    x = rng.normal(size=(4, n))
    x /= np.linalg.norm(x, axis=0)
    return x * radius * rng.uniform(0, 1, n) ** 0.25


def thooft_family(rng):
    """k = 1, 2, 3 with centers on the real axis and at random quaternions."""
    out = []
    for k in (1, 2, 3):
        real = np.zeros((k, 4))
        real[:, 0] = rng.uniform(-3, 3, k)
        out.append((f"k={k} real", P.ThooftPotential(real, rng.uniform(0.5, 2, k))))
        out.append((f"k={k} quat", P.ThooftPotential(rng.uniform(-3, 3, (k, 4)),
                                                     rng.uniform(0.5, 2, k))))
    return out


def basic():
    return P.HalfplaneSym([0.0], [1.0])


def two_zero():
    return P.HalfplaneSym.from_zeros([1j, 1 + 2j])


def test_criterion_01_duality_residuals(rng, report):
    t0 = time.perf_counter()
    worst = 0.0
    for _, rho in thooft_family(rng):
        x = ball_points(rng, 200)
        for d in (I.Duality.SD, I.Duality.ASD):
            Fp, Fm = I.curvature_densities(rho, x, d)
            worst = max(worst, np.max(Fm if d == I.Duality.SD else Fp))
    rho = P.nonharmonic_control()
    x = ball_points(rng, 200)
    _, Fm = I.curvature_densities(rho, x, I.Duality.SD)
    law = I.asd_law(rho, x)
    rel = np.max(np.abs(Fm - law) / np.abs(law))
    dt = time.perf_counter() - t0
    ok = worst < 1e-10 and rel < 1e-8 and dt < 10
    report(1, ok, f"max off-duality {worst:.2e} (<1e-10), (3/8) law rel {rel:.2e} (<1e-8), "
                  f"{dt:.1f}s (<10s)")


def test_criterion_02_density_identity(rng, report):
    t0 = time.perf_counter()
    pots = [rho for _, rho in thooft_family(rng)] + [P.ConstPotential(2.0)]
    pots += [P.lift_potential(phi) for phi in
             (basic(), two_zero(), P.FHP1(), P.FHP2(), P.DiscFamily(2), P.DiscFamily(2.5),
              P.DiscFamily(3.7))]
    worst = 0.0
    for rho in pots:
        x = ball_points(rng, 200)
        Fp, _ = I.curvature_densities(rho, x, I.Duality.SD)
        q = 0.25 * P.biharmonic_log4(rho, x)
        den = np.maximum(np.abs(Fp), np.abs(q))
        rel = np.where(den > 0, np.abs(Fp + q) / np.where(den > 0, den, 1), 0.0)
        worst = max(worst, np.max(rel))
    # the flat c = 1 lift is rho = 1: both sides vanish, so check absolutely
    rho = P.lift_potential(P.DiscFamily(1))
    x = ball_points(rng, 200)
    flat = np.max(np.abs(I.curvature_densities(rho, x, I.Duality.SD)[0]
                         + 0.25 * P.biharmonic_log4(rho, x)))
    dt = time.perf_counter() - t0
    report(2, worst < 1e-8 and flat < 1e-12 and dt < 10,
           f"|F+|^2 + DeltaDelta log rho / 4 rel {worst:.2e} (<1e-8) over {len(pots)} potentials, "
           f"flat lift abs {flat:.1e} (<1e-12), {dt:.1f}s (<10s)")


def test_criterion_03_c2(report):
    cases = [("basic", P.ThooftPotential(np.zeros((1, 4)), [1.0]), 1.0),
             ("two-center", P.ThooftPotential([[0, 0, 0, 0], [3, 0, 0, 0]], [1.0, 1.0]), 2.0)]
    parts, ok = [], True
    for name, rho, expected in cases:
        t0 = time.perf_counter()
        val = I.chern2(rho).value
        dt = time.perf_counter() - t0
        ok &= abs(val - expected) < 5e-2 and dt < 60
        parts.append(f"{name} c2 = {val:.4f} ({dt:.1f}s)")
    report(3, ok, "; ".join(parts) + " (tol 5e-2, <60s each)")


def test_criterion_04_vortex_residuals(rng, report):
    t0 = time.perf_counter()
    cases = [("basic", basic(), HALFPLANE), ("two-zero", two_zero(), HALFPLANE),
             ("fhp1", P.FHP1(), DISC), ("fhp2", P.FHP2(), DISC)]
    cases += [(f"disc c={c}", P.DiscFamily(c), DISC) for c in (1, 2, 2.5, 3.7)]
    worst = 0.0
    for _, phi, model in cases:
        pts = halfplane_points(rng, 200) if model == HALFPLANE else disc_points(rng, 200)
        for kind in V.KINDS:
            r1, r2 = V.vortex_residuals(phi, pts, kind, model)
            worst = max(worst, np.max(r1), np.max(r2))
    dt = time.perf_counter() - t0
    report(4, worst < 1e-9 and dt < 10,
           f"max residual {worst:.2e} (<1e-9) over {len(cases)} potentials, {dt:.1f}s (<10s)")


def test_criterion_05_c1(report):
    cases = [("basic", basic(), 1.0), ("fhp1", P.FHP1(), 1.5), ("fhp2", P.FHP2(), 1.5)]
    cases += [(f"disc c={c}", P.DiscFamily(c), c - 1) for c in (1, 1.5, 2, 2.5, 3.7)]
    worst, slowest = 0.0, 0.0
    for _, phi, expected in cases:
        t0 = time.perf_counter()
        val = V.chern1(phi).value
        slowest = max(slowest, time.perf_counter() - t0)
        worst = max(worst, abs(val - expected))
    report(5, worst < 5e-3 and slowest < 30,
           f"max |c1 - expected| {worst:.2e} (<5e-3), slowest {slowest:.2f}s (<30s)")


def test_criterion_06_reduction_identity(report):
    parts, ok = [], True
    for name, phi in (("basic", basic()), ("two-zero", two_zero())):
        c2, c1 = R.chern_reduction_check(phi)
        ok &= abs(c2.value - c1.value) < 5e-2
        parts.append(f"{name} c2 {c2.value:.4f} vs c1 {c1.value:.4f}")
    report(6, ok, "; ".join(parts) + " (tol 5e-2)")


def test_criterion_07_higgs_zeros(report):
    target = np.array([1j, 1 + 2j])
    phi = P.HalfplaneSym.from_zeros(target)
    found = np.array(sorted((z.point.coord for z in V.higgs_zeros(phi)), key=lambda c: c.real))
    err = np.max(np.abs(found - target)) if found.shape == target.shape else np.inf
    c1 = V.chern1(phi).value
    report(7, err < 1e-8 and abs(c1 - 2) < 5e-3,
           f"zeros {np.round(found, 10).tolist()} err {err:.2e} (<1e-8), c1 = {c1:.5f}")


def test_criterion_08_gauge_machinery(rng, report):
    chi = G.GaugeChi(lambda W: (W * W).imag, DISC, "Im w^2")
    w = disc_points(rng, 2000)
    w = w[np.abs(np.exp(2j * chi(w)) - 1) >= 0.05][:200]
    (p1, p2), (m1, m2) = G.pair_residuals_from_chi(chi, w)
    res = max(np.max(p1), np.max(p2), np.max(m1), np.max(m2))
    plus, minus = G.pair_from_chi(chi, w)
    g = G.apply_gauge(plus, chi)
    rel = max(np.max(np.abs(g.phi - minus.phi)), np.max(np.abs(g.a - minus.a)))
    w500 = disc_points(rng, 500)
    T = np.max(np.abs(np.array(G.fhp_T_original(w500)) - np.array(G.fhp_T(w500))))
    mono = 0.0
    for c in (2.5, 3.7):
        rf, rc = G.monodromy_residuals(G.MonodromyFamily(c), disc_points(rng, 200))
        mono = max(mono, np.max(rf), np.max(rc))
    ok = res < 1e-9 and rel < 1e-9 and T < 1e-10 and mono < 1e-9
    report(8, ok, f"pair residual {res:.2e}, gauge relation {rel:.2e} (<1e-9); "
                  f"T1/T2 {T:.2e} (<1e-10); monodromy {mono:.2e} (<1e-9)")


def test_criterion_09_holonomy(report):
    parts, ok = [], True
    for c in (2.0, 2.5, 3.7):
        fam = G.MonodromyFamily(c)
        d = [abs(G.holonomy(fam, r) - G.expected_limit(c)) for r in (0.1, 0.01, 1e-3)]
        ok &= d[2] < 0.02 and d[0] >= d[1] >= d[2]
        parts.append(f"c={c}: {d[2]:.1e}")
    alpha = G.holonomy_parameter(2.5)
    ok &= alpha == 0.25
    report(9, ok, "|hol - e^{2 pi i c}| at r=1e-3 " + ", ".join(parts) + f"; alpha(2.5) = {alpha}")


def test_criterion_10_adhm(rng, report):
    worst = 0.0
    for b, lam in (((0.0,), (1.0,)), ((0.0, 3.0), (1.0, 2.0))):
        data = I.AdhmData(b, lam)
        x = ball_points(rng, 50)
        dens = qt.density(I.fd_curvature(lambda y: I.adhm_connection(data, y), x))
        ref = qt.density(I.curvature(data.potential(), x, I.Duality.ASD))
        worst = max(worst, np.max(np.abs(dens - ref) / ref))
    report(10, worst < 1e-4, f"ADHM vs 't Hooft density rel {worst:.2e} (<1e-4)")


def test_criterion_11_energy(report):
    parts, ok = [], True
    for name, phi, c1 in (("basic", basic(), 1.0), ("fhp1", P.FHP1(), 1.5),
                          ("fhp2", P.FHP2(), 1.5)):
        e = R.reduced_action(phi).value
        rel = abs(e - 4 * np.pi * c1) / (4 * np.pi * c1)
        ok &= rel < 2e-2
        parts.append(f"{name} YMH/4pi = {e / (4 * np.pi):.5f}")
    report(11, ok, "; ".join(parts) + " (tol 2e-2 rel)")
