import numpy as np
import pytest

from harmonic_ansatz import instanton as I
from harmonic_ansatz import potentials as P
from harmonic_ansatz import quaternion as qt
from harmonic_ansatz.errors import InvalidData, PoleError, SingularGauge
from harmonic_ansatz.quadrature import QuadConfig

RHOS = {
    "basic": P.ThooftPotential(np.zeros((1, 4)), [1.0]),
    "two": P.ThooftPotential([[0, 0, 0, 0], [3, 0, 0, 0]], [1.0, 1.0]),
    "quat3": P.ThooftPotential([[0.2, 0.5, -1, 0.3], [1, -1, 0, 2], [-1, 0.4, 0.8, -0.6]],
                               [1.0, 0.5, 2.0], base=1.3),
    "nonharmonic": P.nonharmonic_control(),
}


@pytest.fixture
def x(rng):
    return rng.normal(size=(4, 40)) * 1.5 + 0.05


@pytest.mark.parametrize("name", list(RHOS))
@pytest.mark.parametrize("d", ["SD", "ASD"])
def test_closed_form_matches_oracles(name, d, x):
    rho = RHOS[name]
    F = I.curvature(rho, x, d)
    E = I.curvature_exact(rho, x, d)
    Fd = I.fd_curvature(I.connection_field(rho, d), x)
    scale = 1 + np.max(np.abs(E.f))
    assert np.max(np.abs(F.f - E.f)) < 1e-12 * scale
    assert np.max(np.abs(F.f - Fd.f)) < 1e-7 * scale


@pytest.mark.parametrize("name", ["basic", "two", "quat3"])
def test_harmonic_ansatz_is_dual(name, x):
    rho = RHOS[name]
    Fp, Fm = I.curvature_densities(rho, x, "SD")
    assert np.max(Fm) < 1e-20 * (1 + np.max(Fp))
    Fp, Fm = I.curvature_densities(rho, x, "ASD")
    assert np.max(Fp) < 1e-20 * (1 + np.max(Fm))


def test_nonharmonic_law(x):
    rho = RHOS["nonharmonic"]
    Fp, Fm = I.curvature_densities(rho, x, "SD")
    law = I.asd_law(rho, x)
    assert np.allclose(Fm, law, rtol=1e-10)
    assert np.min(law) > 0


@pytest.mark.parametrize("name", ["basic", "two", "quat3"])
def test_density_equals_biharmonic(name, x):
    rho = RHOS[name]
    Fp, _ = I.curvature_densities(rho, x, "SD")
    bl = P.biharmonic_log4(rho, x)
    assert np.allclose(Fp, -0.25 * bl, rtol=1e-9)


def test_symmetric_biharmonic_path(rng):
    rho = RHOS["two"]
    t, r = rng.uniform(-2, 5, 30), rng.uniform(0.1, 3, 30)
    x = np.array([t, r, 0 * t, 0 * t])
    assert np.allclose(I.c2_density(rho, x, symmetric_path=True), I.c2_density(rho, x), rtol=1e-9)


def test_basic_is_singular_gauge(x):
    A = I.ansatz_connection(RHOS["basic"], x, "ASD")
    assert np.allclose(A.a, I.singular_gauge_basic(x).a, atol=1e-13)


def test_gauge_to_standard(x):
    G = I.gauge_transform4(I.singular_gauge_basic, lambda y: qt.qinv(y), x)
    assert np.allclose(G.a, I.standard_gauge_basic(x).a, atol=1e-9)
    # gauge-invariant density
    Fs = I.fd_curvature(I.standard_gauge_basic, x)
    Fb = I.curvature(RHOS["basic"], x, "ASD")
    assert np.allclose(qt.density(Fs), qt.density(Fb), rtol=1e-6)


def test_singular_gauge_error():
    with pytest.raises(SingularGauge):
        I.gauge_transform4(I.singular_gauge_basic, lambda y: 0 * y, np.ones(4))


def test_duality_parsing():
    assert I._duality("sd") == I.Duality.SD
    with pytest.raises(InvalidData):
        I._duality("both")


@pytest.mark.parametrize("b,lam", [((0.0,), (1.0,)), ((0.0, 3.0), (1.0, 2.0))])
def test_adhm_pullback_matches_thooft(b, lam, rng):
    data = I.AdhmData(b, lam)
    x = rng.normal(size=(4, 25)) * 1.5
    F = I.fd_curvature(lambda y: I.adhm_connection(data, y), x)
    Fp, Fm = qt.sd_asd_split(F)
    ref = I.curvature_densities(data.potential(), x, "ASD")[1]
    assert np.max(qt.density(Fp)) < 1e-12 * np.max(ref)
    assert np.allclose(qt.density(F), ref, rtol=1e-6)


def test_adhm_validation():
    with pytest.raises(InvalidData):
        I.AdhmData((0, 0), (1, 1))
    with pytest.raises(InvalidData):
        I.AdhmData((0,), (0,))
    with pytest.raises(PoleError):
        I.adhm_map(I.AdhmData((0,), (1,)), np.zeros(4))
    f = I.adhm_map(I.AdhmData((0, 1), (1, 2)), np.array([0.5, 1, 0, 0]))
    assert f.shape == (3, 4, 1)


def test_chern2_basic():
    res = I.chern2(RHOS["basic"])
    assert res.converged
    assert res.value == pytest.approx(1.0, abs=1e-6)
    assert I.chern2(RHOS["basic"], "ASD").value == pytest.approx(-res.value)


@pytest.mark.slow
def test_chern2_nonsymmetric_full_path():
    rho = P.ThooftPotential([[0, 0, 0, 0], [0, 2, 0, 0]], [1.0, 1.0])
    res = I.chern2(rho, cfg=QuadConfig(max_levels=0, radius=32))
    assert res.value == pytest.approx(2.0, abs=5e-2)
