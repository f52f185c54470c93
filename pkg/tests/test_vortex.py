import numpy as np
import pytest

from harmonic_ansatz import potentials as P
from harmonic_ansatz import vortex as V
from harmonic_ansatz.errors import InvalidData
from harmonic_ansatz.potentials import DISC, HALFPLANE
from harmonic_ansatz.vortex import ANTIVORTEX, VORTEX, HyperPoint

from conftest import disc_points, halfplane_points


def basic():
    return P.HalfplaneSym([0.0], [1.0])


def builtins():
    return [
        ("basic", basic(), HALFPLANE),
        ("two-zero", P.HalfplaneSym.from_zeros([1j, 1 + 2j]), HALFPLANE),
        ("fhp1", P.FHP1(), DISC),
        ("fhp2", P.FHP2(), DISC),
        ("disc-1", P.DiscFamily(1), DISC),
        ("disc-2", P.DiscFamily(2), DISC),
        ("disc-2.5", P.DiscFamily(2.5), DISC),
        ("disc-3.7", P.DiscFamily(3.7), DISC),
    ]


def test_disc_map_examples():
    assert V.disc_map(HyperPoint(HALFPLANE, 1j)).coord == pytest.approx(0)
    assert V.disc_map(HyperPoint(DISC, 0)).coord == pytest.approx(1j)
    p = HyperPoint(HALFPLANE, 0.3 + 2.1j)
    assert p.to(DISC).to(HALFPLANE).coord == pytest.approx(p.coord, abs=1e-14)


def test_hyperpoint_validation():
    with pytest.raises(InvalidData):
        HyperPoint(HALFPLANE, 1.0)
    with pytest.raises(InvalidData):
        HyperPoint(DISC, 1.5)
    with pytest.raises(InvalidData):
        HyperPoint("sphere", 0.1)
    with pytest.raises(InvalidData):
        V.vortex_from_potential(basic(), [HyperPoint(DISC, 0.1), HyperPoint(HALFPLANE, 1j)])
    with pytest.raises(InvalidData):
        V.vortex_from_potential(basic(), 0.5j, kind="monopole")


def test_basic_higgs_closed_form(rng):
    z = halfplane_points(rng, 50)
    s = V.vortex_from_potential(basic(), z)
    expected = 1j * np.conj(z) * (1 + z * z) / (z * (1 + z * np.conj(z)))
    assert np.allclose(s.phi, expected, atol=1e-13)
    assert abs(V.vortex_from_potential(basic(), 1j).phi[0]) < 1e-15


def test_flat_disc_vortex_unit_modulus(rng):
    w = disc_points(rng, 50)
    s = V.vortex_from_potential(P.DiscFamily(1), w, model=DISC)
    expected = -1j * (1 + w) / (1 + np.conj(w)) * (1 - np.conj(w)) / (1 - w)
    assert np.allclose(s.phi, expected, atol=1e-13)
    assert np.allclose(np.abs(s.phi), 1, atol=1e-14)


@pytest.mark.parametrize("name,phi,model", builtins(), ids=[b[0] for b in builtins()])
@pytest.mark.parametrize("kind", [VORTEX, ANTIVORTEX])
def test_residuals_builtin(rng, name, phi, model, kind):
    pts = halfplane_points(rng, 200) if model == HALFPLANE else disc_points(rng, 200)
    r1, r2 = V.vortex_residuals(phi, pts, kind, model)
    assert np.max(r1) < 1e-9
    assert np.max(r2) < 1e-9


def test_antivortex_is_conjugate(rng):
    z = halfplane_points(rng, 20)
    v = V.vortex_from_potential(basic(), z)
    a = V.vortex_from_potential(basic(), z, ANTIVORTEX)
    assert np.allclose(a.a, -v.a)
    assert np.allclose(a.phi, -np.conj(v.phi))


@pytest.mark.parametrize("kind", [VORTEX, ANTIVORTEX])
def test_nonharmonic_control_residuals(rng, kind):
    # both equations reduce to harmonicity: res1 = |lap phi / phi| / 2, res2 = |lap phi / phi|
    phi = P.nonharmonic_hyp_control()
    z = halfplane_points(rng, 50)
    r1, r2 = V.vortex_residuals(phi, z, kind)
    lap = np.abs(P.harmonic_residual_hyp(phi, z, HALFPLANE) / phi(z))
    assert np.allclose(r1, lap / 2, rtol=1e-10)
    assert np.allclose(r2, lap, rtol=1e-10)
    assert np.min(r2) > 1e-3


def test_model_covariance(rng):
    # |Phi| and the residuals are gauge invariant, so both models must agree
    phi = P.FHP2()
    w = disc_points(rng, 30)
    z = P.disc_to_half(w)
    sd = V.vortex_from_potential(phi, w, model=DISC)
    sh = V.vortex_from_potential(phi, z, model=HALFPLANE)
    assert np.allclose(np.abs(sd.phi), np.abs(sh.phi), atol=1e-12)
    r1, r2 = V.vortex_residuals(phi, z, model=HALFPLANE)
    assert max(np.max(r1), np.max(r2)) < 1e-9


def test_field_rows_columns(rng):
    rows = V.field_rows(basic(), halfplane_points(rng, 3))
    assert len(rows) == 3
    assert tuple(rows[0]) == V.FIELD_COLUMNS


def test_boundary_profile_decreasing():
    prof = V.boundary_profile(basic())
    assert np.all(np.abs(prof) < 1e-3)
    assert abs(prof[1]) < abs(prof[0])


@pytest.mark.parametrize("phi,expected", [
    (basic(), 1.0),
    (P.FHP2(), 1.5),
    (P.HalfplaneSym.from_zeros([1j, 1 + 2j]), 2.0),
    (P.DiscFamily(1), 0.0),
    (P.DiscFamily(3.7), 2.7),
])
def test_chern1(phi, expected):
    res = V.chern1(phi)
    assert res.value == pytest.approx(expected, abs=5e-3)
    assert res.converged


def test_higgs_zeros_two_points():
    phi = P.HalfplaneSym.from_zeros([1j, 1 + 2j])
    zeros = V.higgs_zeros(phi)
    pts = [z.point.coord for z in zeros]
    assert len(pts) == 2
    assert np.allclose(sorted(pts, key=lambda c: c.real), [1j, 1 + 2j], atol=1e-8)
    assert V.zero_count(zeros) == 2
    assert all(z.multiplicity == 1 for z in zeros)


def test_higgs_zeros_literal_and_flat():
    zeros = V.higgs_zeros(P.HalfplaneSym.literal([1 + np.sqrt(2) * 1j]))
    assert len(zeros) == 1
    assert zeros[0].point.coord == pytest.approx(1 + np.sqrt(2) * 1j, abs=1e-8)
    assert V.higgs_zeros(P.HalfplaneSym()) == []


def test_winding():
    th = 2 * np.pi * np.arange(100) / 100
    assert V.winding(np.exp(3j * th)) == pytest.approx(3)


def test_fractional_winding_branch_point():
    assert V.fractional_winding(P.FHP1(), radius=1e-4) == pytest.approx(1.5, abs=2e-3)
    assert V.fractional_winding(P.FHP2(), radius=1e-4) == pytest.approx(1.5, abs=2e-3)
    assert V.fractional_winding(P.DiscFamily(3.7), radius=1e-4) == pytest.approx(2.7, abs=2e-3)
