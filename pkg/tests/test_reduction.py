import numpy as np
import pytest

from harmonic_ansatz import instanton as I
from harmonic_ansatz import potentials as P
from harmonic_ansatz import quaternion as qt
from harmonic_ansatz import reduction as R
from harmonic_ansatz import vortex as V
from harmonic_ansatz.errors import AxisError, InvalidData, NotSymmetric
from harmonic_ansatz.quadrature import QuadConfig
from harmonic_ansatz.quaternion import QOneForm

from conftest import halfplane_points


def basic():
    return P.HalfplaneSym([0.0], [1.0])


def two_zero():
    return P.HalfplaneSym.from_zeros([1j, 1 + 2j])


@pytest.mark.parametrize("phi", [basic(), two_zero(), P.FHP2()], ids=["basic", "two", "fhp2"])
def test_reduced_ansatz_is_vortex(rng, phi):
    z = halfplane_points(rng, 30)
    A = I.connection_field(P.lift_potential(phi), I.Duality.SD)
    pair = R.reduce_connection(A, z.real, z.imag)
    s = V.vortex_from_potential(phi, z, model="halfplane")
    assert np.allclose(pair.a_t, s.a[0], atol=1e-11)
    assert np.allclose(pair.a_r, s.a[1], atol=1e-11)
    assert np.allclose(pair.phi, s.phi, atol=1e-11)


def test_zero_connection_gives_phi_i():
    pair = R.reduce_connection(lambda x: QOneForm.zeros(x.shape[1]), [0.0, 1.0], [1.0, 2.0])
    assert np.allclose(pair.phi, 1j)
    assert np.allclose(pair.phi2, 0)


def test_not_symmetric():
    def A(x):
        a = np.zeros((4, 4, x.shape[1]))
        a[0, 2] = 1.0  # dt component along j breaks the symmetry
        return QOneForm(a)
    with pytest.raises(NotSymmetric):
        R.reduce_connection(A, [0.0], [1.0])
    with pytest.raises(AxisError):
        R.reduce_connection(A, [0.0], [0.0])


def test_frame():
    f = R.SymmetricFrame.from_point([1.0, 0.0, 3.0, 4.0])
    assert f.r == 5.0 and f.Q == (0.0, 0.6, 0.8)
    assert np.allclose(f.point(), [1, 0, 3, 4])
    with pytest.raises(AxisError):
        R.SymmetricFrame.from_point([1.0, 0, 0, 0])
    with pytest.raises(InvalidData):
        R.SymmetricFrame(0.0, 1.0, (1.0, 1.0, 0.0))


def test_lift_reduce_round_trip(rng):
    z = halfplane_points(rng, 20)
    field = R.vortex_pair_field(two_zero())
    pair = R.reduce_connection(lambda x: R.lift_vortex(field, x), z.real, z.imag)
    ref = field(z.real, z.imag)
    assert np.allclose(pair.phi, ref.phi, atol=1e-13)
    assert np.allclose(pair.a_t, ref.a_t, atol=1e-13)


def test_lift_matches_ansatz_off_axis(rng):
    # away from Q = i the lift is still the ansatz connection
    phi = basic()
    x = rng.normal(size=(4, 25))
    A1 = R.lift_vortex(R.vortex_pair_field(phi), x).a
    A2 = I.ansatz_connection(P.lift_potential(phi), x, I.Duality.SD).a
    assert np.allclose(A1, A2, atol=1e-11)


def test_lift_is_self_dual(rng):
    x = rng.normal(size=(4, 20))
    A = lambda y: R.lift_vortex(R.vortex_pair_field(two_zero()), y)
    Fp, Fm = qt.sd_asd_split(I.fd_curvature(A, x))
    assert np.max(qt.density(Fm)) < 1e-12 * max(1.0, np.max(qt.density(Fp)))


def test_lift_on_axis():
    with pytest.raises(AxisError):
        R.lift_vortex(R.vortex_pair_field(basic()), np.zeros((4, 1)))


@pytest.mark.parametrize("phi,c1", [(basic(), 1.0), (P.FHP2(), 1.5), (two_zero(), 2.0),
                                    (P.DiscFamily(1), 0.0)])
def test_ymh_energy(phi, c1):
    res = R.reduced_action(phi)
    assert res.value == pytest.approx(4 * np.pi * c1, abs=2e-2 * 4 * np.pi)


def test_chern_reduction_check():
    c2, c1 = R.chern_reduction_check(basic())
    assert c2.value == pytest.approx(1, abs=5e-3)
    assert c1.value == pytest.approx(1, abs=5e-3)
