import numpy as np
import pytest

from harmonic_ansatz import gauge_holonomy as G
from harmonic_ansatz import potentials as P
from harmonic_ansatz import vortex as V
from harmonic_ansatz.errors import BranchCutError, DegenerateGauge, InvalidData, PoleError
from harmonic_ansatz.potentials import DISC

from conftest import disc_points

CHI = G.GaugeChi(lambda W: (W * W).imag, DISC, "Im w^2")


def safe_points(rng, n, chi=CHI, margin=0.05):
    """Disc points away from the locus e^{2 i chi} = 1 where gauge pairs blow up."""
    out = []
    while len(out) < n:
        w = disc_points(rng, 4 * n)
        w = w[np.abs(np.exp(2j * chi(w)) - 1) >= margin]
        out.extend(w.tolist())
    return np.array(out[:n])


def test_chi_is_harmonic(rng):
    assert np.max(np.abs(CHI.harmonic_residual(disc_points(rng, 30)))) < 1e-12


def test_identity_and_constant_gauge(rng):
    w = disc_points(rng, 20)
    s = V.vortex_from_potential(P.FHP2(), w, model=DISC)
    t = G.apply_gauge(s, G.constant_chi(0.0))
    assert np.array_equal(t.phi, s.phi) and np.array_equal(t.a, s.a)
    t = G.apply_gauge(s, G.constant_chi(0.4))
    assert np.allclose(t.phi, np.exp(0.8j) * s.phi)
    assert np.allclose(t.a, s.a)


def test_gauge_preserves_equations(rng):
    w = disc_points(rng, 50)
    r1, r2 = G.gauge_residuals(P.FHP2(), CHI, w, model=DISC)
    assert max(np.max(r1), np.max(r2)) < 1e-9


def test_gauge_model_mismatch():
    with pytest.raises(InvalidData):
        CHI.jet(np.array([1j]), "halfplane")


def test_pair_from_chi(rng):
    w = safe_points(rng, 100)
    (p1, p2), (m1, m2) = G.pair_residuals_from_chi(CHI, w)
    assert max(np.max(p1), np.max(p2), np.max(m1), np.max(m2)) < 1e-9
    plus, minus = G.pair_from_chi(CHI, w)
    g = G.apply_gauge(plus, CHI)
    assert np.allclose(g.phi, minus.phi, atol=1e-9)
    assert np.allclose(g.a, minus.a, atol=1e-9)


def test_degenerate_gauge():
    with pytest.raises(DegenerateGauge):
        G.pair_from_chi(G.constant_chi(np.pi), np.array([0.1 + 0.1j]))


def test_fhp_T_forms_agree(rng):
    w = disc_points(rng, 500)
    T1, T2 = G.fhp_T_original(w)
    S1, S2 = G.fhp_T(w)
    assert np.max(np.abs(T1 - S1)) < 1e-10
    assert np.max(np.abs(T2 - S2)) < 1e-10


def test_fhp_gauge_unit_modulus(rng):
    w = disc_points(rng, 100)
    assert np.allclose(np.abs(G.fhp_gauge(w)), 1, atol=1e-12)


def test_fhp_gauge_errors():
    with pytest.raises(BranchCutError):
        G.fhp_gauge(np.array([0.5]))
    with pytest.raises(BranchCutError):
        G.fhp_T(np.array([0j]))


def test_fhp_gauge_matches_monodromy(rng):
    # on the upper half-disc the FHP gauge inverts the c = 5/2 monodromy gauge
    w = disc_points(rng, 60)
    w = np.where(w.imag > 0, w, np.conj(w))
    fam = G.MonodromyFamily(2.5, -1j)
    assert np.allclose(G.monodromy_gauge(fam, w) * G.fhp_gauge(w), 1, atol=1e-12)


@pytest.mark.parametrize("c", [2.0, 2.5, 3.7])
def test_monodromy_residuals(rng, c):
    fam = G.MonodromyFamily(c)
    w = disc_points(rng, 100)
    g = G.monodromy_gauge(fam, w)
    assert np.allclose(np.abs(g), 1, atol=1e-12)
    rf, rc = G.monodromy_residuals(fam, w)
    assert max(np.max(rf), np.max(rc)) < 1e-9


def test_integer_family_trivial_gauge(rng):
    w = disc_points(rng, 20)
    assert np.allclose(G.monodromy_gauge(G.MonodromyFamily(2), w), 1, atol=1e-14)


def test_monodromy_gauge_errors():
    fam = G.MonodromyFamily(2.5)
    with pytest.raises(PoleError):
        G.monodromy_gauge(fam, np.array([0j]))
    with pytest.raises(InvalidData):
        G.monodromy_gauge(fam, np.array([1.2]))
    with pytest.raises(InvalidData):
        G.MonodromyFamily(2.5, eps=2.0)


@pytest.mark.parametrize("c", [2.0, 2.5, 3.7])
@pytest.mark.parametrize("r", [0.1, 0.01, 1e-3])
def test_loop_integral_closed_form(c, r):
    fam = G.MonodromyFamily(c)
    rest = G.loop_connection_integral(fam, r).value - G.family_flux(c, r)
    exact = 2 * np.angle(1 - r ** c * np.exp(2j * np.pi * c))
    assert rest == pytest.approx(exact, abs=1e-12)
    # leading term
    assert rest == pytest.approx(-2 * r ** c * np.sin(2 * np.pi * c), abs=2 * r ** (2 * c) + 1e-14)


@pytest.mark.parametrize("c", [2.0, 2.5, 3.7])
def test_holonomy_limit(c):
    fam = G.MonodromyFamily(c)
    d = [abs(G.holonomy(fam, r) - G.expected_limit(c)) for r in (0.1, 0.01, 1e-3)]
    assert d[2] < 2e-2
    assert d[0] >= d[1] >= d[2]


def test_holonomy_parameter():
    assert G.holonomy_parameter(2.5) == 0.25
    assert G.holonomy_parameter(2.0) == 0.0
    assert G.holonomy_parameter(3.7) == pytest.approx(0.35)


def test_loop_radius_validation():
    with pytest.raises(InvalidData):
        G.loop_connection_integral(G.MonodromyFamily(2.5), 1.0)


def test_sweep_rows():
    rows = G.sweep_rows([2.5], [0.1, 0.01], c1_func=lambda c: c - 1)
    assert len(rows) == 2
    assert tuple(rows[0]) == G.SWEEP_COLUMNS
    assert rows[0]["alpha"] == 0.25 and rows[0]["c1_expected"] == 1.5
