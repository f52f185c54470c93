"""Dimensional reduction between SO(3)-invariant connections on R^4 and pairs
(a, Phi) on the hyperbolic plane.

Writing x = t + r Q with Q a unit imaginary quaternion, an invariant connection
has the form

    A = (1/2)(Q a + Phi_1 dQ + Phi_2 Q dQ),    Phi = Phi_1 + i (Phi_2 + 1),

with a = a_t dt + a_r dr.  At Q = i this gives A_0 = a_t i/2, A_1 = a_r i/2,
A_2 = (Phi_1 j + Phi_2 k)/2r, A_3 = (Phi_1 k - Phi_2 j)/2r.
"""

from dataclasses import dataclass

import numpy as np

from .errors import AxisError, InvalidData, NotSymmetric
from .instanton import chern2
from .potentials import DISC, as_points4, lift_potential
from .quadrature import QuadConfig, integrate_disc
from .quaternion import QOneForm, qmul
from .vortex import VORTEX, _kind, dbar, log_jet, metric_factor, pair_jets

SYMMETRY_TOL = 1e-9


@dataclass(frozen=True)
class SymmetricFrame:
    """x = t + r Q; Q is a unit imaginary quaternion given as (x1, x2, x3)."""

    t: float
    r: float
    Q: tuple = (1.0, 0.0, 0.0)

    def __post_init__(self):
        if not self.r > 0:
            raise AxisError("symmetric frame needs r > 0")
        q = np.asarray(self.Q, dtype=float)
        if q.shape != (3,) or abs(np.dot(q, q) - 1) > 1e-12:
            raise InvalidData("Q must be a unit imaginary quaternion (3 components)")

    @classmethod
    def from_point(cls, x):
        x = np.asarray(x, dtype=float)
        r = float(np.linalg.norm(x[1:]))
        if r == 0:
            raise AxisError("point on the axis r = 0")
        return cls(float(x[0]), r, tuple((x[1:] / r).tolist()))

    def point(self):
        return np.concatenate([[self.t], self.r * np.asarray(self.Q)])


@dataclass
class ReducedPair:
    """a_t, a_r and the affine Higgs field Phi = Phi_1 + i(Phi_2 + 1) (arrays)."""

    a_t: np.ndarray
    a_r: np.ndarray
    phi: np.ndarray

    @property
    def phi1(self):
        return np.real(self.phi)

    @property
    def phi2(self):
        return np.imag(self.phi) - 1


def reduce_connection(A_field, t, r, tol=SYMMETRY_TOL):
    """Read (a, Phi) off an invariant connection at x = t + r i.

    ``A_field`` maps points (4, n) to a QOneForm.  Components that must vanish,
    and the dx^3 coefficient (fixed by the dx^2 one), give a symmetry residual;
    NotSymmetric is raised when it exceeds ``tol`` (relative to max(1, |A|)).
    """
    t = np.atleast_1d(np.asarray(t, dtype=float))
    r = np.atleast_1d(np.asarray(r, dtype=float))
    if np.any(r <= 0):
        raise AxisError("reduction needs r > 0")
    x = np.array([t, r, 0 * t, 0 * t])
    A = A_field(x).a
    a_t = 2 * A[0, 1]
    a_r = 2 * A[1, 1]
    p1 = 2 * r * A[2, 2]
    p2 = 2 * r * A[2, 3]
    expected = np.zeros_like(A)
    expected[0, 1] = A[0, 1]
    expected[1, 1] = A[1, 1]
    expected[2, 2] = A[2, 2]
    expected[2, 3] = A[2, 3]
    expected[3, 3] = p1 / (2 * r)
    expected[3, 2] = -p2 / (2 * r)
    resid = np.max(np.abs(A - expected), axis=(0, 1))
    scale = np.maximum(1.0, np.max(np.abs(A), axis=(0, 1)))
    if np.any(resid > tol * scale):
        raise NotSymmetric(f"connection is not SO(3)-invariant (residual {np.max(resid):.3g})")
    return ReducedPair(a_t, a_r, p1 + 1j * (p2 + 1))


def lift_vortex(pair_field, x):
    """A = (1/2)(Q a + Phi_1 dQ + Phi_2 Q dQ) at points x (4, n).

    ``pair_field(t, r)`` returns a ReducedPair (or (a_t, a_r, Phi)).
    """
    x = as_points4(x)
    t = x[0]
    r = np.sqrt(np.sum(x[1:] ** 2, axis=0))
    if np.any(r == 0):
        raise AxisError("lift evaluated on the axis r = 0")
    p = pair_field(t, r)
    if not isinstance(p, ReducedPair):
        p = ReducedPair(*p)
    Qv = x[1:] / r
    Q = np.concatenate([np.zeros((1,) + t.shape), Qv])
    n = t.shape[0]
    a = np.zeros((4, 4, n))
    p1, p2 = p.phi1, p.phi2
    for mu in range(4):
        dt = 1.0 if mu == 0 else 0.0
        dr = Qv[mu - 1] if mu else np.zeros(n)
        dQ = np.zeros((4, n))
        if mu:
            dQ[mu] = 1.0
            dQ = (dQ - Q * Qv[mu - 1]) / r
        a[mu] = 0.5 * (Q * (p.a_t * dt + p.a_r * dr) + p1 * dQ + p2 * qmul(Q, dQ))
    return QOneForm(a)


def vortex_pair_field(phi, kind=VORTEX):
    """(t, r) -> ReducedPair for the half-plane (anti-)vortex of ``phi``."""
    from .vortex import vortex_from_potential

    def field(t, r):
        s = vortex_from_potential(phi, np.asarray(t) + 1j * np.asarray(r), kind, "halfplane")
        return ReducedPair(s.a[0], s.a[1], s.phi)
    return field


# ---------------------------------------------------------------------------
# energy and Chern classes

def ymh_density(phi, w, kind=VORTEX):
    """|F_a|^2_h + 2 |d_a Phi|^2_h + (1 - |Phi|^2)^2 times the hyperbolic area factor.

    Evaluated on the disc so the result integrates against du dv.
    """
    kind = _kind(kind)
    L = log_jet(phi, w, DISC, 2)
    ax, ay, P = pair_jets(dbar(L), w, DISC, kind)
    s2 = metric_factor(w, DISC) ** 2
    da = ay.partial(0) - ax.partial(1)
    F2 = (da * s2) ** 2
    Pv = P.value
    Du = P.partial(0) + 1j * ax.value * Pv
    Dv = P.partial(1) + 1j * ay.value * Pv
    dphi2 = s2 * (np.abs(Du) ** 2 + np.abs(Dv) ** 2)
    pot = (1 - np.abs(Pv) ** 2) ** 2
    return (F2 + 2 * dphi2 + pot) / s2


def reduced_action(phi, cfg=None, kind=VORTEX):
    """The Yang-Mills-Higgs energy of the vortex of ``phi`` on the hyperbolic plane."""
    cfg = cfg or QuadConfig()
    return integrate_disc(lambda w: ymh_density(phi, w, kind), cfg)


def chern_reduction_check(phi, cfg=None, cfg4=None):
    """(c2 of the lifted instanton rho = phi / r, c1 of the vortex of phi)."""
    from .vortex import chern1
    c2 = chern2(lift_potential(phi), cfg=cfg4)
    c1 = chern1(phi, cfg)
    return c2, c1

