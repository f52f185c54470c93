"""Harmonic-function ansatz on R^4: connections, curvature, densities, c2.

Conventions: x = x0 + i x1 + j x2 + k x3, d/dx = (1/2) sum ebar_mu d_mu and
d/dxbar = (1/2) sum e_mu d_mu.  The curvature is F = dA + A^A, i.e.
F_mu nu = d_mu A_nu - d_nu A_mu + [A_mu, A_nu], and a gauge map g acts by
g(A) = g A g^-1 - dg g^-1.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import quaternion as qt
from .errors import InvalidData, PoleError, SingularGauge
from .potentials import as_points4, laplacian
from .quadrature import QuadConfig, integrate_ball4
from .quaternion import QOneForm, QTwoForm, qconj, qmul


class Duality(str, Enum):
    SD = "SD"
    ASD = "ASD"


def _duality(d):
    try:
        return Duality(str(d.value if isinstance(d, Duality) else d).upper())
    except ValueError:
        raise InvalidData(f"unknown duality {d!r}; expected SD or ASD") from None


_E = np.eye(4)
_EBAR = np.array([qconj(e) for e in _E])


def _dquat(grad):
    """D = d/dxbar L = (1/2)(L0 + i L1 + j L2 + k L3) from a gradient (4, n)."""
    return 0.5 * np.asarray(grad)


def _connection_from_grad(grad, d):
    D = _dquat(grad)
    n = D.shape[1]
    a = np.zeros((4, 4, n))
    if d == Duality.ASD:
        for mu in range(4):
            a[mu] = -qt.qim(qmul(D, _EBAR[mu][:, None]))
    else:
        Dbar = qconj(D)
        for mu in range(4):
            a[mu] = -qt.qim(qmul(Dbar, _E[mu][:, None]))
    return a


def ansatz_connection(rho, x, d=Duality.SD):
    """A+ = -Im(dL/dxbar dxbar) (ASD) or A- = -Im(dL/dx dx) (SD), L = log rho."""
    d = _duality(d)
    L = rho.jet4(x, 1).log()
    return QOneForm(_connection_from_grad(L.gradient(), d))


def connection_field(rho, d=Duality.SD):
    """The ansatz connection as a callable x -> QOneForm."""
    return lambda x: ansatz_connection(rho, x, d)


# self-dual and anti-self-dual decompositions dx^dxbar = sum q_a omega_a
_Q_SD = (-2 * _E[1], -2 * _E[2], -2 * _E[3])
_Q_ASD = (2 * _E[1], 2 * _E[2], 2 * _E[3])


def _hessian_term(H, left, q, right):
    """(1/4) sum_{mu,nu} left_mu q right_nu H_mu nu as a quaternion array."""
    n = H.shape[-1]
    out = np.zeros((4, n))
    for mu in range(4):
        lq = qmul(left[mu], q)
        for nu in range(4):
            out += qmul(lq, right[nu])[:, None] * H[mu, nu][None, :]
    return 0.25 * out


def curvature(rho, x, d=Duality.SD):
    """Curvature of the ansatz connection from the closed forms.

    SD:  F = sum_a (1/2)(d_x q_a d_xbar L - d_x L q_a d_xbar L) omega_a
             + (Delta rho / 8 rho) dxbar^dx
    ASD: the conjugate expression with the roles of dx^dxbar and dxbar^dx swapped.
    """
    d = _duality(d)
    L = rho.jet4(x, 2).log()
    g = L.gradient()
    H = np.array([[L.partial(m, v) for v in range(4)] for m in range(4)])
    D = _dquat(g)
    Dbar = qconj(D)
    s = -(np.trace(H) + np.sum(g ** 2, axis=0)) / 8  # Delta rho / (8 rho)
    n = g.shape[1]
    f = np.zeros((6, 4, n))
    if d == Duality.SD:
        qs, basis, left, right, other = _Q_SD, qt.SD_BASIS, _EBAR, _E, qt.DXBAR_DX
        lo, hi = Dbar, D
    else:
        qs, basis, left, right, other = _Q_ASD, qt.ASD_BASIS, _E, _EBAR, qt.DX_DXBAR
        lo, hi = D, Dbar
    for q, omega in zip(qs, basis):
        C = 0.5 * (_hessian_term(H, left, q, right) - qmul(qmul(lo, q[:, None]), hi))
        f += omega[:, None, None] * C[None, :, :]
    f += other.f[:, :, None] * s[None, None, :]
    return QTwoForm(f)


def curvature_exact(rho, x, d=Duality.SD):
    """dA + A^A assembled from exact second derivatives (no closed form)."""
    d = _duality(d)
    L = rho.jet4(x, 2).log()
    g = L.gradient()
    A = _connection_from_grad(g, d)
    # d_mu A_nu: the connection is linear in the gradient
    dA = np.empty((4,) + A.shape)
    for mu in range(4):
        dA[mu] = _connection_from_grad(np.array([L.partial(mu, v) for v in range(4)]), d)
    f = np.zeros((6, 4, g.shape[1]))
    for k, (mu, nu) in enumerate(qt.PAIRS):
        f[k] = dA[mu, nu] - dA[nu, mu] + qmul(A[mu], A[nu]) - qmul(A[nu], A[mu])
    return QTwoForm(f)


def fd_curvature(A_field, x, h=1e-3):
    """Finite-difference dA + A^A for a callable x -> QOneForm (test oracle).

    Fourth-order central differences in each coordinate.
    """
    x = as_points4(x)
    A0 = A_field(x).a
    dA = np.empty((4,) + A0.shape)
    for mu in range(4):
        e = np.zeros((4, 1))
        e[mu] = h
        dA[mu] = (-A_field(x + 2 * e).a + 8 * A_field(x + e).a
                  - 8 * A_field(x - e).a + A_field(x - 2 * e).a) / (12 * h)
    f = np.zeros((6, 4, x.shape[1]))
    for k, (mu, nu) in enumerate(qt.PAIRS):
        f[k] = dA[mu, nu] - dA[nu, mu] + qmul(A0[mu], A0[nu]) - qmul(A0[nu], A0[mu])
    return QTwoForm(f, check=False)


def curvature_densities(rho, x, d=Duality.SD):
    """(|F+|^2, |F-|^2) of the ansatz connection."""
    Fp, Fm = qt.sd_asd_split(curvature(rho, x, d))
    return qt.density(Fp), qt.density(Fm)


def asd_law(rho, x):
    """(3/8)(Delta rho / rho)^2, the off-duality density predicted for the SD ansatz."""
    J = rho.jet4(x, 2)
    return 0.375 * (laplacian(J) / J.value) ** 2


# ---------------------------------------------------------------------------
# second Chern class

def _biharm_log_sym(rho, x):
    # radial form of (sum d^2)^2 log rho for SO(3)-invariant rho at x = (t, r, 0, 0):
    # M = L_tt + L_rr + (2/r) L_r, result = M_tt + M_rr + (2/r) M_r
    from .potentials import complex_coord_jet, reduce_potential
    phi = reduce_potential(rho)
    pts = x[0] + 1j * x[1]
    z = complex_coord_jet(pts, 4)
    r = z.imag
    L = phi.expr_half(z).log() - r.log()
    Lt, Lr = L.deriv(0), L.deriv(1)
    M = Lt.deriv(0) + Lr.deriv(1) + 2 * Lr.truncate(2) / r.truncate(2)
    return M.partial(0, 0) + M.partial(1, 1) + 2 * M.partial(1) / x[1]


def c2_density(rho, x, symmetric_path=False):
    """-(1/16 pi^2) Delta Delta log rho at x."""
    from .potentials import biharmonic_log4
    x = as_points4(x)
    bl = _biharm_log_sym(rho, x) if symmetric_path else biharmonic_log4(rho, x)
    return -bl / (16 * np.pi ** 2)


def _centers(rho):
    c = getattr(rho, "centers", None)
    if c is None:
        return np.zeros((0, 4))
    c = np.asarray(c, dtype=float)
    if c.ndim == 1:  # centers on the real axis (reduced data)
        out = np.zeros((len(c), 4))
        out[:, 0] = c
        return out
    return c


def chern2(rho, d=Duality.SD, cfg=None):
    """Second Chern class by quadrature of -(1/16 pi^2) Delta Delta log rho.

    Returns a QuadResult; the sign is flipped for the ASD connection.
    """
    d = _duality(d)
    cfg = cfg or QuadConfig()
    sym = bool(getattr(rho, "symmetric", False))
    centers = _centers(rho)
    if sym:
        f = lambda x: c2_density(rho, x, symmetric_path=True)
    else:
        f = lambda x: c2_density(rho, x)
    res = integrate_ball4(f, cfg, centers=centers, axisymmetric=sym)
    if d == Duality.ASD:
        res = res.scaled(-1.0)
    return res


# ---------------------------------------------------------------------------
# gauge transformations

def gauge_transform4(A_field, g_field, x, h=1e-4):
    """g(A) = g A g^-1 - dg g^-1 at x; dg by fourth-order central differences.

    ``g_field`` maps points (4, n) to quaternions (4, n); it is normalised to
    unit length, and SingularGauge is raised where |g| < 1e-9.
    """
    x = as_points4(x)

    def unit(y):
        g = np.asarray(g_field(y), dtype=float)
        nrm = np.sqrt(qt.qnorm2(g))
        if np.any(nrm < 1e-9):
            raise SingularGauge("gauge map vanishes at an evaluation point")
        return g / nrm

    g = unit(x)
    ginv = qconj(g)
    A = A_field(x).a
    out = np.empty_like(A)
    for mu in range(4):
        e = np.zeros((4, 1))
        e[mu] = h
        dg = (-unit(x + 2 * e) + 8 * unit(x + e) - 8 * unit(x - e) + unit(x - 2 * e)) / (12 * h)
        out[mu] = qmul(qmul(g, A[mu]), ginv) - qmul(dg, ginv)
    return QOneForm(_im_all(out))


def _im_all(a):
    a = np.array(a)
    a[:, 0] = 0.0
    return a


def singular_gauge_basic(x):
    """-Im(dx x^-1 / (1 + x xbar)): the basic instanton in singular gauge."""
    x = as_points4(x)
    xinv = qt.qinv(x)
    den = 1 + qt.qnorm2(x)
    a = np.empty((4, 4, x.shape[1]))
    for mu in range(4):
        a[mu] = -qt.qim(qmul(_E[mu][:, None], xinv)) / den
    return QOneForm(a)


def standard_gauge_basic(x):
    """Im(xbar dx / (1 + x xbar)): the basic instanton in its regular gauge."""
    x = as_points4(x)
    xb = qconj(x)
    den = 1 + qt.qnorm2(x)
    a = np.empty((4, 4, x.shape[1]))
    for mu in range(4):
        a[mu] = qt.qim(qmul(xb, _E[mu][:, None])) / den
    return QOneForm(a)


# ---------------------------------------------------------------------------
# equivariant ADHM pullback

@dataclass(frozen=True)
class AdhmData:
    """Real centers b_i and scales lam_i of the symmetric ADHM data."""

    b: tuple
    lam: tuple

    def __post_init__(self):
        b = np.asarray(self.b, dtype=float).reshape(-1)
        lam = np.asarray(self.lam, dtype=float).reshape(-1)
        if b.shape != lam.shape:
            raise InvalidData("b and lam must have the same length")
        if np.any(lam <= 0):
            raise InvalidData("scales must be positive (non-degeneracy)")
        if len(np.unique(b)) != len(b):
            raise InvalidData("centers must be pairwise distinct (non-degeneracy)")
        object.__setattr__(self, "b", tuple(b.tolist()))
        object.__setattr__(self, "lam", tuple(lam.tolist()))

    @property
    def k(self):
        return len(self.b)

    def potential(self):
        from .potentials import ThooftPotential
        cen = np.zeros((self.k, 4))
        cen[:, 0] = self.b
        return ThooftPotential(cen, self.lam)


def adhm_map(data, x):
    """f(x) = (1, lam_1 (x-b_1)^-1, ..., lam_k (x-b_k)^-1), shape (k+1, 4, n)."""
    x = as_points4(x)
    out = [np.broadcast_to(_E[0][:, None], x.shape).copy()]
    for b, lam in zip(data.b, data.lam):
        y = x.copy()
        y[0] -= b
        if np.any(qt.qnorm2(y) < 1e-28):
            raise PoleError(f"ADHM map evaluated at the center {b}")
        out.append(lam * qt.qinv(y))
    return np.array(out)


def adhm_connection(data, x):
    """A = Im(sum conj(f_i) df_i) / |f|^2, the pulled-back canonical connection."""
    x = as_points4(x)
    n = x.shape[1]
    num = np.zeros((4, 4, n))
    norm2 = np.ones(n)
    for b, lam in zip(data.b, data.lam):
        y = x.copy()
        y[0] -= b
        if np.any(qt.qnorm2(y) < 1e-28):
            raise PoleError(f"ADHM map evaluated at the center {b}")
        yinv = qt.qinv(y)
        f = lam * yinv
        norm2 = norm2 + qt.qnorm2(f)
        fc = qconj(f)
        for mu in range(4):
            df = -lam * qmul(qmul(yinv, _E[mu][:, None]), yinv)
            num[mu] += qmul(fc, df)
    a = np.empty_like(num)
    for mu in range(4):
        a[mu] = qt.qim(num[mu]) / norm2
    return QOneForm(a)
