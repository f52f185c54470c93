"""Hyperbolic vortices from harmonic super-potentials.

A pair (a, Phi) is stored as the real 1-form a = a_x dx + a_y dy in model
coordinates (x + i y = z on the half-plane, = w on the disc) and the complex
Higgs field Phi.  The unitary connection is i a; the vortex equations read

    dbar_a Phi = 0,    *_h (-da) = 1 - |Phi|^2

and the anti-vortex equations swap dbar for d and flip the sign of the second.
Given L = log phi the vortex is

    i a^{0,1} = dbar L + m,   Phi = s * d L

with m = dzbar / (z - zbar), s = i (z - zbar) on the half-plane and
m = (1 + w) / ((1 - |w|^2)(1 + wbar)) dwbar, s = -i (1 - |w|^2)(1 + w)/(1 + wbar)
on the disc.  The anti-vortex is (-a, -conj Phi).
"""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidData
from .potentials import (DISC, HALFPLANE, MODELS, as_points2, complex_coord_jet,
                         disc_to_half, half_to_disc)
from .quadrature import QuadConfig, integrate_disc

VORTEX = "vortex"
ANTIVORTEX = "antivortex"
KINDS = (VORTEX, ANTIVORTEX)

FIELD_COLUMNS = ("model", "re", "im", "a_t", "a_r", "re_phi", "im_phi", "res1", "res2")


def _kind(kind):
    k = str(kind).lower().replace("-", "").replace("_", "")
    if k in ("vortex", "v"):
        return VORTEX
    if k in ("antivortex", "anti", "av"):
        return ANTIVORTEX
    raise InvalidData(f"unknown kind {kind!r}; expected 'vortex' or 'antivortex'")


def _model(model):
    if model not in MODELS:
        raise InvalidData(f"unknown model {model!r}; expected one of {MODELS}")
    return model


@dataclass(frozen=True)
class HyperPoint:
    """A point of the hyperbolic plane in the half-plane or disc model."""

    model: str
    coord: complex

    def __post_init__(self):
        _model(self.model)
        c = complex(self.coord)
        if self.model == HALFPLANE and not c.imag > 0:
            raise InvalidData("half-plane points need Im z > 0")
        if self.model == DISC and not abs(c) < 1:
            raise InvalidData("disc points need |w| < 1")
        object.__setattr__(self, "coord", c)

    def to(self, model):
        if model == self.model:
            return self
        return disc_map(self)


def disc_map(p):
    """Swap models: w = (i - z)/(i + z), z = i (1 - w)/(1 + w)."""
    if p.model == HALFPLANE:
        return HyperPoint(DISC, complex(half_to_disc(p.coord)))
    return HyperPoint(HALFPLANE, complex(disc_to_half(p.coord)))


def dz_dw(w):
    """Jacobian of z(w): dz/dw = -2i / (1 + w)^2."""
    return -2j / (1 + np.asarray(w)) ** 2


def metric_factor(pts, model):
    """sigma with g_h = |d coord|^2 / sigma^2: Im z, or (1 - |w|^2)/2."""
    pts = np.asarray(pts)
    return pts.imag if model == HALFPLANE else 0.5 * (1 - np.abs(pts) ** 2)


def _points(p, model):
    if isinstance(p, HyperPoint):
        return as_points2(p.coord), p.model
    if isinstance(p, (list, tuple)) and p and isinstance(p[0], HyperPoint):
        models = {q.model for q in p}
        if len(models) != 1:
            raise InvalidData("mixed models in one batch")
        return as_points2([q.coord for q in p]), models.pop()
    pts = as_points2(p)
    model = _model(model or HALFPLANE)
    if model == HALFPLANE and np.any(pts.imag <= 0):
        raise InvalidData("half-plane points need Im z > 0")
    if model == DISC and np.any(np.abs(pts) >= 1):
        raise InvalidData("disc points need |w| < 1")
    return pts, model


@dataclass
class VortexSample:
    """Values of (a, Phi) at a batch of points; a[0], a[1] are the dx, dy parts."""

    a: np.ndarray
    phi: np.ndarray
    model: str
    kind: str
    points: np.ndarray

    @property
    def a_complex(self):
        return self.a[0] + 1j * self.a[1]


# ---------------------------------------------------------------------------
# construction

def log_jet(phi, pts, model, order):
    J = phi.jet2(pts, model, order)
    if np.any(J.value <= 0):
        raise InvalidData("super-potential must be positive")
    return J.log()


def dbar(L):
    """d/dzbar of a jet in (x, y): (1/2)(d_x + i d_y)."""
    return 0.5 * (L.deriv(0) + 1j * L.deriv(1))


def dz(L):
    return 0.5 * (L.deriv(0) - 1j * L.deriv(1))


def pair_jets(Lzbar, pts, model, kind=VORTEX, Lz=None):
    """(a_x, a_y, Phi) as jets from dbar L (and d L; defaults to conj(dbar L))."""
    kind = _kind(kind)
    Z = complex_coord_jet(pts, Lzbar.order)
    Zc = Z.conj()
    if Lz is None:
        Lz = Lzbar.conj()
    if model == HALFPLANE:
        coef = Lzbar + 1 / (Z - Zc)
        Phi = 1j * (Z - Zc) * Lz
    else:
        m = 1 - Z * Zc
        ratio = (1 + Z) / (1 + Zc)
        coef = Lzbar + ratio / m
        Phi = -1j * m * ratio * Lz
    A = -2j * coef
    ax, ay = A.real, A.imag
    if kind == ANTIVORTEX:
        return -ax, -ay, -Phi.conj()
    return ax, ay, Phi


def _sample_from_jets(ax, ay, Phi, pts, model, kind):
    return VortexSample(np.array([ax.value, ay.value]), Phi.value, model, kind, pts)


def vortex_from_potential(phi, p, kind=VORTEX, model=None):
    """The (anti-)vortex generated by the super-potential ``phi`` at ``p``.

    ``p`` is a HyperPoint, a list of them, or complex coordinates in ``model``.
    """
    kind = _kind(kind)
    pts, model = _points(p, model)
    L = log_jet(phi, pts, model, 1)
    ax, ay, Phi = pair_jets(dbar(L), pts, model, kind)
    return _sample_from_jets(ax, ay, Phi, pts, model, kind)


def pair_residuals(ax, ay, Phi, pts, model, kind=VORTEX):
    """Residuals of the (anti-)vortex equations for order >= 1 jets of (a, Phi).

    res1 = sigma |dbar_a Phi| (|d_a Phi| for anti-vortices), the hyperbolic norm;
    res2 = |*_h(-da) - (1 - |Phi|^2)| (with 1 - |Phi|^2 negated for anti-vortices).
    """
    kind = _kind(kind)
    a = ax.value + 1j * ay.value
    P = Phi.value
    sigma = metric_factor(pts, model)
    if kind == VORTEX:
        cov = dbar(Phi).value + 0.5j * a * P
    else:
        cov = dz(Phi).value + 0.5j * np.conj(a) * P
    res1 = np.abs(cov) * sigma
    da = ay.partial(0) - ax.partial(1)
    rhs = 1 - np.abs(P) ** 2
    if kind == ANTIVORTEX:
        rhs = -rhs
    res2 = np.abs(-da * sigma ** 2 - rhs)
    return res1, res2


def vortex_residuals(phi, p, kind=VORTEX, model=None):
    """(res1, res2) arrays for the pair generated by ``phi``; see pair_residuals."""
    kind = _kind(kind)
    pts, model = _points(p, model)
    L = log_jet(phi, pts, model, 2)
    ax, ay, Phi = pair_jets(dbar(L), pts, model, kind)
    return pair_residuals(ax, ay, Phi, pts, model, kind)


def field_rows(phi, p, kind=VORTEX, model=None):
    """Sampled fields as dicts keyed by FIELD_COLUMNS."""
    kind = _kind(kind)
    pts, model = _points(p, model)
    L = log_jet(phi, pts, model, 2)
    ax, ay, Phi = pair_jets(dbar(L), pts, model, kind)
    r1, r2 = pair_residuals(ax, ay, Phi, pts, model, kind)
    rows = []
    for n in range(pts.size):
        rows.append({"model": model, "re": pts[n].real, "im": pts[n].imag,
                     "a_t": ax.value[n], "a_r": ay.value[n],
                     "re_phi": Phi.value[n].real, "im_phi": Phi.value[n].imag,
                     "res1": r1[n], "res2": r2[n]})
    return rows


def boundary_profile(phi, angle=0.3, gaps=(1e-2, 1e-3), kind=VORTEX):
    """|Phi| - 1 along the disc ray at ``angle`` for 1 - |w| in ``gaps``."""
    w = np.array([(1 - g) * np.exp(1j * angle) for g in gaps])
    s = vortex_from_potential(phi, w, kind, DISC)
    return np.abs(s.phi) - 1


# ---------------------------------------------------------------------------
# first Chern class

def chern1_density(phi, w, model=DISC):
    """(1/2 pi)(4/(1-|w|^2)^2 - 4 |d_w log phi|^2) at disc points w.

    With model=HALFPLANE, phi is evaluated in its half-plane form at z(w) and the
    integrand is transported with the Jacobian dz/dw.
    """
    w = as_points2(w)
    if model == DISC:
        L = log_jet(phi, w, DISC, 1)
        Lw = dz(L).value
        f = 4 / (1 - np.abs(w) ** 2) ** 2 - 4 * np.abs(Lw) ** 2
    else:
        z = disc_to_half(w)
        L = log_jet(phi, z, HALFPLANE, 1)
        Lz = dz(L).value
        f = (1 / z.imag ** 2 - 4 * np.abs(Lz) ** 2) * np.abs(dz_dw(w)) ** 2
    return f / (2 * np.pi)


def chern1(phi, cfg=None, model=None):
    """c1 of the vortex of ``phi`` by disc quadrature with boundary extrapolation."""
    cfg = cfg or QuadConfig()
    if model is None:
        model = phi.native_model or HALFPLANE
    model = _model(model)
    return integrate_disc(lambda w: chern1_density(phi, w, model), cfg)


# ---------------------------------------------------------------------------
# Higgs zeros

@dataclass(frozen=True)
class HiggsZero:
    point: HyperPoint
    multiplicity: float
    residual: float


def winding(values):
    """Winding number of a closed sampled curve of nonzero complex values."""
    v = np.asarray(values)
    d = np.angle(np.roll(v, -1) / v)
    return float(np.sum(d) / (2 * np.pi))


def higgs_zeros(phi, region=(-4.0, 4.0, 0.05, 5.0), seeds=24, tol=1e-10, maxiter=60,
                kind=VORTEX):
    """Zeros of Phi in the half-plane box (t0, t1, r0, r1), with multiplicities.

    Newton's method on grad log phi (zeros of Phi are critical points of log phi)
    from a seeds x seeds grid.  Seeds that do not converge inside the box are
    dropped.  Multiplicity is the winding number of Phi on a small circle.
    """
    t0, t1, r0, r1 = region
    T, R = np.meshgrid(np.linspace(t0, t1, seeds), np.linspace(r0, r1, seeds))
    z = (T + 1j * R).ravel()
    active = np.ones(z.size, bool)
    for _ in range(maxiter):
        L = log_jet(phi, z, HALFPLANE, 2)
        g = np.array([L.partial(0), L.partial(1)])
        H = np.array([[L.partial(0, 0), L.partial(0, 1)], [L.partial(0, 1), L.partial(1, 1)]])
        det = H[0, 0] * H[1, 1] - H[0, 1] ** 2
        ok = np.abs(det) > 1e-300
        dt = np.where(ok, (H[1, 1] * g[0] - H[0, 1] * g[1]) / np.where(ok, det, 1), 0)
        dr = np.where(ok, (-H[0, 1] * g[0] + H[0, 0] * g[1]) / np.where(ok, det, 1), 0)
        step = dt + 1j * dr
        # damp steps that would leave the half-plane
        scale = np.ones(z.size)
        bad = (z - step).imag <= 0
        scale[bad] = 0.5 * z.imag[bad] / np.maximum(np.abs(dr[bad]), 1e-300)
        z_new = z - np.minimum(scale, 1) * step
        active &= ok & np.isfinite(z_new)
        z = np.where(active, z_new, z)
        inside = (z.real >= t0 - 1) & (z.real <= t1 + 1) & (z.imag > 0) & (z.imag <= r1 + 1)
        active &= inside
        if np.all(np.abs(step[active]) < 1e-15 * (1 + np.abs(z[active]))):
            break
    z = z[active]
    if z.size == 0:
        return []
    res = np.abs(vortex_from_potential(phi, z, kind, HALFPLANE).phi)
    z = z[res < tol]
    out = []
    for c in sorted(z, key=lambda q: (round(q.real, 6), round(q.imag, 6))):
        if any(abs(c - o.point.coord) < 1e-6 for o in out):
            continue
        rad = 1e-3 * c.imag
        circ = c + rad * np.exp(2j * np.pi * np.arange(64) / 64)
        m = winding(vortex_from_potential(phi, circ, kind, HALFPLANE).phi)
        r = float(np.abs(vortex_from_potential(phi, c, kind, HALFPLANE).phi[0]))
        out.append(HiggsZero(HyperPoint(HALFPLANE, c), round(m, 6), r))
    return out


def fractional_winding(phi, center=0.0, radius=1e-2, cut_angle=None, n=4096, kind=VORTEX):
    """Winding of Phi around a disc point along the circle minus the cut.

    The circle is traversed from just after ``cut_angle`` to just before it,
    so a zero of order 3/2 at a branch point gives 1.5.  ``cut_angle`` defaults
    to the potential's cut (0 for 'P1', pi for 'P2').
    """
    if cut_angle is None:
        cut_angle = {"P1": 0.0, "P2": np.pi}.get(getattr(phi, "cut", "P1"), 0.0)
    th = cut_angle + 2 * np.pi * (np.arange(n) + 0.5) / n
    w = center + radius * np.exp(1j * th)
    P = vortex_from_potential(phi, w, kind, DISC).phi
    d = np.angle(P[1:] / P[:-1])
    return float(np.sum(d) / (2 * np.pi))


def zero_count(zeros):
    return float(sum(z.multiplicity for z in zeros))
