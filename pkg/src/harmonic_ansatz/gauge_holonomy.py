"""Vortex gauge transformations, gauge pairs from a harmonic chi, the FHP
patching gauge, the singular c-family with its monodromy gauge, and loop
holonomy around the disc origin.

A gauge function chi acts on a vortex by a -> a - 2 d chi, Phi -> e^{2 i chi} Phi.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import BranchCutError, DegenerateGauge, InvalidData, PoleError
from .potentials import (DISC, HALFPLANE, DiscFamily, as_points2, branch_log,
                         complex_coord_jet, disc_to_half, hyperbolic_laplacian)
from .quadrature import loop_integral
from .vortex import (VORTEX, VortexSample, _kind, _points, dbar, dz, log_jet,
                     pair_jets, pair_residuals)

DEGENERATE_TOL = 1e-12
CUT_OFFSET = 1e-6  # distance from the real axis for one-sided limits


# ---------------------------------------------------------------------------
# gauge functions

@dataclass
class GaugeChi:
    """A real gauge function chi given by ``expr`` acting on the coordinate jet.

    ``expr(Z)`` receives the complex coordinate jet of ``model`` and returns a
    real jet; e.g. ``lambda W: (W * W).imag`` for chi = Im w^2.
    """

    expr: object
    model: str = DISC
    name: str = "chi"

    def jet(self, pts, model=None, order=2):
        model = model or self.model
        if model != self.model:
            raise InvalidData(f"gauge function is defined on the {self.model} model")
        return self.expr(complex_coord_jet(as_points2(pts), order))

    def __call__(self, pts):
        return self.jet(pts, order=0).value

    def harmonic_residual(self, pts):
        pts = as_points2(pts)
        return hyperbolic_laplacian(self.jet(pts, order=2), pts, self.model)


def constant_chi(kappa, model=DISC):
    return GaugeChi(lambda Z: 0 * Z.real + kappa, model, f"const:{kappa}")


def gauge_jets(ax, ay, Phi, X):
    """(a - 2 d chi, e^{2 i chi} Phi) on jets; X is the chi jet one order above a."""
    g = (2j * X.truncate(Phi.order)).exp()
    return ax - 2 * X.deriv(0), ay - 2 * X.deriv(1), g * Phi


def apply_gauge(sample, chi):
    """Gauge-transform a VortexSample by chi (a GaugeChi on the sample's model)."""
    X = chi.jet(sample.points, sample.model, 1)
    a = sample.a - 2 * X.gradient()
    phi = np.exp(2j * X.value) * sample.phi
    return VortexSample(a, phi, sample.model, sample.kind, sample.points)


def gauge_residuals(phi, chi, p, kind=VORTEX, model=None):
    """Vortex residuals of the chi-transform of the vortex of ``phi``."""
    kind = _kind(kind)
    pts, model = _points(p, model)
    L = log_jet(phi, pts, model, 2)
    ax, ay, P = pair_jets(dbar(L), pts, model, kind)
    ax, ay, P = gauge_jets(ax, ay, P, chi.jet(pts, model, 2))
    return pair_residuals(ax, ay, P, pts, model, kind)


# ---------------------------------------------------------------------------
# gauge pairs

def _pair_logs(chi, pts, model, order):
    X = chi.jet(pts, model, order)
    E = (2j * X).exp()
    if np.any(np.abs(E.value - 1) < DEGENERATE_TOL):
        raise DegenerateGauge("e^{2 i chi} = 1 at an evaluation point")
    Eb = E.conj()
    lp = (E - 1).log()     # log(e^{2 i chi} - 1)
    lm = (Eb - 1).log()    # log(e^{-2 i chi} - 1)
    return lp, lm


def pair_jets_from_chi(chi, pts, model, order=2):
    """Jets (a, Phi) of the two vortices built from chi: (plus, minus).

    plus:  dbar log phi = dbar log(e^{2i chi} - 1), d log phi = d log(e^{-2i chi} - 1)
    minus: dbar log phi = dbar log(e^{-2i chi} - 1), d log phi = d log(e^{2i chi} - 1)
    """
    lp, lm = _pair_logs(chi, pts, model, order)
    plus = pair_jets(dbar(lp), pts, model, VORTEX, Lz=dz(lm))
    minus = pair_jets(dbar(lm), pts, model, VORTEX, Lz=dz(lp))
    return plus, minus


def pair_from_chi(chi, p, model=None):
    """The two vortex samples generated by chi; minus = apply_gauge(plus, chi)."""
    pts, model = _points(p, model or chi.model)
    plus, minus = pair_jets_from_chi(chi, pts, model, 1)
    mk = lambda j: VortexSample(np.array([j[0].value, j[1].value]), j[2].value, model, VORTEX, pts)
    return mk(plus), mk(minus)


def pair_residuals_from_chi(chi, p, model=None):
    """((res1, res2) of plus, (res1, res2) of minus)."""
    pts, model = _points(p, model or chi.model)
    plus, minus = pair_jets_from_chi(chi, pts, model, 2)
    return (pair_residuals(*plus, pts, model, VORTEX), pair_residuals(*minus, pts, model, VORTEX))


# ---------------------------------------------------------------------------
# FHP patching

def _off_axis(w):
    w = as_points2(w)
    if np.any(w.imag == 0):
        raise BranchCutError("gauge is undefined on the real axis")
    if np.any(w == 0):
        raise PoleError("w = 0")
    return w


def fhp_T_original(w):
    """(T1, T2) from S = |z + i|, S_ = |z - i| with z = i(1 - w)/(1 + w)."""
    w = _off_axis(w)
    z = disc_to_half(w)
    S = np.abs(z + 1j)
    Sm = np.abs(z - 1j)
    x2 = (z + np.conj(z)).real ** 2
    common = S ** 2 * Sm ** 2 - 3 * x2
    T1 = np.sqrt(np.maximum((S + Sm) ** 2 - 4, 0)) * (0.25 * (4 - (S - Sm) ** 2) ** 2 + common)
    T2 = np.sqrt(np.maximum(4 - (S - Sm) ** 2, 0)) * (0.25 * (4 - (S + Sm) ** 2) ** 2 + common)
    return T1 / (2 * S ** 5), T2 / (2 * S ** 5)


def fhp_T(w):
    """(T1, T2) = (Im w^{5/2} sign Im w^{1/2}, Re w^{5/2} sign Re w^{1/2}).

    The products do not depend on the branch of the square root.
    """
    w = _off_axis(w)
    s = np.sqrt(w)
    f = s ** 5
    return f.imag * np.sign(s.imag), f.real * np.sign(s.real)


def fhp_f(w):
    T1, T2 = fhp_T(w)
    return T2 + 1j * T1


def fhp_gauge(w):
    """e^{2 i chi} = i (1 - fbar)(1 + i f) / ((1 - f)(1 - i fbar)), f = T2 + i T1."""
    f = fhp_f(w)
    fb = np.conj(f)
    return 1j * (1 - fb) * (1 + 1j * f) / ((1 - f) * (1 - 1j * fb))


# ---------------------------------------------------------------------------
# singular family and monodromy

@dataclass
class MonodromyFamily:
    """The family phi = DiscFamily(c, 1) and phi' = DiscFamily(c, eps), cut 'P1'.

    eps defaults to e^{2 pi i c}.
    """

    c: float
    eps: complex = None
    cut: str = "P1"
    phi: DiscFamily = field(init=False, repr=False)
    phi_eps: DiscFamily = field(init=False, repr=False)

    def __post_init__(self):
        self.c = float(self.c)
        if self.c == 0:
            raise InvalidData("c must be nonzero")
        if self.eps is None:
            self.eps = np.exp(2j * np.pi * self.c)
        self.eps = complex(self.eps)
        if abs(abs(self.eps) - 1) > 1e-12:
            raise InvalidData("eps must have unit modulus")
        self.phi = DiscFamily(self.c, 1.0, self.cut)
        self.phi_eps = DiscFamily(self.c, self.eps, self.cut)

    def to_dict(self):
        return {"c": self.c, "eps": [self.eps.real, self.eps.imag], "cut": self.cut}


def _gauge_expr(fam, W):
    wc = fam.phi.wpow(W)
    wcb = wc.conj()
    e, eb = fam.eps, np.conj(fam.eps)
    return e * (1 - eb * wcb) * (1 - wc) / ((1 - e * wc) * (1 - wcb))


def monodromy_gauge(fam, w, order=0):
    """g = eps (1 - epsbar wbar^c)(1 - w^c) / ((1 - eps w^c)(1 - wbar^c)).

    Returned as values (order 0) or as a jet in (u, v).
    """
    w = as_points2(w)
    if np.any(np.abs(w) >= 1):
        raise InvalidData("disc points need |w| < 1")
    if np.any(w == 0):
        raise PoleError("w = 0")
    branch_log(w, fam.cut)  # raises on the cut
    W = complex_coord_jet(w, order)
    wc = fam.phi.wpow(W).value
    if np.any(np.abs(1 - fam.eps * wc) < 1e-14) or np.any(np.abs(1 - np.conj(wc)) < 1e-14):
        raise PoleError("monodromy gauge denominator vanishes")
    g = _gauge_expr(fam, W)
    return g.value if order == 0 else g


def monodromy_residuals(fam, w):
    """Residuals of d log phi' = g d log phi and dbar log phi' = dbar log phi - dbar log g."""
    w = as_points2(w)
    L = log_jet(fam.phi, w, DISC, 1)
    Le = log_jet(fam.phi_eps, w, DISC, 1)
    g = monodromy_gauge(fam, w, order=1)
    r_field = np.abs(dz(Le).value - g.value * dz(L).value)
    r_conn = np.abs(dbar(Le).value - dbar(L).value + dbar(g.log()).value)
    return r_field, r_conn


def loop_connection_a(fam, r, theta, use_eps=False):
    """a(d/d theta) on |w| = r for the vortex of phi (or phi')."""
    pot = fam.phi_eps if use_eps else fam.phi
    w = r * np.exp(1j * np.asarray(theta))
    L = log_jet(pot, w, DISC, 1)
    coef = dbar(L).value + (1 + w) / ((1 - np.abs(w) ** 2) * (1 + np.conj(w)))
    return -2 * np.real(np.conj(w) * coef)


def _cut_angle(cut):
    return 0.0 if cut == "P1" else np.pi


def loop_connection_integral(fam, r, n=512):
    """The loop integral of a around |w| = r (a QuadResult); the cut is a panel edge."""
    if not 0 < r < 1:
        raise InvalidData("need 0 < r < 1")
    cuts = None if fam.phi.integer else [_cut_angle(fam.cut)]
    g = lambda th: loop_connection_a(fam, r, th)
    return loop_integral(g, r, n, cuts=cuts)


def holonomy(fam, r, n=512):
    """eps * exp(i * loop integral); tends to e^{2 pi i c} as r -> 0."""
    return fam.eps * np.exp(1j * loop_connection_integral(fam, r, n).value)


def family_flux(c, r):
    """Loop integral of the smooth part of a: -2 pi (G(r) - G(0)), G = 2/(1-r^2) - 2c/(1-r^{2c})."""
    G = 2 / (1 - r ** 2) - 2 * c / (1 - r ** (2 * c))
    return -2 * np.pi * (G - (2 - 2 * c))


def holonomy_parameter(c):
    """alpha = (c - floor c) / 2."""
    return (c - np.floor(c)) / 2


def expected_limit(c):
    return np.exp(2j * np.pi * c)


def sweep_rows(cs, radii, c1_func=None, n=512):
    """Rows (c, r, loop_integral, re_hol, im_hol, alpha, c1, c1_expected)."""
    rows = []
    for c in cs:
        fam = MonodromyFamily(c)
        c1 = c1_func(c) if c1_func else float("nan")
        for r in radii:
            li = loop_connection_integral(fam, r, n).value
            h = fam.eps * np.exp(1j * li)
            rows.append({"c": c, "r": r, "loop_integral": li, "re_hol": h.real, "im_hol": h.imag,
                         "alpha": holonomy_parameter(c), "c1": c1, "c1_expected": c - 1})
    return rows


SWEEP_COLUMNS = ("c", "r", "loop_integral", "re_hol", "im_hol", "alpha", "c1", "c1_expected")
