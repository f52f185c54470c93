"""Super-potential families and their derivative oracles.

A super-potential is a positive scalar field: ``rho`` on R^4 or ``phi`` on the
hyperbolic plane (upper half-plane ``z = t + i r`` or unit disc ``w``).
Built-in families are written once with jet arithmetic, so every derivative
up to order 4 is exact to rounding.  :class:`Generic4` and :class:`Generic2`
wrap black-box evaluators and fall back to finite differences.

Points are passed as arrays: R^4 points with shape (4,) or (4, n), hyperbolic
points as complex scalars or arrays of shape (n,).
"""

import math

import numpy as np

from .errors import (AxisError, BranchCutError, InvalidData, NoConvergence,
                     NotSymmetric, OrderUnsupported, PoleError)
from .jets import MAX_ORDER, Jet, jet_space, variables

HALFPLANE = "halfplane"
DISC = "disc"
MODELS = (HALFPLANE, DISC)

# default exclusion radius around centers / disc origin for quadrature callers
POLE_RADIUS = 1e-3


# ---------------------------------------------------------------------------
# coordinate helpers

def as_points4(x):
    x = np.asarray(x, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    if x.shape[0] != 4:
        raise InvalidData(f"R^4 points need a leading axis of length 4, got {x.shape}")
    return x


def as_points2(p):
    return np.atleast_1d(np.asarray(p, dtype=complex))


def disc_to_half(w):
    return 1j * (1 - w) / (1 + w)


def half_to_disc(z):
    return (1j - z) / (1j + z)


def _check_model(model):
    if model not in MODELS:
        raise InvalidData(f"unknown model {model!r}; expected one of {MODELS}")


def _check_interior(pts, model):
    if model == HALFPLANE:
        if np.any(pts.imag <= 0):
            raise InvalidData("half-plane points need Im z > 0")
    elif np.any(np.abs(pts) >= 1):
        raise InvalidData("disc points need |w| < 1")


def complex_coord_jet(pts, order):
    """Complex coordinate jet ``u + i v`` at ``pts`` in real variables (u, v)."""
    u, v = variables(2, order, np.array([pts.real, pts.imag]))
    return u + 1j * v


def branch_log(w, cut):
    """log w with arg in (0, 2pi) for cut P1 and (-pi, pi) for cut P2."""
    w = np.asarray(w, dtype=complex)
    on_axis = np.abs(w.imag) <= 1e-14 * np.abs(w)
    if cut == "P1":
        if np.any(on_axis & (w.real > 0)):
            raise BranchCutError("point on the positive real axis (cut P1)")
        ang = np.angle(w)
        ang = np.where(ang <= 0, ang + 2 * np.pi, ang)
    elif cut == "P2":
        if np.any(on_axis & (w.real < 0)):
            raise BranchCutError("point on the negative real axis (cut P2)")
        ang = np.angle(w)
    else:
        raise InvalidData(f"unknown cut {cut!r}; expected 'P1' or 'P2'")
    return np.log(np.abs(w)) + 1j * ang


# ---------------------------------------------------------------------------
# base class

class SuperPotential:
    """Base class; subclasses provide ``expr4`` and/or a 2D expression."""

    family = "abstract"
    #: native hyperbolic model of the 2D expression, or None if 4D only
    native_model = None
    #: whether the 4D field is invariant under rotations of the imaginary part
    symmetric = False

    def to_dict(self):
        return {"family": self.family, "params": self.params()}

    def params(self):
        return {}

    # 4D --------------------------------------------------------------------
    def expr4(self, X):
        raise InvalidData(f"{self.family} has no R^4 description")

    def check4(self, x):
        pass

    def jet4(self, x, order=2):
        if order > MAX_ORDER:
            raise OrderUnsupported(f"order {order} > {MAX_ORDER}")
        x = as_points4(x)
        self.check4(x)
        return self.expr4(variables(4, order, x))

    # 2D --------------------------------------------------------------------
    def expr_half(self, z):
        if self.native_model == DISC:
            return self.expr_disc(half_to_disc(z))
        raise InvalidData(f"{self.family} has no hyperbolic description")

    def expr_disc(self, w):
        if self.native_model == HALFPLANE:
            return self.expr_half(disc_to_half(w))
        raise InvalidData(f"{self.family} has no hyperbolic description")

    def jet2(self, pts, model=HALFPLANE, order=2):
        _check_model(model)
        if order > MAX_ORDER:
            raise OrderUnsupported(f"order {order} > {MAX_ORDER}")
        pts = as_points2(pts)
        _check_interior(pts, model)
        z = complex_coord_jet(pts, order)
        return self.expr_half(z) if model == HALFPLANE else self.expr_disc(z)

    def __call__(self, x):
        """Plain values: R^4 points for 4D potentials, complex points otherwise."""
        if self.native_model is None:
            return self.jet4(x, 0).value
        return self.jet2(x, self.native_model, 0).value


def _lifted_expr4(pot, X):
    # rho(x) = phi(t + i r) / r with r = |Im x|
    t = X[0]
    r = (X[1] * X[1] + X[2] * X[2] + X[3] * X[3]).sqrt()
    return pot.expr_half(t + 1j * r) / r


def _check_axis(x):
    if np.any(np.sum(x[1:] ** 2, axis=0) == 0):
        raise AxisError("lifted potential evaluated on the axis r = 0")


# ---------------------------------------------------------------------------
# R^4 families

class ThooftPotential(SuperPotential):
    """rho = base + sum_i lam_i^2 / |x - a_i|^2 (superposed Green's functions)."""

    family = "thooft"

    def __init__(self, centers=(), scales=(), base=1.0):
        c = np.asarray(centers, dtype=float).reshape(-1, 4) if len(centers) else np.zeros((0, 4))
        s = np.asarray(scales, dtype=float).reshape(-1)
        if c.shape[0] != s.shape[0]:
            raise InvalidData("centers and scales must have the same length")
        if np.any(s <= 0):
            raise InvalidData("scales must be positive")
        if base < 0 or (base == 0 and len(s) == 0):
            raise InvalidData("base must be positive")
        self.centers = c
        self.scales = s
        self.base = float(base)
        self.symmetric = bool(np.all(c[:, 1:] == 0))
        self.native_model = HALFPLANE if self.symmetric else None

    @property
    def k(self):
        return len(self.scales)

    def __call__(self, x):
        """Values at R^4 points (4,) or (4, n)."""
        return self.jet4(x, 0).value

    def params(self):
        return {"centers": self.centers.tolist(), "scales": self.scales.tolist(), "base": self.base}

    def check4(self, x):
        for a in self.centers:
            if np.any(np.sum((x - a[:, None]) ** 2, axis=0) < 1e-28):
                raise PoleError(f"evaluation at the center {a.tolist()}")

    def expr4(self, X):
        out = 0 * X[0] + self.base
        for a, lam in zip(self.centers, self.scales):
            d2 = sum((X[m] - a[m]) * (X[m] - a[m]) for m in range(4))
            out = out + lam * lam / d2
        return out

    def expr_half(self, z):
        if not self.symmetric:
            raise NotSymmetric("centers off the real axis; no hyperbolic reduction")
        return reduce_potential(self).expr_half(z)


class ConstPotential(SuperPotential):
    """A positive constant in any dimension (phi = const is not the flat vortex)."""

    family = "const"
    symmetric = True
    native_model = HALFPLANE

    def __init__(self, value=1.0):
        if value <= 0:
            raise InvalidData("constant potential must be positive")
        self.value = float(value)

    def params(self):
        return {"value": self.value}

    def expr4(self, X):
        return 0 * X[0] + self.value

    def expr_half(self, z):
        return 0 * z.real + self.value

    def expr_disc(self, w):
        return 0 * w.real + self.value


# ---------------------------------------------------------------------------
# hyperbolic families

class HalfplaneSym(SuperPotential):
    """phi = Im(base z - sum_i lam_i^2 / (z - b_i)): reduced symmetric 't Hooft data.

    Use :meth:`from_zeros` to prescribe the Higgs zeros instead of (b, lam).
    """

    family = "halfplane_sym"
    native_model = HALFPLANE
    symmetric = True

    def __init__(self, centers=(), scales=(), base=1.0, zeros=None):
        b = np.asarray(centers, dtype=float).reshape(-1)
        s = np.asarray(scales, dtype=float).reshape(-1)
        if b.shape != s.shape:
            raise InvalidData("centers and scales must have the same length")
        if np.any(s <= 0):
            raise InvalidData("scales must be positive")
        self.centers = b
        self.scales = s
        self.base = float(base)
        self.zeros = None if zeros is None else np.asarray(zeros, dtype=complex)

    @classmethod
    def literal(cls, zeros):
        """Centers Re z_i and scales Im z_i (exact Higgs zeros only for one point)."""
        z = np.asarray(zeros, dtype=complex).reshape(-1)
        return cls(z.real, z.imag)

    @classmethod
    def from_zeros(cls, zeros, tol=1e-13, maxiter=100):
        """The potential whose vortex has Higgs zeros exactly at ``zeros``.

        The Higgs field vanishes where g'(z) = 1 + sum mu_i/(z-b_i)^2 does; the
        centers b_i are fixed by requiring the residues of g' to vanish.
        """
        z = np.asarray(zeros, dtype=complex).reshape(-1)
        if np.any(z.imag <= 0):
            raise InvalidData("zeros must lie in the upper half-plane")
        k = len(z)
        if k == 0:
            return cls()
        P = np.poly(np.concatenate([z, z.conj()])).real
        dP = np.polyder(P)

        def F(b):
            out = np.empty(k)
            for i in range(k):
                others = np.delete(b, i)
                out[i] = np.polyval(dP, b[i]) / np.polyval(P, b[i]) - np.sum(2 / (b[i] - others))
            return out

        order = np.argsort(z.real + 1e-3 * z.imag)
        b = np.empty(k)
        b[order] = np.sort(z.real) + 1e-2 * np.arange(k)
        for _ in range(maxiter):
            f = F(b)
            if np.max(np.abs(f)) < tol:
                break
            Jm = np.empty((k, k))
            for j in range(k):
                h = 1e-7 * (1 + abs(b[j]))
                e = np.zeros(k)
                e[j] = h
                Jm[:, j] = (F(b + e) - F(b - e)) / (2 * h)
            b = b - np.linalg.solve(Jm, f)
        else:
            raise NoConvergence("could not place centers for the prescribed zeros")
        if len(np.unique(np.round(b, 12))) < k:
            raise NoConvergence("prescribed zeros led to coincident centers")
        mu = np.array([np.polyval(P, b[i]) / np.prod((b[i] - np.delete(b, i)) ** 2)
                       for i in range(k)])
        return cls(b, np.sqrt(mu), zeros=z)

    def params(self):
        d = {"centers": self.centers.tolist(), "scales": self.scales.tolist(), "base": self.base}
        if self.zeros is not None:
            d["zeros"] = [[float(v.real), float(v.imag)] for v in self.zeros]
        return d

    def expr_half(self, z):
        g = self.base * z
        for b, lam in zip(self.centers, self.scales):
            g = g - lam * lam / (z - b)
        return g.imag

    def expr4(self, X):
        return lift_potential(self).expr4(X)

    def check4(self, x):
        lift_potential(self).check4(x)


class DiscFamily(SuperPotential):
    """phi = (1 - |w|^{2c}) / |1 - eps w^c|^2 on the disc cut along ``cut``.

    ``cut`` is 'P1' (positive real axis, arg w in (0, 2pi)) or 'P2' (negative
    real axis, arg w in (-pi, pi)); w^c uses that branch and conj(w)^c is read
    as the conjugate of w^c.  For negative c the overall sign is flipped so that
    phi stays positive.
    """

    family = "disc_family"
    native_model = DISC
    symmetric = True

    def __init__(self, c, eps=1.0, cut="P2"):
        c = float(c)
        if c == 0:
            raise InvalidData("c must be nonzero")
        eps = complex(eps)
        if abs(abs(eps) - 1) > 1e-12:
            raise InvalidData("eps must have unit modulus")
        if cut not in ("P1", "P2"):
            raise InvalidData("cut must be 'P1' or 'P2'")
        self.c = c
        self.eps = eps
        self.cut = cut

    @property
    def integer(self):
        return float(self.c).is_integer()

    def params(self):
        return {"c": self.c, "eps": [self.eps.real, self.eps.imag], "cut": self.cut}

    def wpow(self, w):
        """w^c on the configured branch (a complex jet)."""
        if self.integer:
            out = w
            for _ in range(abs(int(self.c)) - 1):
                out = out * w
            return out if self.c > 0 else out.reciprocal()
        if np.any(w.value == 0):
            raise PoleError("disc origin is singular for non-integer c")
        logw = np.log(w.value) if self.integer else branch_log(w.value, self.cut)
        return w.pow(self.c, logw)

    def expr_disc(self, w):
        wc = self.wpow(w)
        m2c = (wc * wc.conj()).real  # |w|^{2c}
        den = (1 - self.eps * wc).abs2()
        return np.sign(self.c) * (1 - m2c) / den

    def check_poles(self, w):
        """Raise PoleError at roots of eps w^c = 1 (on the unit circle only)."""
        w = as_points2(w)
        if np.any(np.abs(w) >= 1):
            raise PoleError("denominator roots lie on the unit circle")

    def expr4(self, X):
        return _lifted_expr4(self, X)

    def check4(self, x):
        _check_axis(x)


class FHP1(SuperPotential):
    """phi_1 = (1 - |w|^5) / (1 - 2 Im w^{5/2} + |w|^5), cut P1."""

    family = "fhp1"
    native_model = DISC
    symmetric = True
    c, eps, cut = 2.5, -1j, "P1"

    def _w52(self, w):
        if np.any(w.value == 0):
            raise PoleError("disc origin is singular for c = 5/2")
        return w.pow(2.5, branch_log(w.value, self.cut))

    def expr_disc(self, w):
        f = self._w52(w)
        m5 = (f * f.conj()).real
        return (1 - m5) / (1 - 2 * f.imag + m5)

    def expr4(self, X):
        return _lifted_expr4(self, X)

    def check4(self, x):
        _check_axis(x)


class FHP2(FHP1):
    """phi_2 = (1 - |w|^5) / (1 - 2 Re w^{5/2} + |w|^5), cut P2."""

    family = "fhp2"
    c, eps, cut = 2.5, 1.0, "P2"

    def expr_disc(self, w):
        f = self._w52(w)
        m5 = (f * f.conj()).real
        return (1 - m5) / (1 - 2 * f.real + m5)


# ---------------------------------------------------------------------------
# generic (black-box) potentials

def _fd_stencil(k):
    """Second-order central stencil for the k-th derivative: offsets, weights."""
    return {
        0: ([0], [1.0]),
        1: ([-1, 1], [-0.5, 0.5]),
        2: ([-1, 0, 1], [1.0, -2.0, 1.0]),
        3: ([-2, -1, 1, 2], [-0.5, 1.0, -1.0, 0.5]),
        4: ([-2, -1, 0, 1, 2], [1.0, -4.0, 6.0, -4.0, 1.0]),
    }[k]


def fd_partials(func, x, order, eps=np.finfo(float).eps):
    """All partials of ``func`` up to ``order`` at points x (dim, n).

    Tensor-product central differences with step
    h_k = eps^(1/(k+2)) (1 + |x|) for total order k, plus one Richardson level.
    Returns (partials, error_estimates), both ordered like the jet space.
    """
    x = np.asarray(x, dtype=float)
    dim, n = x.shape
    space = jet_space(dim, order)
    scale = 1 + np.sqrt(np.sum(x ** 2, axis=0))
    vals = np.empty((space.size, n))
    errs = np.zeros((space.size, n))
    f0 = np.asarray(func(x), dtype=float)

    def diff(alpha, h):
        acc = np.zeros(n)
        stencils = [_fd_stencil(a) for a in alpha]
        grids = np.meshgrid(*[np.arange(len(s[0])) for s in stencils], indexing="ij")
        for idx in zip(*[g.ravel() for g in grids]):
            wgt = 1.0
            off = np.zeros((dim, 1))
            for v, j in enumerate(idx):
                o, w = stencils[v]
                wgt *= w[j]
                off[v, 0] = o[j]
            acc += wgt * np.asarray(func(x + off * h), dtype=float)
        return acc / h ** sum(alpha)

    for i, alpha in enumerate(space.alphas):
        k = sum(alpha)
        if k == 0:
            vals[i] = f0
            continue
        h = np.finfo(float).eps ** (1.0 / (k + 2)) * scale
        coarse = diff(alpha, h)
        fine = diff(alpha, h / 2)
        vals[i] = (4 * fine - coarse) / 3
        errs[i] = np.abs(fine - coarse) / 3
    return vals, errs


class Generic4(SuperPotential):
    """Black-box rho on R^4.

    ``func`` maps points (4, n) to values (n,).  If ``jet_func`` is given it
    receives the four coordinate jets and must return a jet (exact path);
    otherwise derivatives come from :func:`fd_partials`.
    """

    family = "generic"

    def __init__(self, func=None, jet_func=None, name=None, symmetric=False):
        if func is None and jet_func is None:
            raise InvalidData("Generic4 needs func or jet_func")
        self.func = func
        self.jet_func = jet_func
        self.name = name
        self.symmetric = symmetric

    def params(self):
        if self.name is None:
            raise InvalidData("anonymous generic potentials cannot be serialised")
        return {"name": self.name}

    def expr4(self, X):
        if self.jet_func is None:
            raise InvalidData("finite-difference potential has no jet expression")
        return self.jet_func(X)

    def jet4(self, x, order=2):
        if order > MAX_ORDER:
            raise OrderUnsupported(f"order {order} > {MAX_ORDER}")
        x = as_points4(x)
        if self.jet_func is not None:
            return self.jet_func(variables(4, order, x))
        vals, errs = fd_partials(self.func, x, order)
        jet = Jet.from_partials(jet_space(4, order), vals)
        jet.err = errs
        return jet


class Generic2(SuperPotential):
    """Black-box phi on one hyperbolic model.

    ``func`` maps complex points of ``model`` to real values; ``jet_func``
    (optional) maps a complex coordinate jet to a real jet.
    """

    family = "generic2"
    symmetric = True

    def __init__(self, func=None, model=HALFPLANE, jet_func=None, name=None):
        _check_model(model)
        if func is None and jet_func is None:
            raise InvalidData("Generic2 needs func or jet_func")
        self.func = func
        self.jet_func = jet_func
        self.native_model = model
        self.name = name

    def params(self):
        if self.name is None:
            raise InvalidData("anonymous generic potentials cannot be serialised")
        return {"name": self.name}

    def expr_half(self, z):
        if self.jet_func is None:
            raise InvalidData("finite-difference potential has no jet expression")
        if self.native_model == HALFPLANE:
            return self.jet_func(z)
        return self.jet_func(half_to_disc(z))

    def expr_disc(self, w):
        if self.jet_func is None:
            raise InvalidData("finite-difference potential has no jet expression")
        if self.native_model == DISC:
            return self.jet_func(w)
        return self.jet_func(disc_to_half(w))

    def _pulled(self, model):
        if model == self.native_model:
            return self.func
        conv = half_to_disc if model == HALFPLANE else disc_to_half
        return lambda p: self.func(conv(p))

    def jet2(self, pts, model=HALFPLANE, order=2):
        if self.jet_func is not None:
            return super().jet2(pts, model, order)
        _check_model(model)
        pts = as_points2(pts)
        _check_interior(pts, model)
        f = self._pulled(model)
        vals, errs = fd_partials(lambda uv: f(uv[0] + 1j * uv[1]),
                                 np.array([pts.real, pts.imag]), order)
        jet = Jet.from_partials(jet_space(2, order), vals)
        jet.err = errs
        return jet

    def expr4(self, X):
        return _lifted_expr4(self, X)

    def jet4(self, x, order=2):
        if self.jet_func is not None:
            x = as_points4(x)
            _check_axis(x)
            return _lifted_expr4(self, variables(4, order, x))
        f = self._pulled(HALFPLANE)

        def rho(x):
            r = np.sqrt(np.sum(x[1:] ** 2, axis=0))
            return f(x[0] + 1j * r) / r

        x = as_points4(x)
        _check_axis(x)
        vals, errs = fd_partials(rho, x, order)
        jet = Jet.from_partials(jet_space(4, order), vals)
        jet.err = errs
        return jet


def nonharmonic_control():
    """rho = 1 + |x|^2, the standard non-harmonic control potential."""
    return Generic4(jet_func=lambda X: 1 + sum(x * x for x in X), name="nonharmonic",
                    symmetric=True)


def nonharmonic_hyp_control():
    """phi = Im z + (Im z)^3, a non-harmonic hyperbolic control."""
    return Generic2(jet_func=lambda z: z.imag + z.imag * z.imag * z.imag,
                    model=HALFPLANE, name="nonharmonic_hyp")


_NAMED_GENERIC = {"nonharmonic": nonharmonic_control, "nonharmonic_hyp": nonharmonic_hyp_control}


# ---------------------------------------------------------------------------
# JSON descriptors

def from_dict(d):
    """Inverse of ``SuperPotential.to_dict``; raises InvalidData on bad input."""
    if not isinstance(d, dict) or "family" not in d:
        raise InvalidData("potential descriptor must be an object with a 'family' key")
    fam = d["family"]
    p = d.get("params", {}) or {}
    try:
        if fam == "thooft":
            return ThooftPotential(p.get("centers", []), p.get("scales", []), p.get("base", 1.0))
        if fam == "halfplane_sym":
            if "zeros" in p and "centers" not in p:
                return HalfplaneSym.from_zeros([complex(a, b) for a, b in p["zeros"]])
            zeros = p.get("zeros")
            zeros = None if zeros is None else [complex(a, b) for a, b in zeros]
            return HalfplaneSym(p.get("centers", []), p.get("scales", []),
                                p.get("base", 1.0), zeros=zeros)
        if fam == "disc_family":
            eps = p.get("eps", 1.0)
            if isinstance(eps, (list, tuple)):
                eps = complex(eps[0], eps[1])
            elif eps == "monodromy":
                eps = np.exp(2j * np.pi * float(p["c"]))
            return DiscFamily(p["c"], eps, p.get("cut", "P2"))
        if fam == "fhp1":
            return FHP1()
        if fam == "fhp2":
            return FHP2()
        if fam == "const":
            return ConstPotential(p.get("value", 1.0))
        if fam in ("generic", "generic2"):
            name = p.get("name")
            if name not in _NAMED_GENERIC:
                raise InvalidData(f"unknown generic potential {name!r}")
            return _NAMED_GENERIC[name]()
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InvalidData):
            raise
        raise InvalidData(f"bad parameters for {fam}: {exc}") from exc
    raise InvalidData(f"unknown potential family {fam!r}")


# ---------------------------------------------------------------------------
# reduction between R^4 and H^2

def reduce_potential(rho):
    """phi(t, r) = r rho(t + r Q) for an SO(3)-invariant rho."""
    if isinstance(rho, ThooftPotential):
        if not rho.symmetric:
            raise NotSymmetric("a 't Hooft center has nonzero imaginary part")
        return HalfplaneSym(rho.centers[:, 0], rho.scales, rho.base)
    if isinstance(rho, ConstPotential):
        return HalfplaneSym(base=rho.value)
    if isinstance(rho, _Lifted):
        return rho.phi
    if not getattr(rho, "symmetric", False):
        raise NotSymmetric(f"{rho.family} potential is not declared SO(3)-invariant")
    if isinstance(rho, Generic4) and rho.jet_func is None:
        return Generic2(lambda z: z.imag * rho.func(np.array([z.real, z.imag, 0 * z.real, 0 * z.real])),
                        model=HALFPLANE)
    return Generic2(jet_func=lambda z: z.imag * rho.expr4([z.real, z.imag, 0 * z.real, 0 * z.real]),
                    model=HALFPLANE)


class _Lifted(SuperPotential):
    family = "lifted"
    symmetric = True

    def __init__(self, phi):
        self.phi = phi

    def to_dict(self):
        return self.phi.to_dict()

    def expr4(self, X):
        return _lifted_expr4(self.phi, X)

    def check4(self, x):
        _check_axis(x)


def lift_potential(phi):
    """rho = phi / r as an R^4 potential."""
    if isinstance(phi, HalfplaneSym):
        if len(phi.centers) == 0:
            return ConstPotential(phi.base) if phi.base > 0 else _Lifted(phi)
        cen = np.zeros((len(phi.centers), 4))
        cen[:, 0] = phi.centers
        return ThooftPotential(cen, phi.scales, phi.base)
    if isinstance(phi, ThooftPotential) or isinstance(phi, ConstPotential):
        return phi
    return _Lifted(phi)


# ---------------------------------------------------------------------------
# Laplacians and derived scalars

def laplacian(jet):
    """-sum_v d_v^2 of a jet (sign convention Delta = -sum d^2)."""
    return -sum(jet.partial(v, v) for v in range(jet.space.dim))


def harmonic_residual4(p, x):
    """Delta rho at x."""
    return laplacian(p.jet4(x, 2))


def biharmonic_log4(p, x):
    """Delta Delta log rho at x (equals (sum d^2)^2 log rho)."""
    L = p.jet4(x, 4).log()
    return sum(L.partial(u, u, v, v) for u in range(4) for v in range(4))


def hyperbolic_laplacian(jet, pts, model):
    """Delta_h of a 2D jet: -r^2 (d_t^2 + d_r^2) or -((1-|w|^2)^2/4)(d_u^2 + d_v^2)."""
    flat = jet.partial(0, 0) + jet.partial(1, 1)
    pts = as_points2(pts)
    if model == HALFPLANE:
        return -pts.imag ** 2 * flat
    return -((1 - np.abs(pts) ** 2) ** 2 / 4) * flat


def harmonic_residual_hyp(p, pts, model=HALFPLANE):
    """Delta_h phi at the given points of ``model``."""
    return hyperbolic_laplacian(p.jet2(pts, model, 2), pts, model)


def scalar_curvature_conformal(rho, x):
    """Scalar curvature 6 rho^-3 Delta rho of the metric rho^2 (flat metric)."""
    J = rho.jet4(x, 2)
    return 6 * J.value ** -3 * laplacian(J)
