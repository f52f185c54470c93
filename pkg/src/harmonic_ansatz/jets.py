"""Truncated multivariate Taylor arithmetic (forward-mode jets).

A :class:`Jet` stores the Taylor coefficients ``c[alpha] = d^alpha f / alpha!``
of a scalar field at a batch of points, for every multi-index ``alpha`` up to a
fixed total order.  Coefficients have shape ``(ncoef, npts)`` and may be real
or complex; the independent variables are always real.  Products go through
the compiled kernel selected in :mod:`harmonic_ansatz._kernels`.

Elementary functions are applied by composing with their Taylor series around
the value, so a closed-form expression written with jet arithmetic yields
derivatives that are exact up to rounding.
"""

from functools import lru_cache
from itertools import product
from math import factorial

import numpy as np

from . import _kernels
from .errors import OrderUnsupported

MAX_ORDER = 4


def _multi_indices(dim, order):
    out = []
    for deg in range(order + 1):
        level = [a for a in product(range(deg + 1), repeat=dim) if sum(a) == deg]
        out.extend(sorted(level, reverse=True))
    return out


class JetSpace:
    """Index bookkeeping for jets in ``dim`` variables truncated at ``order``."""

    def __init__(self, dim, order):
        if order > MAX_ORDER or order < 0:
            raise OrderUnsupported(f"jet order {order} outside 0..{MAX_ORDER}")
        self.dim = dim
        self.order = order
        self.alphas = _multi_indices(dim, order)
        self.size = len(self.alphas)
        self.lookup = {a: i for i, a in enumerate(self.alphas)}
        self.afact = np.array(
            [np.prod([factorial(k) for k in a]) for a in self.alphas], dtype=float
        )
        triples = []
        for i, a in enumerate(self.alphas):
            for j, b in enumerate(self.alphas):
                s = tuple(x + y for x, y in zip(a, b))
                if sum(s) <= order:
                    triples.append((self.lookup[s], i, j))
        triples.sort()
        t = np.array(triples, dtype=np.intp)
        self.K = np.ascontiguousarray(t[:, 0])
        self.I = np.ascontiguousarray(t[:, 1])
        self.J = np.ascontiguousarray(t[:, 2])
        self.unit = [self.lookup[tuple(int(k == v) for k in range(dim))] if order else None
                     for v in range(dim)]

    def deriv_map(self, v):
        """Source indices and factors taking a jet to its ``v``-derivative."""
        return _deriv_map(self.dim, self.order, v)

    def __repr__(self):
        return f"JetSpace(dim={self.dim}, order={self.order})"


@lru_cache(maxsize=None)
def jet_space(dim, order):
    return JetSpace(dim, order)


@lru_cache(maxsize=None)
def _deriv_map(dim, order, v):
    upper = jet_space(dim, order)
    lower = jet_space(dim, order - 1)
    src = np.empty(lower.size, dtype=np.intp)
    fac = np.empty(lower.size)
    for i, b in enumerate(lower.alphas):
        a = list(b)
        a[v] += 1
        src[i] = upper.lookup[tuple(a)]
        fac[i] = b[v] + 1
    return src, fac


def _is_jet(x):
    return isinstance(x, Jet)


class Jet:
    """Truncated Taylor expansion of a scalar field on a batch of points."""

    __array_priority__ = 1000

    def __init__(self, space, coeffs):
        self.space = space
        self.c = coeffs

    # construction ---------------------------------------------------------
    @classmethod
    def constant(cls, space, value, npts=None):
        value = np.asarray(value)
        if value.ndim == 0:
            value = np.full(npts or 1, value)
        c = np.zeros((space.size, value.shape[0]), dtype=np.result_type(value, float))
        c[0] = value
        return cls(space, c)

    @classmethod
    def variables(cls, space, coords):
        """One jet per coordinate; ``coords`` has shape (dim, npts)."""
        coords = np.asarray(coords, dtype=float)
        out = []
        for v in range(space.dim):
            c = np.zeros((space.size, coords.shape[1]))
            c[0] = coords[v]
            if space.order:
                c[space.unit[v]] = 1.0
            out.append(cls(space, c))
        return out

    @classmethod
    def from_partials(cls, space, partials):
        """Build from an array of partial derivatives ordered like ``space.alphas``."""
        partials = np.asarray(partials)
        return cls(space, partials / space.afact[:, None])

    # basic access ---------------------------------------------------------
    @property
    def order(self):
        return self.space.order

    @property
    def npts(self):
        return self.c.shape[1]

    @property
    def value(self):
        return self.c[0]

    def partial(self, *vars_):
        """Value of the partial derivative along the listed variables."""
        a = [0] * self.space.dim
        for v in vars_:
            a[v] += 1
        i = self.space.lookup[tuple(a)]
        return self.c[i] * self.space.afact[i]

    def partials(self):
        return self.c * self.space.afact[:, None]

    def gradient(self):
        return np.array([self.partial(v) for v in range(self.space.dim)])

    def deriv(self, v):
        """The jet of the partial derivative along variable ``v`` (one order lower)."""
        if self.order == 0:
            raise OrderUnsupported("cannot differentiate an order-0 jet")
        src, fac = self.space.deriv_map(v)
        return Jet(jet_space(self.space.dim, self.order - 1), self.c[src] * fac[:, None])

    def truncate(self, order):
        if order >= self.order:
            return self
        sp = jet_space(self.space.dim, order)
        return Jet(sp, self.c[: sp.size])

    # arithmetic -------------------------------------------------------------
    def _coerce(self, other):
        if _is_jet(other):
            if other.space is not self.space:
                lo = min(self.order, other.order)
                return self.truncate(lo), other.truncate(lo)
            return self, other
        return self, None

    def __add__(self, other):
        a, b = self._coerce(other)
        if b is None:
            c = a.c.astype(np.result_type(a.c, np.asarray(other)), copy=True)
            c[0] = c[0] + other
            return Jet(a.space, c)
        return Jet(a.space, a.c + b.c)

    __radd__ = __add__

    def __neg__(self):
        return Jet(self.space, -self.c)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._coerce(other)
        if b is None:
            return Jet(a.space, a.c * np.asarray(other))
        dtype = np.result_type(a.c, b.c)
        ac = np.ascontiguousarray(a.c, dtype=dtype)
        bc = np.ascontiguousarray(b.c, dtype=dtype)
        out = np.empty_like(ac)
        sp = a.space
        _kernels.jet_mul(ac, bc, sp.I, sp.J, sp.K, out)
        return Jet(sp, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if _is_jet(other):
            return self * other.reciprocal()
        return Jet(self.space, self.c / np.asarray(other))

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __pow__(self, p):
        if isinstance(p, int) and 0 <= p <= 4:
            out = Jet.constant(self.space, np.ones(self.npts, dtype=self.c.dtype))
            for _ in range(p):
                out = out * self
            return out
        return self.pow(p)

    def conj(self):
        return Jet(self.space, np.conj(self.c))

    @property
    def real(self):
        return Jet(self.space, np.ascontiguousarray(self.c.real))

    @property
    def imag(self):
        return Jet(self.space, np.ascontiguousarray(self.c.imag))

    def abs2(self):
        """``|f|^2`` as a real jet."""
        if np.iscomplexobj(self.c):
            return (self * self.conj()).real
        return self * self

    # composition ------------------------------------------------------------
    def compose(self, taylor):
        """Apply ``f`` given ``taylor[n] = f^(n)(value) / n!`` for n = 0..order."""
        h = Jet(self.space, self.c.copy())
        h.c[0] = 0
        N = self.order
        out = Jet.constant(self.space, np.asarray(taylor[N]) + 0 * self.c[0])
        for n in range(N - 1, -1, -1):
            out = out * h + taylor[n]
        return out

    def reciprocal(self):
        u = self.value
        inv = 1.0 / u
        t = [inv]
        for _ in range(self.order):
            t.append(-t[-1] * inv)
        return self.compose(t)

    def log(self, logvalue=None):
        """Natural log; ``logvalue`` overrides the branch of the value term."""
        u = self.value
        inv = 1.0 / u
        t = [np.log(u) if logvalue is None else logvalue]
        p = np.ones_like(inv)
        for n in range(1, self.order + 1):
            p = p * inv
            t.append((-1) ** (n - 1) * p / n)
        return self.compose(t)

    def exp(self):
        e = np.exp(self.value)
        return self.compose([e / factorial(n) for n in range(self.order + 1)])

    def pow(self, p, logvalue=None):
        """``self ** p`` for real or complex ``p``.

        For complex values the branch is fixed by ``logvalue`` (the chosen
        logarithm of the value); the default is the principal branch.
        """
        u = self.value
        if logvalue is None:
            logvalue = np.log(u.astype(complex)) if np.iscomplexobj(u) or np.any(u < 0) else np.log(u)
        t = []
        coef = 1.0
        for n in range(self.order + 1):
            t.append(coef * np.exp((p - n) * logvalue))
            coef = coef * (p - n) / (n + 1)
        return self.compose(t)

    def sqrt(self):
        return self.pow(0.5)

    def __repr__(self):
        return f"Jet(dim={self.space.dim}, order={self.order}, npts={self.npts}, dtype={self.c.dtype})"


def variables(dim, order, coords):
    """Coordinate jets for a batch of points; ``coords`` has shape (dim, npts)."""
    return Jet.variables(jet_space(dim, order), coords)


def complex_variable(order, pts):
    """The jet of ``w = u + i v`` at complex points ``pts`` in variables (u, v)."""
    pts = np.atleast_1d(np.asarray(pts, dtype=complex))
    u, v = variables(2, order, np.array([pts.real, pts.imag]))
    return u + 1j * v
