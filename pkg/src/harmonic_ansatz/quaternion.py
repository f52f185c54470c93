"""Quaternion arithmetic and quaternion-valued forms on R^4.

Quaternion arrays carry the four real components on axis 0, so an array of
shape (4, n) holds n quaternions ``w + i x1 + j x2 + k x3``.  One-forms are
stored as (4, 4, ...) arrays indexed [mu, component]; two-forms as
(6, 4, ...) arrays over the ordered pairs (01, 02, 03, 12, 13, 23).
"""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidData

PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
PAIR_INDEX = {p: n for n, p in enumerate(PAIRS)}

# Hodge star on 2-forms as a signed permutation: *(01) = 23, *(02) = -13, ...
STAR_PERM = np.array([5, 4, 3, 2, 1, 0])
STAR_SIGN = np.array([1.0, -1.0, 1.0, 1.0, -1.0, 1.0])

# tolerance for the real part of sp(1)-valued coefficients
IMAG_TOL = 1e-12


def qmul(p, q):
    """Hamilton product.

    Accepts :class:`Quaternion` values or component arrays of shape (4, ...)
    (broadcast over trailing axes).
    """
    if isinstance(p, Quaternion) and isinstance(q, Quaternion):
        return Quaternion(*qmul(p.as_array(), q.as_array()))
    p = np.asarray(p)
    q = np.asarray(q)
    a0, a1, a2, a3 = p
    b0, b1, b2, b3 = q
    return np.array([
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    ])


def qconj(q):
    q = np.asarray(q)
    return np.concatenate([q[:1], -q[1:]])


def qnorm2(q):
    return np.sum(np.asarray(q) ** 2, axis=0)


def qinv(q):
    q = np.asarray(q, dtype=float)
    return qconj(q) / qnorm2(q)


def qim(q):
    q = np.array(q, dtype=float)
    q[0] = 0
    return q


def basis(n=None):
    """The unit quaternions (1, i, j, k) as a (4, 4) array, row mu = e_mu."""
    e = np.eye(4)
    if n is None:
        return e
    return np.broadcast_to(e[:, :, None], (4, 4, n))


def basis_bar():
    return np.array([qconj(row) for row in np.eye(4)])


@dataclass(frozen=True)
class Quaternion:
    w: float = 0.0
    x1: float = 0.0
    x2: float = 0.0
    x3: float = 0.0

    @classmethod
    def from_array(cls, a):
        return cls(*(float(v) for v in a))

    def as_array(self):
        return np.array([self.w, self.x1, self.x2, self.x3], dtype=float)

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            return qmul(self, other)
        return Quaternion(*(self.as_array() * other))

    __rmul__ = lambda self, s: Quaternion(*(self.as_array() * s))

    def __add__(self, other):
        return Quaternion(*(self.as_array() + other.as_array()))

    def __sub__(self, other):
        return Quaternion(*(self.as_array() - other.as_array()))

    def __neg__(self):
        return Quaternion(*(-self.as_array()))

    def conj(self):
        return Quaternion(self.w, -self.x1, -self.x2, -self.x3)

    def norm2(self):
        return float(qnorm2(self.as_array()))

    def __abs__(self):
        return float(np.sqrt(self.norm2()))

    def inv(self):
        n = self.norm2()
        if n == 0:
            raise ZeroDivisionError("inverse of the zero quaternion")
        return Quaternion(*(self.conj().as_array() / n))

    def re(self):
        return self.w

    def im(self):
        return Quaternion(0.0, self.x1, self.x2, self.x3)

    def isclose(self, other, tol=1e-12):
        return bool(np.max(np.abs(self.as_array() - other.as_array())) <= tol)


ONE = Quaternion(1.0)
I = Quaternion(0.0, 1.0)
J = Quaternion(0.0, 0.0, 1.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


def _enforce_imaginary(arr, what):
    arr = np.array(arr, dtype=float)
    re = arr[:, 0]
    scale = np.maximum(1.0, np.max(np.abs(arr), axis=(0, 1)))
    bad = np.abs(re) > IMAG_TOL * scale
    if np.any(bad):
        raise InvalidData(f"{what} has a real part of size {np.max(np.abs(re)):.3g}")
    arr[:, 0] = 0.0
    return arr


class QOneForm:
    """Imaginary-quaternion coefficients ``a[mu]`` of dx^mu, shape (4, 4, ...)."""

    def __init__(self, a, check=True):
        a = np.asarray(a, dtype=float)
        if a.shape[:2] != (4, 4):
            raise InvalidData(f"one-form array must have leading shape (4, 4), got {a.shape}")
        self.a = _enforce_imaginary(a, "one-form") if check else a

    def __getitem__(self, mu):
        return self.a[mu]

    def __add__(self, other):
        return QOneForm(self.a + other.a, check=False)

    def __sub__(self, other):
        return QOneForm(self.a - other.a, check=False)

    def max_abs(self):
        return np.max(np.abs(self.a), axis=(0, 1))

    @classmethod
    def zeros(cls, *shape):
        return cls(np.zeros((4, 4) + shape), check=False)


class QTwoForm:
    """Imaginary-quaternion coefficients over the pairs in :data:`PAIRS`, shape (6, 4, ...)."""

    def __init__(self, f, check=True):
        f = np.asarray(f, dtype=float)
        if f.shape[:2] != (6, 4):
            raise InvalidData(f"two-form array must have leading shape (6, 4), got {f.shape}")
        self.f = _enforce_imaginary(f, "two-form") if check else f

    def __getitem__(self, pair):
        if isinstance(pair, tuple):
            mu, nu = pair
            if mu == nu:
                return np.zeros_like(self.f[0])
            if mu > nu:
                return -self.f[PAIR_INDEX[(nu, mu)]]
            return self.f[PAIR_INDEX[(mu, nu)]]
        return self.f[pair]

    def __add__(self, other):
        return QTwoForm(self.f + other.f, check=False)

    def __sub__(self, other):
        return QTwoForm(self.f - other.f, check=False)

    def __mul__(self, s):
        return QTwoForm(self.f * s, check=False)

    __rmul__ = __mul__

    @classmethod
    def zeros(cls, *shape):
        return cls(np.zeros((6, 4) + shape), check=False)

    @classmethod
    def from_real(cls, coeffs, q):
        """Two-form sum_n coeffs[n] * q * (pair n) for a fixed quaternion q."""
        coeffs = np.asarray(coeffs, dtype=float)
        q = np.asarray(q, dtype=float)
        return cls(coeffs[:, None] * q[None, :], check=False)


def hodge_star(F):
    """Euclidean Hodge star on R^4 (orientation dx0^dx1^dx2^dx3)."""
    f = F.f[STAR_PERM] * STAR_SIGN.reshape((6,) + (1,) * (F.f.ndim - 1))
    return QTwoForm(f, check=False)


def sd_asd_split(F):
    """Return (F+, F-) with *F+ = F+, *F- = -F-, F+ + F- = F."""
    S = hodge_star(F)
    return QTwoForm(0.5 * (F.f + S.f), check=False), QTwoForm(0.5 * (F.f - S.f), check=False)


def density(F):
    """|F|^2 = sum over mu<nu of |F_mu nu|^2 (quaternion norm)."""
    return np.sum(F.f ** 2, axis=(0, 1))


def wedge(A, B):
    """(A ^ B)_{mu nu} = A_mu B_nu - A_nu B_mu for quaternion-valued one-forms."""
    out = np.zeros((6,) + A.a.shape[1:])
    for n, (mu, nu) in enumerate(PAIRS):
        out[n] = qmul(A.a[mu], B.a[nu]) - qmul(A.a[nu], B.a[mu])
    return QTwoForm(out, check=False)


def _pair_form(terms):
    f = np.zeros((6, 4))
    for (mu, nu), q in terms:
        f[PAIR_INDEX[(mu, nu)]] += q
    return f


_i, _j, _k = np.eye(4)[1], np.eye(4)[2], np.eye(4)[3]

# dx ^ dxbar = -2[i(01+23) + j(02-13) + k(03+12)], self-dual
DX_DXBAR = QTwoForm(_pair_form([
    ((0, 1), -2 * _i), ((2, 3), -2 * _i),
    ((0, 2), -2 * _j), ((1, 3), 2 * _j),
    ((0, 3), -2 * _k), ((1, 2), -2 * _k),
]))

# dxbar ^ dx = 2[i(01-23) + j(02+13) + k(03-12)], anti-self-dual
DXBAR_DX = QTwoForm(_pair_form([
    ((0, 1), 2 * _i), ((2, 3), -2 * _i),
    ((0, 2), 2 * _j), ((1, 3), 2 * _j),
    ((0, 3), 2 * _k), ((1, 2), -2 * _k),
]))

# real bases of the self-dual and anti-self-dual 2-forms
SD_BASIS = np.array([
    [1, 0, 0, 0, 0, 1],   # 01 + 23
    [0, 1, 0, 0, -1, 0],  # 02 - 13
    [0, 0, 1, 1, 0, 0],   # 03 + 12
], dtype=float)
ASD_BASIS = np.array([
    [1, 0, 0, 0, 0, -1],  # 01 - 23
    [0, 1, 0, 0, 1, 0],   # 02 + 13
    [0, 0, 1, -1, 0, 0],  # 03 - 12
], dtype=float)
