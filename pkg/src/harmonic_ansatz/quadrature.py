"""Deterministic quadrature: disc with boundary extrapolation, 4-ball with tail
extrapolation, and loop integrals.

All rules are fixed tensor products of 16-point Gauss-Legendre panels with
dyadic refinement.  Integrand evaluations are split into fixed-size chunks
(optionally on a thread pool) and reduced by a fixed-order pairwise sum, so
results do not depend on the worker count.  The cap on workers comes from
``QuadConfig.workers`` or the ``HARMONIC_ANSATZ_WORKERS`` environment variable.
"""

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import InvalidData, QuadratureNotConverged

GL_DEGREE = 16
_GL_X, _GL_W = np.polynomial.legendre.leggauss(GL_DEGREE)
CHUNK = 8192


@dataclass(frozen=True)
class QuadConfig:
    panels: int = 2                       # base panels per segment
    deltas: tuple = (1e-2, 1e-3, 1e-4)    # disc boundary cutoffs
    exclusion: float = 1e-3               # radius of excluded balls / discs
    tol: float = 1e-6                     # absolute target for error_estimate
    extrap_order: int = 2                 # polynomial degree in delta
    max_levels: int = 4                   # dyadic refinements
    radius: float = 64.0                  # outer radius for the 4-ball
    workers: int = 0                      # 0: env var or 1
    strict: bool = False                  # raise QuadratureNotConverged

    def __post_init__(self):
        d = np.asarray(self.deltas, dtype=float)
        if d.ndim != 1 or len(d) == 0 or np.any(d <= 0) or np.any(np.diff(d) >= 0):
            raise InvalidData("deltas must be positive and strictly decreasing")
        if self.extrap_order >= len(d):
            raise InvalidData("extrap_order must be below the number of deltas")
        if self.panels < 1 or self.max_levels < 0:
            raise InvalidData("panels must be >= 1 and max_levels >= 0")

    def to_dict(self):
        return {k: (list(v) if isinstance(v, tuple) else v) for k, v in self.__dict__.items()}


@dataclass
class QuadResult:
    value: float
    error_estimate: float
    converged: bool
    per_delta: tuple = ()
    levels: int = 0
    tol: float = 0.0
    note: str = ""
    extra: dict = field(default_factory=dict)

    def scaled(self, s):
        return replace(self, value=s * self.value, error_estimate=abs(s) * self.error_estimate,
                       per_delta=tuple((d, s * v) for d, v in self.per_delta))

    def to_dict(self):
        return {"value": self.value, "error_estimate": self.error_estimate,
                "converged": self.converged, "levels": self.levels, "tol": self.tol,
                "per_delta": [list(p) for p in self.per_delta], "note": self.note}


def pairwise_sum(v):
    """Sum in a fixed binary tree (independent of how v was produced)."""
    v = np.asarray(v, dtype=float).ravel()
    if v.size == 0:
        return 0.0
    while v.size > 1:
        if v.size % 2:
            v = np.append(v, 0.0)
        v = v[0::2] + v[1::2]
    return float(v[0])


def worker_count(cfg=None):
    n = getattr(cfg, "workers", 0) or 0
    if n <= 0:
        try:
            n = int(os.environ.get("HARMONIC_ANSATZ_WORKERS", "1"))
        except ValueError:
            n = 1
    return max(1, n)


def evaluate(f, pts, cfg=None):
    """f over the last axis of ``pts`` in fixed chunks; returns a flat float array."""
    pts = np.asarray(pts)
    n = pts.shape[-1]
    bounds = [(lo, min(lo + CHUNK, n)) for lo in range(0, n, CHUNK)]
    call = lambda b: np.asarray(f(pts[..., b[0]:b[1]]), dtype=float).reshape(-1)
    workers = worker_count(cfg)
    if workers > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(call, bounds))
    else:
        parts = [call(b) for b in bounds]
    return np.concatenate(parts) if parts else np.zeros(0)


def gauss_panels(breaks, per_segment):
    """Nodes and weights of GL16 panels, ``per_segment`` panels per interval."""
    breaks = np.asarray(breaks, dtype=float)
    edges = []
    for a, b in zip(breaks[:-1], breaks[1:]):
        edges.append(np.linspace(a, b, per_segment + 1)[:-1])
    edges = np.concatenate(edges + [breaks[-1:]])
    lo, hi = edges[:-1], edges[1:]
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    x = (mid[:, None] + half[:, None] * _GL_X[None, :]).ravel()
    w = (half[:, None] * _GL_W[None, :]).ravel()
    return x, w


def neville(xs, ys, x0=0.0):
    """Value at x0 of the interpolating polynomial through (xs, ys)."""
    p = list(map(float, ys))
    xs = list(map(float, xs))
    n = len(p)
    for k in range(1, n):
        for i in range(n - k):
            p[i] = ((x0 - xs[i + k]) * p[i] + (xs[i] - x0) * p[i + 1]) / (xs[i] - xs[i + k])
    return p[0]


def _finish(res, cfg, what):
    if not res.converged and cfg.strict:
        raise QuadratureNotConverged(f"{what} did not converge: {res.value} +- {res.error_estimate}",
                                     result=res)
    return res


# ---------------------------------------------------------------------------
# disc

def _disc_partials(f, cfg, level, r_min, exclusion_pts):
    """Integrals over r_min <= |w| <= 1 - delta_i for every delta, one evaluation."""
    deltas = np.asarray(cfg.deltas)
    s0 = -np.log1p(-r_min)
    s_breaks = np.concatenate([[s0], -np.log(deltas)])
    m = cfg.panels * 2 ** level
    # graded radial panels: about one panel per unit of s per refinement unit
    sx_all, sw_all, seg = [], [], []
    for i, (a, b) in enumerate(zip(s_breaks[:-1], s_breaks[1:])):
        npan = max(1, int(np.ceil((b - a) * m)))
        x, w = gauss_panels([a, b], npan)
        sx_all.append(x)
        sw_all.append(w)
        seg.append(np.full(x.size, i))
    s = np.concatenate(sx_all)
    ws = np.concatenate(sw_all)
    seg = np.concatenate(seg)
    r = -np.expm1(-s)
    wr = ws * (1 - r) * r  # dr = (1 - r) ds, area element r dr
    th, wt = gauss_panels([0.0, 2 * np.pi], 4 * m)
    R, T = np.meshgrid(r, th, indexing="ij")
    W = wr[:, None] * wt[None, :]
    w = (R * np.exp(1j * T)).ravel()
    W = W.ravel()
    if exclusion_pts is not None and len(exclusion_pts):
        for c in exclusion_pts:
            W = np.where(np.abs(w - c) < cfg.exclusion, 0.0, W)
    vals = evaluate(f, w, cfg) * W
    vals = vals.reshape(R.shape)
    out = []
    acc = 0.0
    for i in range(len(deltas)):
        acc += pairwise_sum(vals[seg == i])
        out.append(acc)
    return np.array(out)


def integrate_disc(f, cfg=None, r_min=0.0, exclusion_pts=None):
    """Integral of f(w) du dv over the unit disc.

    f is integrated over r_min <= |w| <= 1 - delta for each delta of the
    config and the results are extrapolated polynomially to delta = 0.
    """
    cfg = cfg or QuadConfig()
    prev = None
    hist = []
    for level in range(cfg.max_levels + 1):
        part = _disc_partials(f, cfg, level, r_min, exclusion_pts)
        hist.append(part)
        if prev is not None:
            diff = np.max(np.abs(part - prev))
            if diff <= 0.1 * cfg.tol * max(1.0, abs(part[-1])):
                break
        prev = part
    part = hist[-1]
    ref_err = np.max(np.abs(hist[-1] - hist[-2])) if len(hist) > 1 else np.inf
    deltas = np.asarray(cfg.deltas)
    k = cfg.extrap_order
    value = neville(deltas[-k - 1:], part[-k - 1:])
    if k >= 1:
        lower = neville(deltas[-k:], part[-k:])
        ext_err = abs(value - lower)
    else:
        ext_err = abs(part[-1] - part[-2]) if len(part) > 1 else np.inf
    d = np.diff(part)
    monotone = bool(np.all(d >= 0) or np.all(d <= 0))
    err = float(ref_err + ext_err)
    res = QuadResult(float(value), err, bool(err <= cfg.tol and monotone),
                     tuple(zip(deltas.tolist(), part.tolist())), len(hist) - 1, cfg.tol,
                     "" if monotone else "non-monotone delta sequence")
    return _finish(res, cfg, "disc quadrature")


# ---------------------------------------------------------------------------
# 4-ball

def _radial_breaks(R, centers):
    br = [0.0, 0.25, 0.5]
    x = 1.0
    while x < R:
        br.append(x)
        x *= 2
    br.append(R)
    for c in centers:
        n = float(np.linalg.norm(c))
        for v in (n - 0.5, n, n + 0.5):
            if 0 < v < R:
                br.append(v)
    return np.unique(np.round(np.array(br), 12))


def _ball_level(f, cfg, level, centers, axisymmetric):
    R = cfg.radius
    breaks = _radial_breaks(R, centers)
    m = cfg.panels * 2 ** level
    rr, wr = gauss_panels(breaks, m)
    seg = np.searchsorted(breaks, rr) - 1
    if axisymmetric:
        ps, wp = gauss_panels([0.0, np.pi], 4 * m)
        Rg, Pg = np.meshgrid(rr, ps, indexing="ij")
        W = (wr[:, None] * wp[None, :]) * 4 * np.pi * Rg ** 3 * np.sin(Pg) ** 2
        x = np.array([Rg * np.cos(Pg), Rg * np.sin(Pg), 0 * Rg, 0 * Rg]).reshape(4, -1)
    else:
        n1 = 8 * 2 ** level
        p1, w1 = gauss_panels([0.0, np.pi], max(1, n1 // GL_DEGREE))
        p2, w2 = p1, w1
        nphi = 2 * p1.size
        ph = (np.arange(nphi) + 0.5) * 2 * np.pi / nphi
        wph = np.full(nphi, 2 * np.pi / nphi)
        Rg, A1, A2, Ph = np.meshgrid(rr, p1, p2, ph, indexing="ij")
        W = (wr[:, None, None, None] * w1[None, :, None, None] * w2[None, None, :, None]
             * wph[None, None, None, :]) * Rg ** 3 * np.sin(A1) ** 2 * np.sin(A2)
        x = np.array([Rg * np.cos(A1), Rg * np.sin(A1) * np.cos(A2),
                      Rg * np.sin(A1) * np.sin(A2) * np.cos(Ph),
                      Rg * np.sin(A1) * np.sin(A2) * np.sin(Ph)]).reshape(4, -1)
    W = W.reshape(-1)
    for c in centers:
        W = np.where(np.sum((x - np.asarray(c, float)[:, None]) ** 2, axis=0) < cfg.exclusion ** 2,
                     0.0, W)
    vals = evaluate(f, x, cfg) * W
    segs = np.broadcast_to(seg.reshape((-1,) + (1,) * (Rg.ndim - 1)), Rg.shape).reshape(-1)
    cum = np.cumsum([pairwise_sum(vals[segs == i]) for i in range(len(breaks) - 1)])
    return breaks[1:], cum


def _tail(Rs, Is):
    return (Rs[-1] ** 4 * Is[-1] - Rs[-2] ** 4 * Is[-2]) / (Rs[-1] ** 4 - Rs[-2] ** 4)


def integrate_ball4(f, cfg=None, centers=(), axisymmetric=False, tail=True):
    """Integral of f(x) over R^4 (or the ball of radius cfg.radius if tail=False).

    ``axisymmetric`` assumes f depends only on (x0, |(x1, x2, x3)|) and
    integrates over (R, psi) with weight 4 pi R^3 sin^2 psi.  Balls of radius
    cfg.exclusion around ``centers`` get zero weight.  The tail beyond the
    outer radius is fitted as I(R) = I_inf - a R^-4 on the last two shells.
    """
    cfg = cfg or QuadConfig()
    centers = [np.asarray(c, dtype=float) for c in np.asarray(centers, dtype=float).reshape(-1, 4)]
    if axisymmetric and any(np.any(c[1:] != 0) for c in centers):
        raise InvalidData("axisymmetric integration needs centers on the real axis")
    hist = []
    for level in range(cfg.max_levels + 1):
        Rs, cum = _ball_level(f, cfg, level, centers, axisymmetric)
        half = np.searchsorted(Rs, cfg.radius / 2)
        quarter = np.searchsorted(Rs, cfg.radius / 4)
        if tail:
            v = _tail(Rs[[half, -1]], cum[[half, -1]])
            v_prev = _tail(Rs[[quarter, half]], cum[[quarter, half]])
            tail_err = abs(v - v_prev)
        else:
            v, tail_err = cum[-1], 0.0
        hist.append((v, tail_err))
        if len(hist) > 1 and abs(hist[-1][0] - hist[-2][0]) <= 0.1 * cfg.tol * max(1.0, abs(v)):
            break
    v, tail_err = hist[-1]
    ref_err = abs(hist[-1][0] - hist[-2][0]) if len(hist) > 1 else np.inf
    err = float(ref_err + tail_err)
    res = QuadResult(float(v), err, bool(err <= cfg.tol), (), len(hist) - 1, cfg.tol)
    return _finish(res, cfg, "ball quadrature")


# ---------------------------------------------------------------------------
# loops

def loop_integral(g, r=1.0, n=256, cuts=None, tol=1e-10):
    """Integral over theta in [0, 2 pi) of g(theta) (the d theta component).

    Without cuts: offset trapezoidal rule (spectral for smooth periodic g),
    error from halving n.  With cuts (angles where g jumps): GL16 panels on each
    arc between cuts, error from halving the panel count.  ``r`` is passed
    through only for bookkeeping; g already includes it.
    """
    if not cuts:
        def trap(m):
            th = (np.arange(m) + 0.5) * 2 * np.pi / m
            return pairwise_sum(np.asarray(g(th), dtype=float)) * 2 * np.pi / m
        v = trap(n)
        err = abs(v - trap(n // 2))
    else:
        c = np.sort(np.mod(np.asarray(cuts, dtype=float), 2 * np.pi))
        arcs = np.concatenate([c, [c[0] + 2 * np.pi]])
        per = max(1, n // (GL_DEGREE * len(c)))

        def gl(p):
            x, w = gauss_panels(arcs, p)
            return pairwise_sum(np.asarray(g(x), dtype=float) * w)
        v = gl(per)
        err = abs(v - gl(max(1, per // 2))) if per > 1 else abs(v - gl(2 * per))
    return QuadResult(float(v), float(err), bool(err <= tol), (), 0, tol, extra={"r": r, "n": n})
