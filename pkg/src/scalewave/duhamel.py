r"""Semilinear layer: weighted norms, the N_j^nu gauges, the Duhamel operator
and Picard iteration for

    v = v0 + L v,   L v(t, r) = c_n^{-1} int_0^t <tau>^{-mu(p-1)/2} Theta(|v(tau, .)|^p)(t - tau, r) dtau.

Fields between iterations live on a tensor grid, uniform in (log(1+t), log r),
plus a few diagonal bands t = r + d.  What is interpolated is the ratio of v
to the smooth envelope

    omega_0 = r^{1-m} <r>^{-1} psi,   psi = (1+t+r)^{-1/2} (1+(t-r)^2)^{-kappa/2}

(r^{-m} psi for the r-derivative).  psi has the decay of phi_kappa without its
kink at t = r, so the ratio stays smooth wherever v does.  Outside the grid
the ratio is held at its edge value.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from numpy.polynomial.legendre import leggauss

from .errors import DomainError, PicardDivergence
from .exponents import ModelParams, validate
from .kernels import build_Hj, dr_terms
from .propagator import (FubiniRule, boundary_k, data_family, fubini_batch,
                         propagator_constants, v0 as linear_v0)


def _br(y):
    return 1.0 + np.abs(y)


def phi_kappa(t, r, kappa):
    """<t+r>^{-1/2} <t-r>^{-kappa} with <y> = 1 + |y|."""
    t = np.asarray(t, dtype=float)
    r = np.asarray(r, dtype=float)
    out = _br(t + r) ** -0.5 * _br(t - r) ** -kappa
    return float(out) if out.ndim == 0 else out


def _psi(t, r, kappa):
    return np.exp(-0.5 * (np.log1p(t + r) + kappa * np.log1p((t - r) ** 2)))


def _omega(t, r, kappa, m):
    ps = _psi(t, r, kappa)
    return r ** (1 - m) / (1.0 + r) * ps, r ** (-m) * ps


# ---------------------------------------------------------------------------
# fields


@dataclass(frozen=True)
class FieldGrid:
    """Sample lattice: nt x nr tensor nodes plus diagonal bands t = r + d."""

    nt: int = 64
    nr: int = 64
    t_max: float = 32.0
    r_min: float = 1e-3
    r_max: float = 32.0
    band: tuple = (-0.5, -0.1, 0.0, 0.1, 0.5)

    def __post_init__(self):
        if self.nt < 4 or self.nr < 4:
            raise DomainError("grid needs at least 4 nodes per direction")
        if not (0 < self.r_min < self.r_max) or self.t_max <= 0:
            raise DomainError("grid extents must satisfy 0 < r_min < r_max, t_max > 0")

    @property
    def x(self):
        return np.linspace(0.0, math.log1p(self.t_max), self.nt)

    @property
    def y(self):
        return np.linspace(math.log(self.r_min), math.log(self.r_max), self.nr)

    @property
    def t_nodes(self):
        return np.expm1(self.x)

    @property
    def r_nodes(self):
        return np.exp(self.y)

    def points(self):
        """Flat (t, r) of the tensor nodes followed by the band points."""
        T, R = np.meshgrid(self.t_nodes, self.r_nodes, indexing="ij")
        rn = self.r_nodes
        bt, br = [], []
        for d in self.band:
            tb = rn + d
            ok = (tb >= 0) & (tb <= self.t_max)
            bt.append(tb[ok])
            br.append(rn[ok])
        return (np.concatenate([T.ravel()] + bt), np.concatenate([R.ravel()] + br))

    @property
    def n_tensor(self):
        return self.nt * self.nr


@dataclass
class WeightedField:
    """A radial field v(t, r) with its r-derivative and a sample lattice.

    ``samples`` optionally holds (v, dv) at ``sample_grid`` so norms do not
    re-evaluate the callables.
    """

    value: Callable
    r_derivative: Callable
    sample_grid: tuple
    m: int
    samples: tuple | None = None

    def sampled(self):
        t, r = self.sample_grid
        if self.samples is not None:
            return t, r, self.samples[0], self.samples[1]
        return t, r, np.asarray(self.value(t, r), float), np.asarray(self.r_derivative(t, r), float)


def _cr_weights(u):
    u2, u3 = u * u, u * u * u
    return (0.5 * (-u3 + 2 * u2 - u), 0.5 * (3 * u3 - 5 * u2 + 2),
            0.5 * (-3 * u3 + 4 * u2 + u), 0.5 * (u3 - u2))


def _locate(coord, lo, step, n):
    s = np.clip((coord - lo) / step, 0.0, n - 1)
    i = np.minimum(np.floor(s).astype(np.intp), n - 2)
    return i, s - i


class GridField(WeightedField):
    """Field stored on a FieldGrid; Catmull-Rom interpolation of the ratios
    v/omega_0 and dv/omega_1 in (log(1+t), log r)."""

    def __init__(self, grid: FieldGrid, kappa: float, m: int, v, dv):
        self.grid = grid
        self.kappa = float(kappa)
        t, r = grid.points()
        v = np.asarray(v, dtype=float)
        dv = np.asarray(dv, dtype=float)
        if v.shape != t.shape or dv.shape != t.shape:
            raise ValueError("sample arrays do not match the grid")
        w0, w1 = _omega(t, r, self.kappa, m)
        k = grid.n_tensor
        self._rv = (v[:k] / w0[:k]).reshape(grid.nt, grid.nr)
        self._rd = (dv[:k] / w1[:k]).reshape(grid.nt, grid.nr)
        self._x0, self._dx = 0.0, grid.x[1] - grid.x[0]
        self._y0, self._dy = grid.y[0], grid.y[1] - grid.y[0]
        super().__init__(self._value, self._deriv, (t, r), m, (v, dv))

    @property
    def is_zero(self):
        return not (np.any(self.samples[0]) or np.any(self.samples[1]))

    def rows(self, tau):
        """t-interpolated ratio rows at times tau (K,): two (K, nr) arrays."""
        i, u = _locate(np.log1p(tau), self._x0, self._dx, self.grid.nt)
        wts = _cr_weights(u)
        rv = np.zeros((tau.size, self.grid.nr))
        rd = np.zeros_like(rv)
        for k, wk in zip((-1, 0, 1, 2), wts):
            j = np.clip(i + k, 0, self.grid.nt - 1)
            rv += wk[:, None] * self._rv[j]
            rd += wk[:, None] * self._rd[j]
        return rv, rd

    def cells(self, tau, deriv=True):
        """Per-cell cubic coefficients in log r of the ratios at times tau:
        two (4, K*(nr-1)) arrays (Catmull-Rom, constant beyond the ends)."""
        out = []
        for R in self.rows(tau)[:2 if deriv else 1]:
            Pm = np.concatenate([R[:, :1], R[:, :-2]], axis=1)
            P0, P1 = R[:, :-1], R[:, 1:]
            P2 = np.concatenate([R[:, 2:], R[:, -1:]], axis=1)
            out.append(np.stack([P0, 0.5 * (P1 - Pm), Pm - 2.5 * P0 + 2 * P1 - 0.5 * P2,
                                 0.5 * (3 * (P0 - P1) + P2 - Pm)]).reshape(4, -1))
        return out

    def along(self, tau, lam, deriv=True, owner=None, tables=None):
        """v and dv at (tau[k], lam[k, :]) for tau (K,), lam (K, N).

        With ``tables`` = self.cells(tau_u) and ``owner`` indexing tau_u, the
        coefficient tables are shared between rows of lam.
        """
        if tables is None:
            owner = np.arange(tau.size)
            tables = self.cells(tau, deriv)
        nc = self.grid.nr - 1
        j, u = _locate(np.log(lam), self._y0, self._dy, self.grid.nr)
        flat = owner[:, None] * nc + j
        res = []
        for C in (tables if deriv else tables[:1]):
            c = [np.take(C[k], flat) for k in range(4)]
            res.append(((c[3] * u + c[2]) * u + c[1]) * u + c[0])
        w0, w1 = _omega(tau[:, None], lam, self.kappa, self.m)
        return res[0] * w0, (res[1] * w1 if deriv else None)

    def _eval(self, t, r, deriv):
        t, r = np.broadcast_arrays(np.asarray(t, float), np.asarray(r, float))
        v, dv = self.along(t.ravel(), r.reshape(-1, 1))
        return (dv if deriv else v).reshape(t.shape)

    def _value(self, t, r):
        return self._eval(t, r, False)

    def _deriv(self, t, r):
        return self._eval(t, r, True)


def field_from_callables(value, r_derivative, grid: FieldGrid, kappa, m) -> GridField:
    t, r = grid.points()
    return GridField(grid, kappa, m, value(t, r), r_derivative(t, r))


# ---------------------------------------------------------------------------
# norms and gauges


@dataclass(frozen=True)
class WeightedNormReport:
    kappa: float
    norm_Xkappa: float
    triple_norm: float
    argmax_X: tuple
    argmax_triple: tuple


def _check_finite(name, t, r, *arrs):
    for a in arrs:
        bad = ~np.isfinite(a)
        if np.any(bad):
            k = int(np.argmax(bad))
            raise FloatingPointError(f"non-finite {name} at t={t[k]:.6g}, r={r[k]:.6g}")


def norm_Xkappa(v: WeightedField, kappa: float) -> WeightedNormReport:
    """Grid-sup estimates (lower bounds of the true sup) of

    ||v|| = sup (r^{m-1}<r>|v| + r^m|dv|) / phi_kappa  and  |||v||| = sup r^m|v| / phi_kappa.
    """
    t, r, val, dv = v.sampled()
    _check_finite("field value", t, r, val, dv)
    m = v.m
    ph = phi_kappa(t, r, kappa)
    X = (r ** (m - 1) * _br(r) * np.abs(val) + r**m * np.abs(dv)) / ph
    T3 = r**m * np.abs(val) / ph
    i, k = int(np.argmax(X)), int(np.argmax(T3))
    return WeightedNormReport(float(kappa), float(X[i]), float(T3[k]),
                              (float(t[i]), float(r[i])), (float(t[k]), float(r[k])))


@dataclass(frozen=True)
class NonlinearityGauge:
    nu: float
    N0: float
    N1: float
    N1_tilde: float


def gauge_N(v: WeightedField, p, q, kappa, nu, j=1) -> NonlinearityGauge:
    """Grid-sup estimates of N_0^nu(|v|^p) and (for j = 1) N_1^nu(|v|^p).

    N_j^nu = sup |d^j/dlam (lam^{2m}|v|^p)| lam^{-m-nu+j} <lam>^{q-p/2+3/2+nu-j} phi_kappa^{-p}.
    """
    tau, lam, val, dv = v.sampled()
    _check_finite("field value", tau, lam, val, dv)
    m = v.m
    a = np.abs(val)
    phm = phi_kappa(tau, lam, kappa) ** -p
    src = lam ** (2 * m) * a**p
    N0 = float(np.max(src * lam ** (-m - nu) * _br(lam) ** (q - p / 2 + 1.5 + nu) * phm))
    N1 = math.nan
    if j == 1:
        d = 2 * m * lam ** (2 * m - 1) * a**p + lam ** (2 * m) * _dpow(val, dv, p)
        N1 = float(np.max(np.abs(d) * lam ** (-m - nu + 1)
                          * _br(lam) ** (q - p / 2 + 0.5 + nu) * phm))
    elif j != 0:
        raise ValueError("j must be 0 or 1")
    return NonlinearityGauge(float(nu), N0, N1, N0 + N1)


def _dpow(v, dv, p):
    """d|v|^p = p |v|^{p-1} sign(v) dv, exactly 0 where v = 0."""
    a = np.abs(v)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = p * np.where(a > 0, a ** (p - 1), 0.0) * np.sign(v) * dv
    return out


# ---------------------------------------------------------------------------
# the Duhamel operator


@dataclass(frozen=True)
class DuhamelRule:
    """Quadrature settings for L.  The tau-panels are graded geometrically
    toward tau = t - r from both sides and capped at length ``hmax``."""

    n_tau: int = 5
    first: float = 1e-3
    ratio: float = 0.3
    hmax: float = 1.0
    fubini: FubiniRule = FubiniRule(n_rho=6, n_y=6, ratio=0.2, pmax=10)


def _graded_edges(a, b, first, ratio, hmax, toward_a):
    L = b - a
    if L <= 0:
        return []
    e, h = [0.0], min(first, L)
    while e[-1] + h < L:
        e.append(e[-1] + h)
        h = min(h / ratio, hmax)
    if len(e) > 1 and L - e[-1] < 0.3 * (e[-1] - e[-2]):
        e.pop()
    e = np.array(e + [L])
    return list(a + e) if toward_a else list(b - e[::-1])


def tau_nodes(t, r, rule: DuhamelRule = DuhamelRule()):
    """Flat (owner, tau, weight) for int_0^t dtau at each output point."""
    x, w = leggauss(rule.n_tau)
    own, taus, ws = [], [], []
    for i, (ti, ri) in enumerate(zip(t, r)):
        if ti <= 0:
            continue
        star = ti - ri
        fr = rule.first * max(1.0, ti)
        if star <= 0:
            edges = _graded_edges(0.0, ti, fr, rule.ratio, rule.hmax, False)
        else:
            left = _graded_edges(0.0, star, fr, rule.ratio, rule.hmax, False)
            right = _graded_edges(star, ti, fr, rule.ratio, rule.hmax, True)
            edges = left + right[1:]
        e = np.asarray(edges)
        mid, half = 0.5 * (e[1:] + e[:-1]), 0.5 * (e[1:] - e[:-1])
        taus.append((mid[:, None] + half[:, None] * x).ravel())
        ws.append((half[:, None] * w).ravel())
        own.append(np.full(taus[-1].size, i))
    if not own:
        return np.zeros(0, int), np.zeros(0), np.zeros(0)
    return np.concatenate(own), np.concatenate(taus), np.concatenate(ws)


def _sources(v: GridField, p, m, tau):
    """h(lam, idx) for W1+W2 and W5+W6 at the pair times tau."""
    b12 = 2 * m + 1 + (1 - m) * p
    b56 = 2 * m - 1 + (1 - m) * p

    def ev(lam, idx, deriv):
        uq, inv = np.unique(idx, return_inverse=True)
        return v.along(tau[idx], lam, deriv, inv.ravel(), v.cells(tau[uq], deriv))

    def h12(lam, idx):
        val, _ = ev(lam, idx, False)
        return lam ** (2 * m + 1) * np.abs(val) ** p

    def h56(lam, idx):
        val, dv = ev(lam, idx, True)
        return (2 * m * lam ** (2 * m - 1) * np.abs(val) ** p
                + lam ** (2 * m) * _dpow(val, dv, p))

    return (h12, max(b12, 0.0)), (h56, max(b56, 0.0))


def theta_pairs(v: GridField, p, m, s, r, tau, rule: FubiniRule, derivative=True):
    """Theta(|v(tau,.)|^p)(s, r) and its r-derivative for flat pair arrays."""
    (h12, b12), (h56, b56) = _sources(v, p, m, tau)
    w12 = fubini_batch(build_Hj(m, m), s, r, h12, b12, rule)
    th = w12 / r ** (2 * m)
    if not derivative:
        return th, None
    w56 = fubini_batch(dr_terms(build_Hj(m, m - 1)), s, r, h56, b56, rule)
    below = (s < r) & (s > 0)
    if np.any(below):
        d = r[below] - s[below]
        val, _ = v.along(tau[below], d[:, None], deriv=False)
        w56[below] += d ** (2 * m) * np.abs(val[:, 0]) ** p * boundary_k(
            m, d, s[below], r[below], "w6")
    return th, 0.5 * w56 / r ** (2 * m) - 2 * m * th / r


def w_decomposition(v: GridField, p, t, r, tau):
    """(W_1, W_2)(t - tau, r; tau) by the direct lam-route at one point.

    W_2 is returned as an exact 0.0 when t - tau <= r, since its range
    [0, (t-tau-r)_+] is empty there.
    """
    from .profiles import RadialProfile
    from .propagator import _lam_integral, k_batch, kt_batch

    m = v.m
    s = t - tau

    def g(lam):
        lam = np.atleast_1d(np.asarray(lam, float))
        val, _ = v.along(np.full(lam.size, tau), lam.reshape(-1, 1), deriv=False)
        return np.abs(val[:, 0]) ** p

    ks = build_Hj(m, m)
    P = 2 * m + 1
    lo, U = abs(s - r), s + r
    W1 = _lam_integral(lambda x, da, db: x**P * g(x).reshape(np.shape(x))
                       * k_batch(ks, x, s, r, n=24, e=da), lo, U, 24,
                       first_lo=1e-14 * U) if s > 0 else 0.0
    if s - r <= 0:
        return W1, 0.0
    ell = s - r
    W2 = _lam_integral(lambda x, da, db: x**P * g(x).reshape(np.shape(x))
                       * kt_batch(ks, x, s, r, n=24, e=db), 0.0, ell, 24,
                       first_lo=min(0.25, 0.5 * ell), first_hi=1e-14 * ell)
    return W1, W2


def thread_cap() -> int:
    """Worker threads allowed by SCALEWAVE_THREADS (default 1)."""
    try:
        return max(1, int(os.environ.get("SCALEWAVE_THREADS", "1")))
    except ValueError:
        return 1


def _L_at(v, params, rule, c_n, t, r):
    m, p, mu = params.m, params.p, params.mu
    own, tau, w = tau_nodes(t, r, rule)
    if own.size == 0:
        return np.zeros(t.shape), np.zeros(t.shape)
    th, dth = theta_pairs(v, p, m, t[own] - tau, r[own], tau, rule.fubini)
    wt = w * (1.0 + tau) ** (-0.5 * mu * (p - 1)) / c_n
    return (np.bincount(own, weights=wt * th, minlength=t.size),
            np.bincount(own, weights=wt * dth, minlength=t.size))


def apply_L(v: GridField, params: ModelParams, rule: DuhamelRule = DuhamelRule(),
            points=None, workers: int | None = None):
    """L v on the grid of v, as a GridField, or at explicit ``points`` = (t, r),
    returned as a pair of arrays (Lv, d_r Lv).

    Output points are independent; with workers > 1 (default from
    SCALEWAVE_THREADS) they are split into blocks evaluated on a thread pool.
    """
    m = params.m
    if v.m != m:
        raise DomainError(f"field has m={v.m}, params have m={m}")
    c_n = propagator_constants(params.n).c_n
    t, r = v.grid.points() if points is None else (np.asarray(points[0], float).ravel(),
                                                  np.asarray(points[1], float).ravel())
    Lv, dLv = np.zeros(t.shape), np.zeros(t.shape)
    if not v.is_zero:
        workers = thread_cap() if workers is None else max(1, int(workers))
        blocks = np.array_split(np.arange(t.size), workers)
        job = lambda ix: _L_at(v, params, rule, c_n, t[ix], r[ix])
        if workers == 1:
            res = [job(blocks[0])]
        else:
            with ThreadPoolExecutor(workers) as ex:
                res = list(ex.map(job, blocks))
        for ix, (a, b) in zip(blocks, res):
            Lv[ix], dLv[ix] = a, b
    if points is not None:
        return Lv, dLv
    return GridField(v.grid, v.kappa, m, Lv, dLv)


# ---------------------------------------------------------------------------
# Picard iteration


@dataclass
class PicardTrace:
    iterates: list = field(default_factory=list)  # per-iterate norm summaries
    norm_history: list = field(default_factory=list)
    increment_history: list = field(default_factory=list)
    contraction_ratios: list = field(default_factory=list)
    residual: float = math.nan
    converged: bool = False
    fields: list = field(default_factory=list)
    linear: GridField | None = None
    grid: FieldGrid | None = None

    def to_json(self):
        g = self.grid
        # the identity is only checked on the grid; outside it the ratio is
        # held at its edge value and nothing is verified
        region = None if g is None else {
            "t": [0.0, g.t_max], "r": [g.r_min, g.r_max], "outside": "unverified"}
        return {
            "iterates": self.iterates,
            "norm_history": self.norm_history,
            "increment_history": self.increment_history,
            "contraction_ratios": self.contraction_ratios,
            "residual": self.residual,
            "converged": self.converged,
            "verified_region": region,
        }


def _diff(a: GridField, b: GridField) -> GridField:
    return GridField(a.grid, a.kappa, a.m, a.samples[0] - b.samples[0],
                     a.samples[1] - b.samples[1])


def _add(a: GridField, b: GridField) -> GridField:
    return GridField(a.grid, a.kappa, a.m, a.samples[0] + b.samples[0],
                     a.samples[1] + b.samples[1])


def linear_field(params: ModelParams, kappa_bar: float, grid: FieldGrid) -> GridField:
    f, g = data_family(params, kappa_bar)
    sol = linear_v0(f, g, propagator_constants(params.n))
    return field_from_callables(sol.value, sol.r_derivative, grid, params.kappa, params.m)


def picard_solve(params: ModelParams, kappa_bar: float, max_iter: int = 20, tol: float = 1e-6,
                 grid: FieldGrid = FieldGrid(), rule: DuhamelRule = DuhamelRule(),
                 keep_fields: bool = True, log=None):
    """Iterate v_{k+1} = v0 + L v_k from v_0 = v0.

    Stops when the weighted-sup increment ||v_{k+1} - v_k|| drops below tol;
    the residual ||v - v0 - L v|| of the final field is then computed with one
    more application of L.  Three consecutive increment ratios above 1 raise
    PicardDivergence.  Returns (trace, final field).
    """
    bad = validate(params)
    if bad:
        raise DomainError("inadmissible parameters: " + ", ".join(bad))
    kap = params.kappa
    lin = linear_field(params, kappa_bar, grid)
    trace = PicardTrace(linear=lin, grid=grid)
    cur = lin
    up = 0

    def summary(fl):
        rep = norm_Xkappa(fl, kap)
        return {"norm": rep.norm_Xkappa, "triple": rep.triple_norm}

    trace.iterates.append(summary(cur))
    trace.norm_history.append(trace.iterates[-1]["norm"])
    if keep_fields:
        trace.fields.append(cur)
    Lcur = None
    for k in range(max_iter):
        Lcur = apply_L(cur, params, rule)
        nxt = _add(lin, Lcur)
        inc = norm_Xkappa(_diff(nxt, cur), kap).norm_Xkappa
        trace.increment_history.append(inc)
        if len(trace.increment_history) > 1:
            prev = trace.increment_history[-2]
            ratio = inc / prev if prev > 0 else 0.0
            trace.contraction_ratios.append(ratio)
            up = up + 1 if ratio > 1 else 0
        cur = nxt
        trace.iterates.append(summary(cur))
        trace.norm_history.append(trace.iterates[-1]["norm"])
        if keep_fields:
            trace.fields.append(cur)
        if log:
            log(f"iter {k + 1}: norm {trace.norm_history[-1]:.6e} increment {inc:.3e}")
        if up >= 3:
            raise PicardDivergence(
                f"increments grew for 3 consecutive steps (last {trace.increment_history[-3:]})")
        if inc < tol:
            trace.converged = True
            break
    Lfin = Lcur if trace.increment_history and trace.increment_history[-1] == 0 else apply_L(cur, params, rule)
    trace.residual = norm_Xkappa(_diff(cur, _add(lin, Lfin)), kap).norm_Xkappa
    return trace, cur


def lipschitz_ratio(Lv, Lw, v, w, kappa, p):
    """|||Lv - Lw||| / (|||v - w||| (||v||^{p-1} + ||w||^{p-1}))."""
    num = norm_Xkappa(_diff(Lv, Lw), kappa).triple_norm
    den = norm_Xkappa(_diff(v, w), kappa).triple_norm * (
        norm_Xkappa(v, kappa).norm_Xkappa ** (p - 1) + norm_Xkappa(w, kappa).norm_Xkappa ** (p - 1))
    return num / den if den > 0 else math.nan


def scaled(v: GridField, c: float) -> GridField:
    return GridField(v.grid, v.kappa, v.m, c * v.samples[0], c * v.samples[1])


def dissipative_transform(v: WeightedField, mu: float, direction: str = "inverse") -> WeightedField:
    """forward: u -> <t>^{mu/2} u;  inverse: v -> <t>^{-mu/2} v.  The
    r-derivative carries the same factor."""
    if direction not in ("forward", "inverse"):
        raise ValueError("direction must be 'forward' or 'inverse'")
    e = 0.5 * mu if direction == "forward" else -0.5 * mu

    def fac(t):
        return (1.0 + np.abs(np.asarray(t, float))) ** e

    t, r = v.sample_grid
    samples = None
    if v.samples is not None:
        samples = (fac(t) * v.samples[0], fac(t) * v.samples[1])
    return WeightedField(lambda a, b: fac(a) * v.value(a, b),
                         lambda a, b: fac(a) * v.r_derivative(a, b),
                         (t, r), v.m, samples)
