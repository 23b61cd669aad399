r"""Free radial wave propagator in even dimension n = 2m + 2.

Theta(g)(t, r) = r^{-2m} (w_1 + w_2) with

    w_1 = int_{|t-r|}^{t+r}  lam^{2m+1} g(lam) K_m(lam, t, r) dlam,
    w_2 = int_0^{(t-r)_+}    lam^{2m+1} g(lam) Kt_m(lam, t, r) dlam,

and v0 = c_n^{-1} (Theta(g) + d/dt Theta(f)) solves the free radial wave
equation with v0(0) = f, d/dt v0(0) = g.  For t != r there is a second
representation 2 r^{2m} Theta = w_3 + w_4 through K_{m-1} and the source
d/dlam (lam^{2m} g), and d/dr (2 r^{2m} Theta) = w_5 + w_6.

Two evaluation routes are provided.  The *direct* route integrates in lam with
the kernels evaluated by nested quadrature; it is adaptive and used for single
points.  The *swapped* route exchanges the lam and rho integrals,

    w_1 + w_2 = int_{L'}^{t+r} H_m(rho) int_{lam_0}^{rho} h(lam) / sqrt(rho^2 - lam^2) dlam drho,

with (L', lam_0) = (t-r, 0) for t >= r and (r-t, r-t) for t < r; it needs a
single 2-D rule, vectorises over many (t, r) at once and is what the Duhamel
solver uses.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.special import gamma

from .errors import DomainError, QuadratureError
from .kernels import build_Hj, dr_terms, k_batch, kt_batch, KernelSum
from .quadrature import graded_rule, panel_counts
from .profiles import RadialProfile, power_profile

R_MIN = 1e-6
CHUNK_NODES = 2e6  # rough cap on outer x inner nodes held at once
TINY = 1e-14


@dataclass(frozen=True)
class PropagatorConstants:
    n: int
    m: int
    c_n: float

    @property
    def c_n_alt(self) -> float:
        """pi 2^{-(n-2)/2} (n-3)!!, the same constant written differently."""
        dfact = math.prod(range(self.n - 3, 0, -2)) if self.n > 3 else 1
        return math.pi * 2.0 ** (-(self.n - 2) / 2) * dfact


def propagator_constants(n: int) -> PropagatorConstants:
    if n < 4 or n % 2:
        raise DomainError(f"even n >= 4 required, got {n}")
    return PropagatorConstants(n, (n - 2) // 2, math.sqrt(math.pi) * gamma((n - 1) / 2))


def _src_beta(g: RadialProfile, shift: float) -> float:
    """Exponent of lam^shift g(lam) at the origin, used as a Jacobi weight."""
    b = g.origin_exponent + shift
    if not math.isfinite(b):
        return 0.0
    if b <= -1.0:
        raise DomainError(f"source lam^{shift} g is not integrable at 0 (exponent {b})")
    return b


def _h1(g: RadialProfile, m: int, lam):
    """d/dlam (lam^{2m} g)."""
    return 2 * m * lam ** (2 * m - 1) * g.eval(lam) + lam ** (2 * m) * g.eval_deriv(lam, 1)


def _lam_integral(F, lo, hi, n, *, beta=0.0, alpha=0.0, first_lo=None, first_hi=None,
                  breaks=()):
    """int_lo^hi F (x-lo)^beta (hi-x)^alpha dx, split at interior breakpoints.

    F is called as F(x, x - lo, hi - x).
    """
    pts = [lo] + [b for b in sorted(breaks) if lo < b < hi] + [hi]
    tot = 0.0
    for i in range(len(pts) - 1):
        a, b = pts[i], pts[i + 1]
        if b <= a:
            continue
        head, tail = i == 0, i == len(pts) - 2
        da, db, w = graded_rule(
            np.array(b - a),
            alpha=alpha if tail else 0.0,
            beta=beta if head else 0.0,
            first_lo=first_lo if head else None,
            first_hi=first_hi if tail else None,
            n=n,
        )
        tot += float(np.sum(w * F(a + da, (a - lo) + da, (hi - b) + db)))
    return tot


def _check_tr(t, r):
    if t < 0:
        raise DomainError(f"t must be >= 0, got {t}")
    if r < R_MIN:
        raise DomainError(f"r must be >= {R_MIN}, got {r}")


def _w12(g, t, r, m, nl, nk):
    U = t + r
    ks = build_Hj(m, m)
    bps = g.breakpoints
    p = 2 * m + 1
    if t > r:
        ell = t - r
        F1 = lambda x, da, db: x**p * g.eval(x) * k_batch(ks, x, t, r, n=nk, e=da)
        w1 = _lam_integral(F1, ell, U, nl, first_lo=TINY * U, breaks=bps)
        beta = _src_beta(g, p)
        F2 = lambda x, da, db: x ** (p - beta) * g.eval(x) * kt_batch(ks, x, t, r, n=nk, e=db)
        w2 = _lam_integral(F2, 0.0, ell, nl, beta=beta, first_lo=min(0.25, 0.5 * ell),
                           first_hi=TINY * ell, breaks=bps)
        return w1 + w2
    d = r - t
    F1 = lambda x, da, db: x**p * g.eval(x) * k_batch(ks, x, t, r, n=nk, e=2 * d + da)
    return _lam_integral(F1, d, U, nl, first_lo=max(d, TINY * U), breaks=bps)


def _w34(g, t, r, m, nl, nk):
    U = t + r
    ks = build_Hj(m, m - 1)
    bps = g.breakpoints
    if t > r:
        ell = t - r
        F3 = lambda x, da, db: _h1(g, m, x) * k_batch(ks, x, t, r, n=nk, e=da)
        w3 = _lam_integral(F3, ell, U, nl, first_lo=TINY * U, breaks=bps)
        beta = _src_beta(g, 2 * m - 1)
        F4 = lambda x, da, db: x**-beta * _h1(g, m, x) * kt_batch(ks, x, t, r, n=nk, e=db)
        w4 = _lam_integral(F4, 0.0, ell, nl, beta=beta, first_lo=min(0.25, 0.5 * ell),
                           first_hi=TINY * ell, breaks=bps)
        return w3 + w4
    d = r - t
    F3 = lambda x, da, db: _h1(g, m, x) * k_batch(ks, x, t, r, n=nk, e=2 * d + da)
    w3 = _lam_integral(F3, d, U, nl, first_lo=d, breaks=bps)
    w4 = d ** (2 * m) * g.eval(d) * float(k_batch(ks, d, t, r, n=nk, e=2 * d))
    return w3 + w4


def _w56(g, t, r, m, nl, nk):
    U = t + r
    ks = build_Hj(m, m - 1)
    dks = dr_terms(ks)
    bps = g.breakpoints
    if t > r:
        ell = t - r
        F5 = lambda x, da, db: _h1(g, m, x) * k_batch(dks, x, t, r, n=nk, e=da)
        w5 = _lam_integral(F5, ell, U, nl, first_lo=TINY * U, breaks=bps)
        beta = _src_beta(g, 2 * m - 1)
        F6 = lambda x, da, db: x**-beta * _h1(g, m, x) * kt_batch(dks, x, t, r, n=nk, e=db)
        w6 = _lam_integral(F6, 0.0, ell, nl, beta=beta, first_lo=min(0.25, 0.5 * ell),
                           first_hi=TINY * ell, breaks=bps)
        return w5 + w6
    d = r - t
    F5 = lambda x, da, db: _h1(g, m, x) * k_batch(dks, x, t, r, n=nk, e=2 * d + da)
    w5 = _lam_integral(F5, d, U, nl, first_lo=d, breaks=bps)
    # total r-derivative of K_{m-1}(r-t, t, r); d/dlam K_{m-1} = -2 lam K_m
    dk = float(k_batch(dks, d, t, r, n=nk, e=2 * d)) - 2 * d * float(
        k_batch(build_Hj(m, m), d, t, r, n=nk, e=2 * d))
    return w5 + d ** (2 * m) * g.eval(d) * dk


_LEVELS = ((12, 12), (20, 20), (32, 32), (48, 48))


def _adapt(fn, rtol, atol, what):
    prev = fn(*_LEVELS[0])
    for nl, nk in _LEVELS[1:]:
        cur = fn(nl, nk)
        err = abs(cur - prev)
        if err <= max(atol, rtol * abs(cur)):
            return cur, err
        prev = cur
    raise QuadratureError(f"{what} did not converge", err)


def w12_with_error(g, t, r, m, rtol=1e-9, atol=1e-15):
    """(w_1 + w_2, error estimate)."""
    _check_tr(t, r)
    if g.is_zero or t == 0:
        return 0.0, 0.0
    return _adapt(lambda a, b: _w12(g, t, r, m, a, b), rtol, atol, "w1+w2")


def w34_with_error(g, t, r, m, rtol=1e-9, atol=1e-15):
    _check_tr(t, r)
    if t == r:
        raise DomainError("w3 + w4 representation excluded at t = r")
    if g.is_zero or t == 0:
        return 0.0, 0.0
    return _adapt(lambda a, b: _w34(g, t, r, m, a, b), rtol, atol, "w3+w4")


def w56_with_error(g, t, r, m, rtol=1e-9, atol=1e-15):
    _check_tr(t, r)
    if t == r:
        raise DomainError("w5 + w6 representation excluded at t = r")
    if g.is_zero:
        return 0.0, 0.0
    return _adapt(lambda a, b: _w56(g, t, r, m, a, b), rtol, atol, "w5+w6")


def theta_w12(g: RadialProfile, t: float, r: float, m: int = 1, rtol=1e-9) -> float:
    return w12_with_error(g, t, r, m, rtol)[0] / r ** (2 * m)


def theta_w34(g: RadialProfile, t: float, r: float, m: int = 1, rtol=1e-9) -> float:
    return 0.5 * w34_with_error(g, t, r, m, rtol)[0] / r ** (2 * m)


def theta_r_derivative(g: RadialProfile, t: float, r: float, m: int = 1, rtol=1e-9) -> float:
    """d/dr Theta(g) = (w_5 + w_6)/(2 r^{2m}) - 2m Theta/r."""
    w56 = w56_with_error(g, t, r, m, rtol)[0]
    th = theta_w34(g, t, r, m, rtol)
    return 0.5 * w56 / r ** (2 * m) - 2 * m * th / r


# ---------------------------------------------------------------------------
# swapped (rho outer, lam inner) route, batched over many (s, r)


@dataclass(frozen=True)
class FubiniRule:
    """Fixed tensor rule for the swapped double integral.

    ``scale`` is the length on which the source varies near the origin; inner
    panels are graded down to scale/rho.
    """

    n_rho: int = 12
    n_y: int = 12
    ratio: float = 0.25
    pmax: int = 24
    scale: float = 1.0


def fubini_batch(ks: KernelSum, s, r, h: Callable, beta_h: float, rule: FubiniRule,
                 breaks=None):
    """int_{L'}^{s+r} ks(rho) int_{lam_0}^{rho} h(lam)/sqrt(rho^2-lam^2) dlam drho.

    s, r are 1-D arrays of equal length.  h(lam, idx) evaluates the source at
    lam of shape (K, N) for batch members idx of shape (K,).  ``breaks`` is an
    optional (len(s), nb) array of radii where the source is not smooth; both
    integrals are cut there.
    """
    s = np.asarray(s, dtype=float)
    r = np.asarray(r, dtype=float)
    chunk = max(4, int(CHUNK_NODES // (rule.n_rho * rule.n_y * 100)))
    if s.size > chunk:
        out = np.empty(s.shape)
        for k in range(0, s.size, chunk):
            sl = slice(k, k + chunk)
            hk = (lambda lam, idx, k=k: h(lam, idx + k))
            bk = None if breaks is None else np.broadcast_to(
                np.asarray(breaks, dtype=float), (s.size, np.shape(breaks)[-1]))[sl]
            out[sl] = fubini_batch(ks, s[sl], r[sl], hk, beta_h, rule, bk)
        return out
    out = np.zeros(s.shape)
    groups = [(float(c), grp) for c, grp in ks.groups()]
    cmin = min(c for c, _ in groups)
    if breaks is not None:
        breaks = np.broadcast_to(np.asarray(breaks, dtype=float), (s.size, np.shape(breaks)[-1]))
    for case_a in (True, False):
        idx = np.nonzero(((s >= r) if case_a else (s < r)) & (s > 0))[0]
        if idx.size == 0:
            continue
        ss, rr = s[idx], r[idx]
        U = ss + rr
        lo = ss - rr if case_a else rr - ss
        first = np.maximum(lo, 1e-10 * U) if case_a else lo
        beta_o = cmin if case_a else 0.5
        bk = None if breaks is None else breaks[idx]
        own, da, db, w = _outer_nodes(lo, U, first, cmin, beta_o, rule, bk)
        rho = lo[own] + da
        if case_a:
            Q = (da * db) ** 1.0
            S = sum(_poly_np(grp, rho, ss[own]) * Q ** (c - cmin) for c, grp in groups)
        else:
            rest = da + 2.0 * lo[own]
            S = sum(_poly_np(grp, rho, ss[own]) * db ** (c - cmin) * rest**c for c, grp in groups)
        F = _inner(rho, np.zeros(rho.shape) if case_a else lo[own], idx[own], h,
                   beta_h if case_a else 0.0, rule, None if bk is None else bk[own])
        if not case_a:
            F = F / np.sqrt(da)
        val = np.bincount(own, weights=w * S * F, minlength=idx.size)
        if ks.r_power:
            val = val * rr**ks.r_power
        out[idx] = val
    return out


def _outer_nodes(lo, U, first, alpha, beta, rule, breaks):
    """Flat rule for int_lo^U F (rho-lo)^beta (U-rho)^alpha drho, cut at breaks.

    Returns (owner, da, db, w) with da = rho - lo and db = U - rho.
    """
    if breaks is None:
        edges = [lo, U]
    else:
        cut = np.clip(np.sort(breaks, axis=-1), lo[:, None], U[:, None])
        edges = [lo] + [cut[:, k] for k in range(cut.shape[1])] + [U]
    own, das, dbs, ws = [], [], [], []
    for i in range(len(edges) - 1):
        a, b = edges[i], edges[i + 1]
        live = b > a
        init = live & (a <= lo)
        term = live & (b >= U)
        for fi in (True, False):
            for ft in (True, False):
                sel = np.nonzero(live & (init == fi) & (term == ft))[0]
                if sel.size == 0:
                    continue
                L = b[sel] - a[sel]
                # grade toward lo / U also when a piece merely ends close to them
                fl = first[sel] if fi else np.maximum(a[sel] - lo[sel], 1e-300)
                if ft:
                    x, _, wt = graded_rule(L, alpha=alpha, beta=beta if fi else 0.0, first_lo=fl,
                                           n=rule.n_rho, ratio=rule.ratio,
                                           P_lo=panel_counts(L, fl, rule.ratio, rule.pmax))
                else:
                    fh = np.maximum(U[sel] - b[sel], 1e-300)
                    x, _, wt = graded_rule(L, beta=beta if fi else 0.0, first_lo=fl, first_hi=fh,
                                           n=rule.n_rho, ratio=rule.ratio,
                                           P_lo=panel_counts(0.5 * L, fl, rule.ratio, rule.pmax),
                                           P_hi=panel_counts(0.5 * L, fh, rule.ratio, rule.pmax))
                d_a = (a[sel] - lo[sel])[:, None] + x
                d_b = (U[sel] - b[sel])[:, None] + (L[:, None] - x)
                if not fi:
                    wt = wt * d_a**beta
                if not ft:
                    wt = wt * d_b**alpha
                own.append(np.repeat(sel, x.shape[1]))
                das.append(d_a.ravel())
                dbs.append(d_b.ravel())
                ws.append(wt.ravel())
    return (np.concatenate(own), np.concatenate(das), np.concatenate(dbs), np.concatenate(ws))


def _inner(rho, lam0, owner, h, beta0, rule, breaks):
    """F(rho) = int_{lam0}^{rho} h(lam)/sqrt(rho^2 - lam^2) dlam for flat arrays.

    The interval is cut at the break radii.  The piece that ends at rho takes
    the (rho-lam)^{-1/2} end power as a Jacobi weight; the first piece takes
    lam^{beta0} when lam0 = 0.
    """
    F = np.zeros(rho.shape)
    if breaks is None:
        edges = [lam0, rho]
    else:
        cut = np.clip(np.sort(breaks, axis=-1), lam0[:, None], rho[:, None])
        edges = [lam0] + [cut[:, k] for k in range(cut.shape[1])] + [rho]
    for i in range(len(edges) - 1):
        a, b = edges[i], edges[i + 1]
        live = b > a
        term = live & (b >= rho)
        beta = beta0 if i == 0 else 0.0
        for mask, alpha in ((term, -0.5), (live & ~term, 0.0)):
            sel = np.nonzero(mask)[0]
            if sel.size == 0:
                continue
            aa, rr = a[sel], rho[sel]
            span = b[sel] - aa
            if i == 0:
                near = np.where(aa > 0, np.minimum(aa, rule.scale), rule.scale)
                fy = np.minimum(1.0, near / span)
            else:
                fy = np.ones(span.shape)
            gap = rr - b[sel]
            if alpha == 0.0 and np.any(gap < span):
                fh = np.clip(gap / span, 1e-12, 0.5)
                y, _, wy = graded_rule(np.ones(span.shape), beta=beta, first_lo=fy, first_hi=fh,
                                       n=rule.n_y, ratio=rule.ratio,
                                       P_lo=panel_counts(0.5, 0.5 * fy, rule.ratio, rule.pmax),
                                       P_hi=panel_counts(0.5, fh, rule.ratio, rule.pmax))
            else:
                y, _, wy = graded_rule(np.ones(span.shape), alpha=alpha, beta=beta, first_lo=fy,
                                       n=rule.n_y, ratio=rule.ratio,
                                       P_lo=panel_counts(1.0, fy, rule.ratio, rule.pmax))
            lam = aa[:, None] + span[:, None] * y
            f = h(lam, owner[sel]) * (rr[:, None] + lam) ** -0.5
            if beta:
                f = f * y**-beta
            if alpha == -0.5:
                f = f * np.sqrt(span)[:, None]
            else:
                f = f * span[:, None] * (gap[:, None] + span[:, None] * (1.0 - y)) ** -0.5
            F[sel] += np.sum(wy * f, axis=-1)
    return F


def _poly_np(group, rho, t):
    out = 0.0
    for coef, a, b in group:
        term = coef * rho**a
        if b:
            term = term * (rho - t) ** b
        out = out + term
    return out


def boundary_k(m: int, d, s, r, kind: str, nk: int = 24):
    """Kernel factors of the t < r boundary terms at lam = d = r - s.

    kind 'w4': K_{m-1}(d);  kind 'w6': d/dr K_{m-1}(d) - 2 d K_m(d).
    """
    ks = build_Hj(m, m - 1)
    if kind == "w4":
        return k_batch(ks, d, s, r, n=nk, e=2 * d)
    return k_batch(dr_terms(ks), d, s, r, n=nk, e=2 * d) - 2 * d * k_batch(
        build_Hj(m, m), d, s, r, n=nk, e=2 * d)


def _pbreaks(g):
    return np.array([g.breakpoints], dtype=float) if g.breakpoints else None


def _profile_source(g: RadialProfile, m: int, kind: str):
    if kind == "w12":
        p = 2 * m + 1
        return (lambda lam, idx: lam**p * g.eval(lam)), _src_beta(g, p)
    return (lambda lam, idx: _h1(g, m, lam)), _src_beta(g, 2 * m - 1)


def theta_swapped(g: RadialProfile, t, r, m: int, rule: FubiniRule = FubiniRule()):
    """Theta(g) at arrays (t, r) through the swapped route; odd in t."""
    t, r = np.broadcast_arrays(np.asarray(t, dtype=float), np.asarray(r, dtype=float))
    shape = t.shape
    t, r = t.ravel(), r.ravel()
    out = np.zeros(t.shape)
    live = (t != 0) & (not g.is_zero)
    if np.any(live):
        h, beta = _profile_source(g, m, "w12")
        tt = np.abs(t[live])
        vals = fubini_batch(build_Hj(m, m), tt, r[live], h, beta, rule, _pbreaks(g))
        out[live] = np.sign(t[live]) * vals / r[live] ** (2 * m)
    return out.reshape(shape)


def dr_theta_swapped(g: RadialProfile, t, r, m: int, rule: FubiniRule = FubiniRule(),
                     theta=None):
    """d/dr Theta(g) at arrays (t, r), t != r, through the swapped w_5 + w_6.

    ``theta``, if given, holds Theta(g) at (|t|, r).
    """
    t, r = np.broadcast_arrays(np.asarray(t, dtype=float), np.asarray(r, dtype=float))
    shape = t.shape
    t, r = t.ravel(), r.ravel()
    if g.is_zero:
        return np.zeros(shape)
    if np.any(t == r):
        raise DomainError("w5 + w6 representation excluded at t = r")
    tt = np.abs(t)
    h, beta = _profile_source(g, m, "w56")
    w56 = fubini_batch(dr_terms(build_Hj(m, m - 1)), tt, r, h, beta, rule, _pbreaks(g))
    below = tt < r
    if np.any(below):
        d = r[below] - tt[below]
        w56[below] += d ** (2 * m) * g.eval(d) * boundary_k(m, d, tt[below], r[below], "w6")
    if theta is None:
        theta = theta_swapped(g, tt, r, m, rule)
    else:
        theta = np.asarray(theta, dtype=float).ravel()
    sign = np.where(t < 0, -1.0, 1.0)
    out = sign * (0.5 * w56 / r ** (2 * m) - 2 * m * theta / r)
    return out.reshape(shape)


# ---------------------------------------------------------------------------
# the linear solution v0


def _richardson_t(fn, t, r, h):
    """d/dt fn at (t, r) by central differences at h and h/2, extrapolated.

    fn must accept negative t (the caller extends oddly).  Returns the
    derivative and the extrapolation discrepancy as an error estimate.
    """
    ts = np.concatenate([t + h, t - h, t + 0.5 * h, t - 0.5 * h])
    rs = np.concatenate([r] * 4)
    v = fn(ts, rs).reshape(4, -1)
    d1 = (v[0] - v[1]) / (2 * h)
    d2 = (v[2] - v[3]) / h
    return (4 * d2 - d1) / 3, np.abs(d2 - d1) / 3


def _dr_theta_any(g, t, r, m, rule):
    """d/dr Theta(g); at t = r (excluded by w_5 + w_6) a Richardson difference
    in r of the w_1 + w_2 route is used instead."""
    out = np.empty(t.shape)
    on = np.abs(t) == r
    if np.any(~on):
        out[~on] = dr_theta_swapped(g, t[~on], r[~on], m, rule)
    if np.any(on):
        k = 1e-4 * r[on]
        tt = t[on]
        rr = r[on]
        v = [theta_swapped(g, tt, rr + c * k, m, rule) for c in (1, -1, 0.5, -0.5)]
        d1 = (v[0] - v[1]) / (2 * k)
        d2 = (v[2] - v[3]) / k
        out[on] = (4 * d2 - d1) / 3
    return out


@dataclass
class LinearSolution:
    """v0 = c_n^{-1} (Theta(g) + d/dt Theta(f)), evaluated on arrays."""

    f: RadialProfile
    g: RadialProfile
    consts: PropagatorConstants
    rule: FubiniRule = FubiniRule()
    h_t: float = 1e-3

    def _prep(self, t, r):
        t, r = np.broadcast_arrays(np.asarray(t, dtype=float), np.asarray(r, dtype=float))
        if np.any(r < R_MIN):
            raise DomainError(f"r below {R_MIN} rejected")
        if np.any(t < 0):
            raise DomainError("t must be >= 0")
        return t.shape, t.ravel(), r.ravel()

    def value(self, t, r):
        shape, t, r = self._prep(t, r)
        m, out = self.consts.m, np.zeros(t.shape)
        if not self.g.is_zero:
            out += theta_swapped(self.g, t, r, m, self.rule)
        if not self.f.is_zero:
            out += _richardson_t(lambda a, b: theta_swapped(self.f, a, b, m, self.rule),
                                 t, r, self.h_t)[0]
        return (out / self.consts.c_n).reshape(shape)

    def r_derivative(self, t, r):
        shape, t, r = self._prep(t, r)
        m, out = self.consts.m, np.zeros(t.shape)
        if not self.g.is_zero:
            out += _dr_theta_any(self.g, t, r, m, self.rule)
        if not self.f.is_zero:
            out += _richardson_t(lambda a, b: _dr_theta_any(self.f, a, b, m, self.rule),
                                 t, r, self.h_t)[0]
        return (out / self.consts.c_n).reshape(shape)

    def __call__(self, t, r):
        return self.value(t, r)


def v0(f: RadialProfile, g: RadialProfile, consts: PropagatorConstants,
       rule: FubiniRule = FubiniRule()) -> LinearSolution:
    return LinearSolution(f, g, consts, rule)


def data_family(params, kappa_bar: float):
    """f = eps r^{1-m} <r>^{-kbar-3/2},  g = eps r^{-m} <r>^{-kbar-3/2}."""
    m, eps = params.m, params.epsilon
    b = kappa_bar + 1.5
    return power_profile(eps, 1.0 - m, b), power_profile(eps, -float(m), b)


def data_bound_constant(f, g, m, kappa_bar, eps, radii=None) -> float:
    """Smallest C with |f^(j)| <= C eps r^{1-m-j}<r>^{-kbar-3/2} (j <= 2) and
    |g^(j)| <= C eps r^{-m-j}<r>^{-kbar-3/2} (j <= 1) on the sampled radii."""
    if eps == 0:
        return 0.0
    r = np.logspace(-3, 3, 601) if radii is None else np.asarray(radii, dtype=float)
    env = eps * (1.0 + r) ** (-kappa_bar - 1.5)
    c = 0.0
    for j in range(3):
        c = max(c, float(np.max(np.abs(f.eval_deriv(r, j)) / (env * r ** (1 - m - j)))))
    for j in range(2):
        c = max(c, float(np.max(np.abs(g.eval_deriv(r, j)) / (env * r ** (-m - j)))))
    return c
