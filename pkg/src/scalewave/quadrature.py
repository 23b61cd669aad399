r"""Batched Gauss--Jacobi rules on geometrically graded panels.

Every integral in the package has the shape

.. math:: \int_a^b F(x)\,(x-a)^{\beta}(b-x)^{\alpha}\,dx

with F smooth away from a few known points just outside (or exactly at) the
ends of the interval.  The algebraic end powers are absorbed by Gauss--Jacobi
weights on the end panels; near-singularities at distance ``first`` from an end
are resolved by panels whose widths shrink geometrically toward that end.

Rules are returned as offsets from both ends (``da = x - a`` and ``db = b - x``)
so that callers can form differences such as rho - lambda without cancellation.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np
from numpy.typing import NDArray
from scipy.special import roots_jacobi

PMAX = 48


@lru_cache(maxsize=512)
def _jacobi(n: int, alpha: float, beta: float) -> tuple[NDArray, NDArray]:
    """Nodes on [-1, 1] and weights for (1-u)^alpha (1+u)^beta."""
    if alpha == 0.0 and beta == 0.0:
        u, w = np.polynomial.legendre.leggauss(n)
    else:
        u, w = roots_jacobi(n, alpha, beta)
    u.setflags(write=False)
    w.setflags(write=False)
    return u, w


def jacobi_rule(n: int, alpha: float = 0.0, beta: float = 0.0):
    return _jacobi(int(n), round(float(alpha), 14), round(float(beta), 14))


def panel_counts(length, first, ratio: float = 0.25, pmax: int = PMAX) -> NDArray:
    """Per-element panels needed so the innermost one has width <= first."""
    length = np.asarray(length, dtype=float)
    first = np.asarray(first, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        q = np.where((first > 0) & (first < length) & (length > 0), first / length, 1.0)
    q = np.maximum(q, 1e-300)
    k = np.ceil(np.log(q) / np.log(ratio) - 1e-12)
    return np.minimum(pmax, 1 + np.maximum(k, 0.0)).astype(int)


def panel_count(length, first, ratio: float = 0.25, pmax: int = PMAX) -> int:
    """Largest of panel_counts over the batch."""
    return int(np.max(panel_counts(length, first, ratio, pmax), initial=1))


def _graded(length, first, n, P, beta, alpha):
    """Rule for int_0^L F(s) s^beta (L-s)^alpha ds, panels graded toward s = 0.

    ``length`` and ``first`` have batch shape S; returns s and w of shape S+(P*n,).
    """
    L = np.asarray(length, dtype=float)[..., None]
    if P == 1:
        u, w = jacobi_rule(n, alpha, beta)
        h = 0.5 * L
        return h * (1.0 + u), w * h ** (alpha + beta + 1.0)
    first = np.asarray(first, dtype=float)[..., None]
    with np.errstate(divide="ignore", invalid="ignore"):
        sig = np.where(first < L, (first / L) ** (1.0 / (P - 1)), 0.5)
    sig = np.clip(np.nan_to_num(sig, nan=0.5), 1e-6, 0.5)
    k = np.arange(P + 1)
    off = L * sig ** (P - k)  # off[..., 0] = L sig^P, replaced by 0 below
    off[..., 0] = 0.0
    off[..., -1] = L[..., 0]
    lo, hi = off[..., :-1], off[..., 1:]
    h = 0.5 * (hi - lo)
    ss, ww = [], []
    # panel touching s = 0
    u, w = jacobi_rule(n, 0.0, beta)
    s = h[..., :1] * (1.0 + u)
    ss.append(s)
    ww.append(w * h[..., :1] ** (beta + 1.0) * (L - s) ** alpha)
    if P > 2:
        u, w = jacobi_rule(n)
        s = lo[..., 1:-1, None] + h[..., 1:-1, None] * (1.0 + u)
        wt = w * h[..., 1:-1, None] * s**beta * (L[..., None] - s) ** alpha
        ss.append(s.reshape(s.shape[:-2] + (-1,)))
        ww.append(wt.reshape(s.shape[:-2] + (-1,)))
    u, w = jacobi_rule(n, alpha, 0.0)
    s = lo[..., -1:] + h[..., -1:] * (1.0 + u)
    ss.append(s)
    ww.append(w * h[..., -1:] ** (alpha + 1.0) * s**beta)
    return np.concatenate(ss, axis=-1), np.concatenate(ww, axis=-1)


def _graded_each(length, first, n, P, beta, alpha):
    """_graded with a panel count per batch element.

    Elements are grouped by count; shorter rules are padded with zero-weight
    nodes at L/2 so every element gets the same rule whatever its batch.
    """
    L = np.asarray(length, dtype=float)
    P = np.broadcast_to(np.asarray(P, dtype=int), L.shape)
    ps = np.unique(P)
    if ps.size == 1:
        return _graded(L, first, n, int(ps[0]), beta, alpha)
    first = np.broadcast_to(np.asarray(first, dtype=float), L.shape)
    N = int(ps[-1]) * n
    s = np.repeat(0.5 * L[..., None], N, axis=-1)
    w = np.zeros(L.shape + (N,))
    for p in ps:
        sel = P == p
        si, wi = _graded(L[sel], first[sel], n, int(p), beta, alpha)
        s[sel, :p * n] = si
        w[sel, :p * n] = wi
    return s, w


def graded_rule(length, *, alpha=0.0, beta=0.0, first_lo=None, first_hi=None,
                n=12, ratio=0.25, P_lo=None, P_hi=None):
    """Offsets and weights for int_a^b F (x-a)^beta (b-x)^alpha dx.

    Returns (da, db, w), each of shape S+(N,), with x = a + da = b - db.  With
    ``first_hi`` given the interval is split at its midpoint and each half is
    graded toward its own end.  Panel counts (P_lo, P_hi) are per element when
    given as arrays or left to default.
    """
    L = np.asarray(length, dtype=float)
    if first_hi is None:
        fl = L if first_lo is None else np.maximum(first_lo, 1e-15 * L)
        P = _P(P_lo, first_lo is None, L, fl, ratio)
        da, w = _graded_each(L, np.broadcast_to(fl, L.shape), n, P, beta, alpha)
        return da, L[..., None] - da, w
    half = 0.5 * L
    fl = half if first_lo is None else np.maximum(first_lo, 1e-15 * L)
    fh = np.maximum(first_hi, 1e-15 * L)
    Pl = _P(P_lo, first_lo is None, half, fl, ratio)
    Ph = _P(P_hi, False, half, fh, ratio)
    sa, wa = _graded_each(half, np.broadcast_to(fl, L.shape), n, Pl, beta, 0.0)
    wa = wa * (L[..., None] - sa) ** alpha
    sb, wb = _graded_each(half, np.broadcast_to(fh, L.shape), n, Ph, alpha, 0.0)
    wb = wb * (L[..., None] - sb) ** beta
    da = np.concatenate([sa, L[..., None] - sb], axis=-1)
    db = np.concatenate([L[..., None] - sa, sb], axis=-1)
    return da, db, np.concatenate([wa, wb], axis=-1)


def _P(given, ungraded, length, first, ratio):
    if given is not None:
        return given
    return 1 if ungraded else panel_counts(length, first, ratio)
