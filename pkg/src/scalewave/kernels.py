r"""Closed-form kernels H_j and the integrals K_j, \tilde K_j.

H_0(rho; t, r) = (r^2 - (rho-t)^2)^{m-1/2} and H_{j+1} = D^* H_j with the
adjoint D^* f = d/drho(-f/(2 rho)).  Every H_j is a finite sum of terms

    coef * rho^a * (rho - t)^b * Q^c,   Q = r^2 - (rho-t)^2 = (t+r-rho)(rho-(t-r)),

kept exactly with rational coefficients.  The kernels are

    K_j(lam, t, r)  = int_lam^{t+r}   H_j / sqrt(rho^2 - lam^2) drho,
    Kt_j(lam, t, r) = int_{t-r}^{t+r} H_j / sqrt(rho^2 - lam^2) drho.

The end powers (rho-lam)^{-1/2} and Q^c are absorbed into Gauss--Jacobi weights;
the remaining near-singularities (Q vanishing just below lam, rho^a at 0) are
handled by panels graded toward the lower limit.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DomainError, QuadratureError
from .quadrature import graded_rule

DEGENERATE = 1e-12


@dataclass(frozen=True)
class KernelTerm:
    coef: Fraction
    pow_rho: int
    pow_shift: int
    pow_quad: Fraction

    def as_tuple(self):
        return (self.coef, self.pow_rho, self.pow_shift, self.pow_quad)


@dataclass(frozen=True)
class KernelSum:
    """Term list of H_j (or of d/dr H_j when ``r_power`` = 1)."""

    m: int
    j: int
    terms: tuple[KernelTerm, ...]
    r_power: int = 0

    def groups(self):
        """Terms grouped by pow_quad: list of (c, [(coef, a, b), ...])."""
        g = defaultdict(list)
        for t in self.terms:
            g[t.pow_quad].append((float(t.coef), t.pow_rho, t.pow_shift))
        return sorted(g.items())

    def __call__(self, rho, t, r):
        """Direct evaluation of the term list (rho strictly inside (t-r, t+r))."""
        rho, t, r = np.broadcast_arrays(*(np.asarray(x, dtype=float) for x in (rho, t, r)))
        Q = (t + r - rho) * (rho - t + r)
        out = np.zeros(rho.shape)
        for k in self.terms:
            out += float(k.coef) * rho**k.pow_rho * (rho - t) ** k.pow_shift * Q ** float(k.pow_quad)
        return out * r**self.r_power

    def to_json(self):
        return [
            {"coef": str(k.coef), "pow_rho": k.pow_rho, "pow_shift": k.pow_shift,
             "pow_quad": str(k.pow_quad)}
            for k in self.terms
        ]


def _combine(acc):
    return tuple(
        KernelTerm(c, a, b, q) for (a, b, q), c in sorted(acc.items()) if c != 0
    )


def apply_adjoint(ks: KernelSum) -> KernelSum:
    """d/drho(-h/(2 rho)) applied term by term.

    With h = coef rho^a (rho-t)^b Q^c and dQ/drho = -2(rho-t):
      (a-1)(-coef/2)  rho^{a-2} (rho-t)^b     Q^c
      b (-coef/2)     rho^{a-1} (rho-t)^{b-1} Q^c
      c coef          rho^{a-1} (rho-t)^{b+1} Q^{c-1}
    """
    acc = defaultdict(Fraction)
    for k in ks.terms:
        half = -k.coef / 2
        acc[(k.pow_rho - 2, k.pow_shift, k.pow_quad)] += (k.pow_rho - 1) * half
        if k.pow_shift > 0:
            acc[(k.pow_rho - 1, k.pow_shift - 1, k.pow_quad)] += k.pow_shift * half
        acc[(k.pow_rho - 1, k.pow_shift + 1, k.pow_quad - 1)] += k.pow_quad * k.coef
    return KernelSum(ks.m, ks.j + 1, _combine(acc))


@lru_cache(maxsize=None)
def build_Hj(m: int, j: int) -> KernelSum:
    if m < 1 or not 0 <= j <= m:
        raise DomainError(f"need m >= 1 and 0 <= j <= m, got m={m}, j={j}")
    if j == 0:
        return KernelSum(m, 0, (KernelTerm(Fraction(1), 0, 0, Fraction(2 * m - 1, 2)),))
    return apply_adjoint(build_Hj(m, j - 1))


def dr_terms(ks: KernelSum) -> KernelSum:
    """d/dr of the term list: Q^c -> 2 c r Q^{c-1}."""
    if ks.r_power:
        raise DomainError("dr_terms applies to plain H_j lists only")
    acc = defaultdict(Fraction)
    for k in ks.terms:
        if k.pow_quad != 0:
            acc[(k.pow_rho, k.pow_shift, k.pow_quad - 1)] += 2 * k.pow_quad * k.coef
    return KernelSum(ks.m, ks.j, _combine(acc), r_power=1)


# ---------------------------------------------------------------------------
# batched fixed-order evaluation


def _poly(group, rho, t):
    s = 0.0
    for coef, a, b in group:
        term = coef * rho**a
        if b:
            term = term * (rho - t) ** b
        s = s + term
    return s


def k_batch(ks: KernelSum, lam, t, r, n: int = 16, ratio: float = 0.25, e=None):
    """K_j for arrays lam, t, r (broadcast); one fixed rule per pow_quad group.

    lam must lie in [|t-r|, t+r].  ``e`` = lam - (t-r) may be passed when the
    caller knows it more accurately than the subtraction.  Returns +inf where
    the integral diverges (lam = t-r exactly with a pow_quad = -1/2 term).
    """
    lam, t, r = np.broadcast_arrays(*(np.asarray(x, dtype=float) for x in (lam, t, r)))
    U = t + r
    e = lam - (t - r) if e is None else np.broadcast_to(np.asarray(e, dtype=float), lam.shape)
    L = U - lam
    out = np.zeros(lam.shape)
    live = L > DEGENERATE * U
    if not live.any():
        return out
    lam_, t_, r_, e_, L_ = (x[live] for x in (lam, t, r, e, L))
    res = np.zeros(lam_.shape)
    touch = e_ <= 0.0  # lam == t - r exactly (only possible when t > r)
    for c, group in ks.groups():
        cf = float(c)
        for mask, beta in ((~touch, -0.5), (touch, cf - 0.5)):
            if not mask.any():
                continue
            if beta <= -1.0:
                res[mask] = np.inf
                continue
            lm, tm, em, Lm = lam_[mask], t_[mask], e_[mask], L_[mask]
            first = np.minimum(em, lm) if beta == -0.5 else lm
            da, db, w = graded_rule(Lm, alpha=cf, beta=beta, first_lo=first, n=n, ratio=ratio)
            rho = lm[:, None] + da
            f = _poly(group, rho, tm[:, None]) * (2.0 * lm[:, None] + da) ** -0.5
            if beta == -0.5:
                f = f * (em[:, None] + da) ** cf
            res[mask] += np.sum(w * f, axis=-1)
    if ks.r_power:
        res *= r_**ks.r_power
    out[live] = res
    return out


def kt_batch(ks: KernelSum, lam, t, r, n: int = 16, ratio: float = 0.25, e=None):
    """Kt_j for arrays with 0 <= lam < t - r; ``e`` = t - r - lam if known."""
    lam, t, r = np.broadcast_arrays(*(np.asarray(x, dtype=float) for x in (lam, t, r)))
    ell = t - r
    e = ell - lam if e is None else np.broadcast_to(np.asarray(e, dtype=float), lam.shape)
    L = 2.0 * r
    out = np.zeros(lam.shape)
    for c, group in ks.groups():
        cf = float(c)
        first = np.minimum(e, ell)
        da, db, w = graded_rule(L, alpha=cf, beta=cf, first_lo=first, n=n, ratio=ratio)
        rho = ell[..., None] + da
        f = _poly(group, rho, t[..., None]) * ((e[..., None] + da) * (rho + lam[..., None])) ** -0.5
        out += np.sum(w * f, axis=-1)
    if ks.r_power:
        out *= r**ks.r_power
    return out


def dr_k_upper_limit(ks: KernelSum, t, r):
    """lim_{lam -> t+r} of d/dr K_j(lam, t, r) (j <= m-1).

    Only Q^{-1/2} terms of d/dr H_j survive; with rho - lam -> 0 the integral
    reduces to S(U) (2r)^{-1/2} (2U)^{-1/2} int (U-rho)^{-1/2}(rho-lam)^{-1/2} = pi ...
    """
    dks = dr_terms(ks)
    U = np.asarray(t, dtype=float) + r
    out = 0.0
    for c, group in dks.groups():
        if c == Fraction(-1, 2):
            out = out + _poly(group, U, t) * np.pi / np.sqrt(4.0 * r * U)
    return out * r


# ---------------------------------------------------------------------------
# adaptive scalar front-ends

_ORDERS = (12, 24, 48, 96)


def _adaptive(fn, rtol, atol, what):
    prev = fn(_ORDERS[0])
    for n in _ORDERS[1:]:
        cur = fn(n)
        with np.errstate(invalid="ignore"):
            err = np.abs(cur - prev)
        fin = np.isfinite(cur)
        if np.all(~fin | (err <= np.maximum(atol, rtol * np.abs(cur)))):
            return cur, np.where(fin, err, 0.0)
        prev = cur
    raise QuadratureError(f"{what} did not converge", float(np.max(err[fin], initial=0.0)))


def _scalar(x):
    return float(x) if np.ndim(x) == 0 else x


def _check_k_domain(lam, t, r):
    lam, t, r = np.broadcast_arrays(*(np.asarray(x, dtype=float) for x in (lam, t, r)))
    if np.any(r <= 0):
        raise DomainError("r must be positive")
    slack = 1e-12 * (t + r)
    if np.any(lam < np.abs(t - r) - slack) or np.any(lam > t + r + slack):
        raise DomainError("lambda outside [|t-r|, t+r]")
    return np.clip(lam, np.abs(t - r), t + r), t, r


def kj_with_error(ks, lam, t, r, rtol=1e-9, atol=1e-12):
    lam, t, r = _check_k_domain(lam, t, r)
    return _adaptive(lambda n: k_batch(ks, lam, t, r, n=n), rtol, atol, f"K_{ks.j}")


def eval_Kj(ks: KernelSum, lam, t, r, rtol=1e-9, atol=1e-12):
    return _scalar(kj_with_error(ks, lam, t, r, rtol, atol)[0])


def _check_kt_domain(lam, t, r):
    lam, t, r = np.broadcast_arrays(*(np.asarray(x, dtype=float) for x in (lam, t, r)))
    if np.any(r <= 0) or np.any(t <= r):
        raise DomainError("Kt needs t > r > 0")
    if np.any(lam < 0) or np.any(lam >= t - r):
        raise DomainError("Kt needs 0 <= lambda < t - r")
    return lam, t, r


def ktj_with_error(ks, lam, t, r, rtol=1e-9, atol=1e-12):
    lam, t, r = _check_kt_domain(lam, t, r)
    return _adaptive(lambda n: kt_batch(ks, lam, t, r, n=n), rtol, atol, f"Kt_{ks.j}")


def eval_Ktildej(ks: KernelSum, lam, t, r, rtol=1e-9, atol=1e-12):
    return _scalar(ktj_with_error(ks, lam, t, r, rtol, atol)[0])


def eval_dr_Kj(ks: KernelSum, lam, t, r, rtol=1e-9, atol=1e-12):
    """d/dr K_j at fixed lam.  The moving upper limit contributes nothing since
    H_j vanishes at rho = t+r for j <= m-1; at lam = t+r the continuous limit
    is returned."""
    if ks.j >= ks.m:
        raise DomainError("d/dr K_j needs j <= m-1")
    lam, t, r = _check_k_domain(lam, t, r)
    dks = dr_terms(ks)
    val, _ = _adaptive(lambda n: k_batch(dks, lam, t, r, n=n), rtol, atol, f"dr K_{ks.j}")
    top = (t + r - lam) <= DEGENERATE * (t + r)
    if np.any(top):
        val = np.where(top, dr_k_upper_limit(ks, t, r), val)
    return _scalar(val)


def eval_dr_Ktildej(ks: KernelSum, lam, t, r, rtol=1e-9, atol=1e-12):
    """d/dr Kt_j; boundary terms vanish because H_j = 0 at both limits."""
    if ks.j >= ks.m:
        raise DomainError("d/dr Kt_j needs j <= m-1")
    lam, t, r = _check_kt_domain(lam, t, r)
    dks = dr_terms(ks)
    return _scalar(_adaptive(lambda n: kt_batch(dks, lam, t, r, n=n), rtol, atol,
                             f"dr Kt_{ks.j}")[0])
