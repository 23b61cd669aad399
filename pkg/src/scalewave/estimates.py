r"""Numerical checks of the weighted integral inequalities behind the
semilinear estimates.

Every inequality "X(y) <~ w(y)" is turned into a weighted sup
S(D) = sup_{y in D} X(y)/w(y) over a probe set D.  A report passes when S is
finite and grows by less than ``threshold`` (10% by default) when the probe
domain doubles; that is what "bounded" means at desk scale.  The fitted
constants are reported, never asserted.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy import integrate

from .errors import DomainError
from .exponents import ModelParams, fujita_exponent, q_exponent, validate
from .kernels import build_Hj, eval_dr_Kj, eval_dr_Ktildej, eval_Kj, eval_Ktildej

THRESHOLD = 0.10
ENVELOPE = 1e-14


def _br(x):
    return 1.0 + abs(x)


@dataclass
class EstimateReport:
    name: str
    weighted_sup: float
    probe_set: str
    stability: float
    passed: bool
    threshold: float = THRESHOLD
    argmax: tuple | None = None
    notes: str = ""
    extra: dict = field(default_factory=dict)

    def to_json(self):
        d = asdict(self)
        for k in ("weighted_sup", "stability"):
            if not math.isfinite(d[k]):
                d[k] = str(d[k])
        return d


def _quad(f, a, b, **kw):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, err = integrate.quad(f, a, b, limit=400, epsabs=0.0, epsrel=1e-10, **kw)
    return val, err


def _stable_report(name, sup_fn, probe, threshold, notes="", hyp=()):
    """Evaluate sup_fn(1) and sup_fn(2) (base and doubled domain)."""
    s1, a1 = sup_fn(1.0)
    s2, a2 = sup_fn(2.0)
    if not (math.isfinite(s1) and math.isfinite(s2)):
        stab = math.inf
    elif s1 == 0.0:
        stab = 0.0 if s2 == 0.0 else math.inf
    else:
        stab = abs(s2 - s1) / abs(s1)
    passed = bool(math.isfinite(s2) and stab < threshold and not hyp)
    if hyp:
        notes = (notes + "; " if notes else "") + "hypotheses violated: " + ", ".join(hyp)
    return EstimateReport(name, s2, probe, stab, passed, threshold, a2, notes,
                          {"weighted_sup_base": s1})


# ---------------------------------------------------------------------------
# one-dimensional convolution integrals


def _halfline(f, P, decay, sign=1.0):
    """int over x >= P (sign=+1) or x <= P (sign=-1) of f, where |f| decays
    like |x|^{-decay}.  Log substitution, truncated where the envelope falls
    below ENVELOPE of its start; returns (value, error incl. tail bound)."""
    if decay <= 1.0:
        return math.inf, math.inf
    c = 1.0 + abs(P)
    umax = -math.log(ENVELOPE) / (decay - 1.0)
    g = lambda u: f(P + sign * c * math.expm1(u)) * c * math.exp(u)
    val, err = _quad(g, 0.0, umax)
    X = c * math.exp(umax)
    tail = abs(f(P + sign * (X - c))) * X / (decay - 1.0)
    return val, err + tail


def convolution_integral(a, b, y, X=None):
    """int_R <x>^{-a} <x+y>^{-b} dx; with X given, over |x| <= X instead."""
    f = lambda x: _br(x) ** -a * _br(x + y) ** -b
    lo, hi = min(0.0, -y), max(0.0, -y)
    if X is not None:
        pts = [p for p in (lo, hi) if -X < p < X]
        return _quad(f, -X, X, points=pts or None)[0]
    mid = _quad(f, lo, hi)[0] if hi > lo else 0.0
    right = _halfline(f, hi, a + b, 1.0)[0]
    left = _halfline(f, lo, a + b, -1.0)[0]
    return mid + right + left


def _y_grid(y_max, scale, symmetric=True, n=41):
    y = np.logspace(-2, math.log10(y_max * scale), int(n + round(10 * math.log10(scale))))
    y = np.concatenate([[0.0], y])
    return np.concatenate([-y[1:][::-1], y]) if symmetric else y


def _sup(vals, pts):
    vals = np.asarray(vals, dtype=float)
    if not np.all(np.isfinite(vals)):
        return math.inf, None
    k = int(np.argmax(vals))
    return float(vals[k]), (float(pts[k]),) if np.ndim(pts[k]) == 0 else tuple(map(float, pts[k]))


def verify_convolution_bound(a, b, y_grid=None, y_max=1e3, threshold=THRESHOLD,
                             allow_violation=False) -> EstimateReport:
    """sup_y int <x>^{-a}<x+y>^{-b} dx over y_grid and over the doubled grid.

    a + b <= 1 is rejected unless ``allow_violation``; then the (divergent)
    integral is truncated to |x| <= 4 max|y|, so it grows with the domain.
    """
    if a < 0 or b < 0:
        raise DomainError("a, b >= 0 required")
    viol = a + b <= 1
    if viol and not allow_violation:
        raise DomainError(f"a + b > 1 required (a + b = {a + b})")

    def sup(scale):
        ys = _y_grid(y_max, scale) if y_grid is None else np.union1d(y_grid, scale * np.asarray(y_grid))
        X = 4.0 * max(1.0, float(np.max(np.abs(ys)))) if viol else None
        return _sup([convolution_integral(a, b, y, X) for y in ys], ys)

    return _stable_report(f"convolution_bound(a={a}, b={b})", sup,
                          f"y in +-[1e-2, {y_max:g}], doubled", threshold,
                          "truncated to |x| <= 4 max|y| (a + b <= 1)" if viol else "")


def _exps(params: ModelParams):
    p, mu, kap = params.p, params.mu, params.kappa
    return p, kap, q_exponent(params.n, p), 0.5 * mu * (p - 1.0)


def _hyp_41(params):
    """Hypotheses of the one-dimensional lemmas: p window lower bound and
    kappa_1 < kappa <= kappa_2."""
    bad = validate(params)
    keep = ("p ≤ p₀(n+μ)", "κ ≤ κ₁", "κ > κ₂")
    return [b for b in bad if b in keep]


def lemma41_G(params, y):
    p, kap, q, A = _exps(params)
    return convolution_integral(p * kap, q + A, y)


def verify_lemma_41(params: ModelParams, y_max=1e3, threshold=THRESHOLD,
                    enforce=False) -> EstimateReport:
    """sup_y <y>^kappa G(y), G(y) = int <x>^{-p kappa} <x+y>^{-q-mu(p-1)/2} dx."""
    hyp = _hyp_41(params)
    if hyp and enforce:
        raise DomainError("hypotheses violated: " + ", ".join(hyp))
    kap = params.kappa

    def sup(scale):
        ys = _y_grid(y_max, scale)
        return _sup([_br(y) ** kap * lemma41_G(params, y) for y in ys], ys)

    rep = _stable_report("lemma_4.1", sup, f"y in +-[1e-2, {y_max:g}], doubled", threshold)
    if hyp:
        rep.notes = "hypotheses violated: " + ", ".join(hyp)
    return rep


# ---------------------------------------------------------------------------
# the singular one-sided integrals


def q_regime(q: float) -> str:
    """'4.2' for q >= 1/2, '4.3' for 0 <= q < 1/2, '4.4' for -1/2 <= q < 0."""
    if q >= 0.5:
        return "4.2"
    if q >= 0.0:
        return "4.3"
    if q >= -0.5:
        return "4.4"
    return "none"


def _sqrt_integral(ex, ey, y):
    """int_{-y}^{-y/2} <x>^{ex} <x+y>^{ey} / sqrt(x+y) dx via x = -y + s^2."""
    if y <= 0:
        return 0.0
    f = lambda s: 2.0 * _br(-y + s * s) ** ex * _br(s * s) ** ey
    return _quad(f, 0.0, math.sqrt(0.5 * y))[0]


def lemma_integral(name, params, y):
    p, kap, q, A = _exps(params)
    if name == "4.2":
        return _sqrt_integral(-kap * p - A, -q + 0.5, y)
    if name == "4.3":
        return _sqrt_integral(-kap * p - A + 0.5, -q, y)
    if name == "4.4":
        return _sqrt_integral(-kap * p - A + 1.0, -q - 0.5, y)
    if name == "4.5":
        if y <= 0:
            return 0.0
        f = lambda x: _br(x - y) ** -A * _br(x + 2 * y) ** (-q - 1.0) * _br(x) ** (-kap * p)
        return _quad(f, -2.0 * y, y, points=[0.0])[0]
    raise ValueError(name)


def verify_lemmas_42_to_45(params: ModelParams, y_max=1e3, threshold=THRESHOLD):
    """Reports for the lemma matching the q-regime and for the three-factor
    integral; the other square-root lemmas are skipped with a notice."""
    q = q_exponent(params.n, params.p)
    reg = q_regime(q)
    hyp = _hyp_41(params)
    kap = params.kappa
    out = []
    for name in ("4.2", "4.3", "4.4", "4.5"):
        if name != "4.5" and name != reg:
            out.append(EstimateReport(f"lemma_{name}", math.nan, "skipped", 0.0, True,
                                      threshold, None,
                                      f"skipped: q = {q:.6g} lies in regime {reg}"))
            continue

        def sup(scale, name=name):
            ys = _y_grid(y_max, scale, symmetric=False)
            return _sup([_br(y) ** kap * lemma_integral(name, params, y) for y in ys], ys)

        rep = _stable_report(f"lemma_{name}", sup, f"y in [0, {y_max:g}], doubled", threshold,
                             f"q = {q:.6g}, regime {reg}", hyp)
        out.append(rep)
    return out


# ---------------------------------------------------------------------------
# I, J, P, Q


def _phi_p(tau, lam, kap, p):
    return (_br(tau + lam) ** -0.5 * _br(tau - lam) ** -kap) ** p


def _pts(a, b, cands):
    return [c for c in cands if a < c < b] or None


def ijpq_value(which, params: ModelParams, gamma, t, r):
    """One of I_gamma, J_gamma, P_gamma, Q_gamma at (t, r), lam_- = t - tau - r."""
    p, kap, q, A = _exps(params)
    star = max(t - r, 0.0)
    if which == "I":
        e = -q + 0.5 * p - 0.5 - gamma

        def inner(tau):
            lm = t - tau - r
            w0, w1 = math.sqrt(abs(lm) - lm), math.sqrt(2.0 * r)
            g = lambda w: 2.0 * _br(lm + w * w) ** e * _phi_p(tau, lm + w * w, kap, p)
            kink = math.sqrt(tau - lm) if tau > lm else -1.0
            return _quad(g, w0, w1, points=_pts(w0, w1, [kink]))[0]

        f = lambda tau: _br(tau) ** -A * inner(tau)
        return _quad(f, 0.0, t, points=_pts(0.0, t, [t - r]))[0] if t > 0 else 0.0
    if which == "J":
        if star <= 0:
            return 0.0

        def inner(tau):
            lm = t - tau - r
            w1 = math.sqrt(lm)
            g = lambda w: 2.0 * _br(lm - w * w) ** (0.5 * p) * _phi_p(tau, lm - w * w, kap, p)
            kink = math.sqrt(lm - tau) if lm > tau else -1.0
            return _quad(g, 0.0, w1, points=_pts(0.0, w1, [kink]))[0]

        f = lambda tau: _br(tau) ** -A * _br(t - tau - r) ** (-q - 0.5 - gamma) * inner(tau)
        return _quad(f, 0.0, star, points=_pts(0.0, star, [star / 3.0]))[0]
    e = -q + 0.5 * p - 1.0 - gamma
    if which == "P":
        if star <= 0:
            return 0.0
        f = lambda tau: (_br(tau) ** -A * _br(t - tau - r) ** e
                         * _phi_p(tau, 0.5 * (t - tau - r), kap, p))
        return _quad(f, 0.0, star, points=_pts(0.0, star, [star / 3.0]))[0]
    if which == "Q":
        f = lambda tau: (_br(tau) ** -A * _br(t - tau - r) ** e
                         * _phi_p(tau, -(t - tau - r), kap, p))
        return _quad(f, star, t)[0] if t > star else 0.0
    raise ValueError(which)


def probe_lattice(extent=1e3, per_decade=16, lo=0.1):
    """(t, r) probe points with t + r <= extent: a log-spaced diagonal t = r
    (per_decade points per decade) and, for log-spaced t + r, offsets
    t - r in {+-1, +-sigma/4, +-sigma/2, +-0.9 sigma}."""
    dec = math.log10(extent / lo)
    diag = np.logspace(math.log10(lo), math.log10(extent / 2), int(per_decade * dec) + 1)
    pts = [(d, d) for d in diag]
    for sig in np.logspace(math.log10(lo), math.log10(extent), int(3 * dec) + 1):
        for d in (1.0, 0.25 * sig, 0.5 * sig, 0.9 * sig):
            if d >= sig:
                continue
            for s in (1, -1):
                pts.append((0.5 * (sig + s * d), 0.5 * (sig - s * d)))
    return np.array(pts)


def _ijpq_hyp(params):
    q = q_exponent(params.n, params.p)
    bad = _hyp_41(params)
    if not (-0.5 <= q <= params.m - 0.5):
        bad.append("q outside [-1/2, m-1/2]")
    if params.p >= fujita_exponent(params.mu):
        bad.append("p ≥ p_Fuj(μ)")
    return bad


def verify_IJPQ(params: ModelParams, gamma=0.0, extent=1e3, per_decade=16,
                threshold=THRESHOLD, which=("I", "J", "P", "Q")):
    """sup <t-r>^{kappa+gamma} X(t, r) for X in I, J, P, Q on probe_lattice;
    the doubled domain is t + r <= 2 extent.

    The hypotheses (kappa window, q range, p < p_Fuj(mu)) are checked first
    and reported in a 'hypotheses' report that fails when any is violated.
    """
    if gamma not in (0, 0.5):
        raise DomainError("gamma must be 0 or 1/2")
    hyp = _ijpq_hyp(params)
    out = [EstimateReport(f"IJPQ_hypotheses(gamma={gamma})", 0.0, "parameters", 0.0,
                          not hyp, threshold, None,
                          "all hypotheses hold" if not hyp else "violated: " + ", ".join(hyp))]
    kap = params.kappa
    cache = {}
    for X in which:
        def sup(scale, X=X):
            pts = probe_lattice(extent * scale, per_decade)
            vals = []
            for t, r in pts:
                key = (X, round(t, 12), round(r, 12))
                if key not in cache:
                    cache[key] = ijpq_value(X, params, gamma, t, r)
                vals.append(_br(t - r) ** (kap + gamma) * cache[key])
            return _sup(vals, pts)

        out.append(_stable_report(f"{X}_gamma={gamma}", sup,
                                  f"t + r <= {extent:g}, doubled", threshold, "", hyp))
    return out


# ---------------------------------------------------------------------------
# kernel bounds


def _kernel_lattice(n_pts, tilde):
    """(r, t/r or (t-r)/r, lam fraction) axes with fixed endpoints.

    The ratios are homogeneous of degree 0 in (lam, t, r), so the shape axes
    carry the information; the K~ sup sits at t/r -> 1, hence the log axis in
    (t-r)/r reaching 1e-3.
    """
    rs = np.logspace(math.log10(0.2), math.log10(20.0), n_pts)
    shape = np.logspace(-3, 2, n_pts) if tilde else np.logspace(-2, 2, n_pts)
    fr = np.linspace(0.05, 0.95, n_pts)
    return rs, shape, fr


def kernel_bound_ratios(family, m, gamma, n_pts=10):
    """Ratios |kernel| / bound on an n_pts^3 (r, shape, lam) lattice for the
    four bound families 'K_m', 'dr_K_m-1', 'Kt_m', 'dr_Kt_m-1'."""
    tilde = family in ("Kt_m", "dr_Kt_m-1")
    if not tilde and family not in ("K_m", "dr_K_m-1"):
        raise ValueError(f"unknown kernel family {family!r}")
    rs, shape, fr = _kernel_lattice(n_pts, tilde)
    km, km1 = build_Hj(m, m), build_Hj(m, m - 1)
    out = []
    for r in rs:
        for s in shape:
            for f in fr:
                pre = r ** (m + gamma - 0.5)
                if not tilde:
                    t = r * s
                    lo, hi = abs(t - r), t + r
                    lam = lo + f * (hi - lo)
                    base = pre * lam ** (-m - gamma) * (lam - t + r) ** -0.5
                    if family == "K_m":
                        val, bnd = eval_Kj(km, lam, t, r), base
                    else:
                        val, bnd = eval_dr_Kj(km1, lam, t, r), lam * base
                else:
                    t = r * (1.0 + s)
                    ell = t - r
                    lam = f * ell
                    base = pre * ell ** (-m - gamma) * (ell - lam) ** -0.5
                    if family == "Kt_m":
                        val, bnd = eval_Ktildej(km, lam, t, r), base
                    else:
                        val, bnd = eval_dr_Ktildej(km1, lam, t, r), ell * base
                out.append(abs(val) / bnd)
    return np.array(out)


def verify_kernel_bounds(m=1, gamma=0.0, family="K_m", n_pts=10, threshold=THRESHOLD):
    """Fitted constant sup |kernel|/bound; stability under 2x lattice refinement."""
    def sup(scale):
        rat = kernel_bound_ratios(family, m, gamma, int(round((n_pts - 1) * scale)) + 1)
        return float(np.max(rat)), None

    return _stable_report(f"kernel_{family}(m={m}, gamma={gamma})", sup,
                          f"{n_pts}^3 lattice, refined 2x", threshold)


def _dr_alpha_kt(ks, alpha, lam, t, r, step):
    """d_r^alpha Kt_j: analytic first derivative, central differences beyond."""
    if alpha == 0:
        return eval_Ktildej(ks, lam, t, r)
    if alpha == 1:
        return eval_dr_Ktildej(ks, lam, t, r)
    return (_dr_alpha_kt(ks, alpha - 1, lam, t, r + step, step)
            - _dr_alpha_kt(ks, alpha - 1, lam, t, r - step, step)) / (2 * step)


def dlam_kt_ratios(m, j, alpha, gamma, n_pts=10):
    """|d_lam d_r^alpha Kt_j| / (r^{2m-j+gamma-1/2-alpha} (t-r)^{-j-gamma} (t-r-lam)^{-3/2})
    on the K~ lattice; d_lam by central differences."""
    if j + alpha > m or j < 0 or alpha < 0:
        raise DomainError("need j, alpha >= 0 with j + alpha <= m")
    ks = build_Hj(m, j)
    rs, shape, fr = _kernel_lattice(n_pts, True)
    out = []
    for r in rs:
        for s in shape:
            for f in fr:
                t = r * (1.0 + s)
                ell = t - r
                lam = f * ell
                gap = ell - lam
                h = 1e-3 * min(lam, gap)
                k = min(1e-4 * r, 0.05 * gap)
                d = (_dr_alpha_kt(ks, alpha, lam + h, t, r, k)
                     - _dr_alpha_kt(ks, alpha, lam - h, t, r, k)) / (2 * h)
                bnd = r ** (2 * m - j + gamma - 0.5 - alpha) * ell ** (-j - gamma) * gap ** -1.5
                out.append(abs(d) / bnd)
    return np.array(out)


def verify_dlam_kt_bound(m=1, j=0, alpha=0, gamma=0.0, n_pts=10, threshold=THRESHOLD):
    """Fitted constant for the lam-derivative bound of Kt_j; 2x refinement."""
    def sup(scale):
        rat = dlam_kt_ratios(m, j, alpha, gamma, int(round((n_pts - 1) * scale)) + 1)
        return float(np.max(rat)), None

    return _stable_report(f"kernel_dlam_Kt_{j}(m={m}, alpha={alpha}, gamma={gamma})", sup,
                          f"{n_pts}^3 lattice, refined 2x", threshold)


# ---------------------------------------------------------------------------


def run_all(params: ModelParams, extent=1e3, y_max=1e3, threshold=THRESHOLD, per_decade=16):
    """All reports for an admissible configuration."""
    reps = [verify_convolution_bound(1.5, 1.5, y_max=y_max, threshold=threshold),
            verify_lemma_41(params, y_max, threshold)]
    reps += verify_lemmas_42_to_45(params, y_max, threshold)
    for g in (0.0, 0.5):
        reps += verify_IJPQ(params, g, extent, per_decade, threshold)
    return reps


def negative_controls(params: ModelParams, y_max=1e3, extent=1e3, per_decade=16):
    """Designated reports under deliberately violated hypotheses.

    a + b <= 1: the convolution bound (a = b = 0.4) truncated to the probe domain.
    kappa > kappa_2: the verify_lemma_41 bound with kappa = kappa_2 + 0.3.
    p >= p_Fuj(mu): the I/J/P/Q hypothesis report at p = p_Fuj(mu) + 0.05.
    """
    out = {}
    out["a+b<=1"] = [verify_convolution_bound(0.4, 0.4, y_max=y_max, allow_violation=True)]
    hi = ModelParams(params.n, params.mu, params.p, params.kappa2 + 0.3, params.epsilon)
    out["kappa>kappa2"] = [verify_lemma_41(hi, y_max)]
    pf = ModelParams(params.n, params.mu, fujita_exponent(params.mu) + 0.05,
                     params.kappa, params.epsilon)
    out["p>=p_Fuj(mu)"] = verify_IJPQ(pf, 0.0, extent, per_decade, which=("Q",))
    return out
